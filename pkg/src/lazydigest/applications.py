"""
Three uses of seed-deterministic streams: reproducible test data, a
memory-hard key derivation, and a proof-of-work nonce search.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Optional

from .constructions import LazyDigest
from .digest_core import Digest, ExtendedDigest
from .errors import DomainError
from .hash_backend import SHA256

__all__ = [
    "PowResult",
    "test_stream",
    "memory_hard_kdf",
    "gather",
    "find_pow",
    "verify_pow",
    "pow_candidate",
    "leading_zero_bits",
]

MAX_NONCE = 2**32 - 1
ACCESS_SPREAD = 64


def test_stream(test_id: str) -> LazyDigest:
    """An infinite stream owned by one test: same id, same bytes, on any machine."""
    if not test_id:
        raise DomainError("test_id must be non-empty")
    seed = SHA256.digest(("test_" + str(test_id)).encode("utf-8"))
    return LazyDigest(seed)


# Keep pytest from collecting the function above as a test.
test_stream.__test__ = False


def gather(stream: ExtendedDigest, memory_cost: int) -> bytes:
    """Read ``memory_cost`` bytes along a data-dependent walk over ``stream``.

    The first position is 0. Each later position is
    ``(previous * 256 + byte just read) mod (memory_cost * 64)``, so where
    the walk goes next depends on what was read, and the positions cannot
    be scheduled ahead of time.
    """
    if memory_cost < 1:
        raise DomainError(f"memory_cost must be >= 1, got {memory_cost}")
    modulus = memory_cost * ACCESS_SPREAD
    position = 0
    out = bytearray(memory_cost)
    for j in range(memory_cost):
        value = stream.get(position)
        out[j] = value
        position = (position * 256 + value) % modulus
    return bytes(out)


def memory_hard_kdf(password: bytes, salt: bytes, memory_cost: int) -> Digest:
    """Derive a 32-byte key; cost grows with ``memory_cost`` stream reads."""
    if not salt:
        raise DomainError("an empty salt is rejected")
    seed = hashlib.sha256(password + salt).digest()
    gathered = gather(LazyDigest(seed), memory_cost)
    return Digest(hashlib.sha256(gathered).digest())


@dataclass(frozen=True)
class PowResult:
    nonce: Optional[int]
    attempts: int
    candidate: Optional[Digest] = None

    @property
    def found(self) -> bool:
        return self.nonce is not None


def leading_zero_bits(d: bytes) -> int:
    """Count zero bits from the most significant bit of byte 0."""
    if not d:
        raise DomainError("leading_zero_bits of an empty digest is undefined")
    value = int.from_bytes(d, "big")
    return 8 * len(d) - value.bit_length()


def pow_candidate(header: bytes, nonce: int) -> Digest:
    """``sha256(sha256(header) || nonce as 4-byte big-endian)``."""
    base = hashlib.sha256(header).digest()
    return Digest(hashlib.sha256(base + nonce.to_bytes(4, "big")).digest())


def find_pow(header: bytes, difficulty: int, max_nonce: int = MAX_NONCE) -> PowResult:
    """Lowest nonce in ``[0, max_nonce]`` whose candidate has ``difficulty`` leading zero bits."""
    if not 0 <= difficulty <= 256:
        raise DomainError(f"difficulty must be in [0, 256], got {difficulty}")
    if not 0 <= max_nonce <= MAX_NONCE:
        raise DomainError(f"max_nonce must fit in 4 bytes, got {max_nonce}")
    base = hashlib.sha256(hashlib.sha256(header).digest())
    # A candidate passes when its integer value is below 2**(256 - difficulty).
    bound = 1 << (256 - difficulty)
    for nonce in range(max_nonce + 1):
        h = base.copy()
        h.update(nonce.to_bytes(4, "big"))
        candidate = h.digest()
        if int.from_bytes(candidate, "big") < bound:
            return PowResult(nonce, nonce + 1, Digest(candidate))
    return PowResult(None, max_nonce + 1)


def verify_pow(header: bytes, nonce: int, difficulty: int) -> bool:
    return leading_zero_bits(pow_candidate(header, nonce)) >= difficulty
