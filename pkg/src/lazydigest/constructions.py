"""
Seed-deterministic infinite digests.

Every class here is a frozen description (seed, hash, sizes) whose
:meth:`get` is a pure function of that description and the index. Nothing
is cached between calls, so any subset of indices can be computed in any
order or in parallel and the bytes agree with a serial scan.

Indices are rendered as ASCII decimal with no padding. The basic
:class:`LazyDigest` concatenates seed and index directly. All derived
constructions put a single ``0x00`` separator between components so that
labels and numbers can never run into each other.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property

from .digest_core import ExtendedDigest, check_index
from .errors import DomainError, SpecError
from .hash_backend import BLAKE2B, SHA3_256, SHA256, SHA512, HashSpec

__all__ = [
    "SEP",
    "DEFAULT_SEED_LEN",
    "LazyDigest",
    "HierarchicalDigest",
    "RekeyingDigest",
    "SpongeDigest",
    "XorMultiDigest",
    "CompositeDigest",
    "DEFAULT_XOR_HASHES",
]

SEP = b"\x00"
DEFAULT_SEED_LEN = 32
DEFAULT_XOR_HASHES = (SHA256, SHA512, SHA3_256, BLAKE2B)


def dec(n: int) -> bytes:
    return str(n).encode("ascii")


def _check_seed(seed: bytes, what: str = "seed") -> None:
    if not isinstance(seed, (bytes, bytearray)):
        raise SpecError(f"{what} must be bytes, got {type(seed).__name__}")
    if len(seed) < 1:
        raise SpecError(f"{what} must be at least one byte")


def _check_read(start: int, n: int) -> int:
    start = check_index(start)
    if n < 0:
        raise DomainError(f"read length must be non-negative, got {n}")
    return start


@dataclass(frozen=True)
class LazyDigest(ExtendedDigest):
    """``byte[i] = hash(seed || decimal(i))[0]``.

    One hash call per index and constant memory whatever is queried.
    """

    seed: bytes
    hash: HashSpec = SHA256

    def __post_init__(self) -> None:
        _check_seed(self.seed)
        object.__setattr__(self, "seed", bytes(self.seed))

    @classmethod
    def random(cls, hash: HashSpec = SHA256) -> "LazyDigest":
        """A stream keyed by a fresh 32-byte seed from ``os.urandom``."""
        return cls(os.urandom(DEFAULT_SEED_LEN), hash)

    def get(self, index: int) -> int:
        index = check_index(index)
        return self.hash.digest(self.seed + dec(index))[0]

    def read(self, start: int, n: int) -> bytes:
        start = _check_read(start, n)
        h = self.hash.prefixed(self.seed)
        return bytes(h(dec(i))[0] for i in range(start, start + n))


@dataclass(frozen=True)
class HierarchicalDigest(ExtendedDigest):
    """Three-level seed tree: master seed, then epoch seed, then chunk seed.

    ``index`` splits into ``(epoch, chunk, position)`` by div/mod with
    ``epoch_size`` and ``chunk_size``. Each level hashes the level above
    with a label, and the byte comes from hashing the chunk seed with the
    position. That is three hash calls per index.
    """

    master_seed: bytes
    hash: HashSpec = SHA256
    epoch_size: int = 2**40
    chunk_size: int = 2**20

    def __post_init__(self) -> None:
        _check_seed(self.master_seed, "master_seed")
        object.__setattr__(self, "master_seed", bytes(self.master_seed))
        if not self.chunk_size >= 1:
            raise SpecError(f"chunk_size must be >= 1, got {self.chunk_size}")
        if not self.epoch_size > self.chunk_size:
            raise SpecError("epoch_size must exceed chunk_size")
        if self.epoch_size % self.chunk_size:
            raise SpecError("epoch_size must be a multiple of chunk_size")

    def decompose(self, index: int) -> tuple[int, int, int]:
        """Split ``index`` into ``(epoch, chunk, position)``."""
        epoch, rest = divmod(check_index(index), self.epoch_size)
        chunk, position = divmod(rest, self.chunk_size)
        return epoch, chunk, position

    def epoch_seed(self, epoch: int) -> bytes:
        return self.hash.digest(self.master_seed + SEP + b"epoch" + SEP + dec(epoch))

    def chunk_seed(self, epoch_seed: bytes, chunk: int) -> bytes:
        return self.hash.digest(epoch_seed + SEP + b"chunk" + SEP + dec(chunk))

    def get(self, index: int) -> int:
        epoch, chunk, position = self.decompose(index)
        chunk_seed = self.chunk_seed(self.epoch_seed(epoch), chunk)
        return self.hash.digest(chunk_seed + SEP + dec(position))[0]

    def read(self, start: int, n: int) -> bytes:
        start = _check_read(start, n)
        out = bytearray()
        index, stop = start, start + n
        while index < stop:
            epoch, chunk, position = self.decompose(index)
            h = self.hash.prefixed(self.chunk_seed(self.epoch_seed(epoch), chunk) + SEP)
            run = min(self.chunk_size - position, stop - index)
            out += bytes(h(dec(p))[0] for p in range(position, position + run))
            index += run
        return bytes(out)


@dataclass(frozen=True)
class RekeyingDigest(ExtendedDigest):
    """Derive a fresh key every ``rekey_interval`` indices.

    Epoch 0 uses the raw seed. Later epochs use
    ``hash(seed || "rekey" || epoch)``, which is one-way, so an epoch key
    does not give up the keys of earlier epochs.
    """

    seed: bytes
    hash: HashSpec = SHA256
    rekey_interval: int = 2**32

    def __post_init__(self) -> None:
        _check_seed(self.seed)
        object.__setattr__(self, "seed", bytes(self.seed))
        if not self.rekey_interval >= 1:
            raise SpecError(f"rekey_interval must be >= 1, got {self.rekey_interval}")

    def epoch_key(self, epoch: int) -> bytes:
        if epoch == 0:
            return self.seed
        return self.hash.digest(self.seed + SEP + b"rekey" + SEP + dec(epoch))

    def get(self, index: int) -> int:
        epoch, local = divmod(check_index(index), self.rekey_interval)
        return self.hash.digest(self.epoch_key(epoch) + SEP + dec(local))[0]

    def read(self, start: int, n: int) -> bytes:
        start = _check_read(start, n)
        out = bytearray()
        index, stop = start, start + n
        while index < stop:
            epoch, local = divmod(index, self.rekey_interval)
            h = self.hash.prefixed(self.epoch_key(epoch) + SEP)
            run = min(self.rekey_interval - local, stop - index)
            out += bytes(h(dec(j))[0] for j in range(local, local + run))
            index += run
        return bytes(out)


@dataclass(frozen=True)
class SpongeDigest(ExtendedDigest):
    """Sponge-style stream with a ``rate``-bit outer part and a ``capacity``-bit inner part.

    The initial state is the seed expanded to ``rate + capacity`` bits.
    The padded index is XORed into the rate part. The state is permuted and
    the output byte is read from the rate part of the result, so capacity
    bits reach the output only through the permutation.

    The permutation is ``expand(state, width)``: the concatenation of
    ``hash(state || j)`` for ``j = 0, 1, ...``, cut to ``width`` bytes.
    Widths must be whole bytes.
    """

    seed: bytes
    capacity: int = 256
    rate: int = 256
    hash: HashSpec = SHA256

    def __post_init__(self) -> None:
        _check_seed(self.seed)
        object.__setattr__(self, "seed", bytes(self.seed))
        for name in ("capacity", "rate"):
            bits = getattr(self, name)
            if bits < 8 or bits % 8:
                raise SpecError(f"{name} must be a positive multiple of 8 bits, got {bits}")

    @property
    def rate_bytes(self) -> int:
        return self.rate // 8

    @property
    def width_bytes(self) -> int:
        return (self.rate + self.capacity) // 8

    def expand(self, data: bytes, nbytes: int) -> bytes:
        out = bytearray()
        h = self.hash.prefixed(data + SEP)
        j = 0
        while len(out) < nbytes:
            out += h(dec(j))
            j += 1
        return bytes(out[:nbytes])

    @cached_property
    def initial_state(self) -> bytes:
        return self.expand(self.seed, self.width_bytes)

    def pad(self, index: int) -> bytes:
        """``decimal(index) || 0x01 || 0x00...`` filled to the rate width."""
        block = dec(index) + b"\x01"
        if len(block) > self.rate_bytes:
            raise SpecError(
                f"rate of {self.rate} bits is too small to absorb index {index}"
            )
        return block + bytes(self.rate_bytes - len(block))

    def absorb(self, index: int) -> bytes:
        """Full state after XORing the padded index into the rate part."""
        state = self.initial_state
        rate = self.rate_bytes
        block = self.pad(check_index(index))
        outer = int.from_bytes(state[:rate], "big") ^ int.from_bytes(block, "big")
        return outer.to_bytes(rate, "big") + state[rate:]

    def permute(self, state: bytes) -> bytes:
        return self.expand(state, self.width_bytes)

    def squeeze(self, state: bytes, nbytes: int = 1) -> bytes:
        """Permute ``state`` and return the first ``nbytes`` of its rate part."""
        if nbytes > self.rate_bytes:
            raise DomainError("cannot squeeze more than the rate in one block")
        # expand() is prefix-consistent, so only the needed bytes are computed.
        return self.expand(state, nbytes)

    def get(self, index: int) -> int:
        return self.squeeze(self.absorb(index), 1)[0]

    def read(self, start: int, n: int) -> bytes:
        start = _check_read(start, n)
        state = self.initial_state
        rate = self.rate_bytes
        outer0 = int.from_bytes(state[:rate], "big")
        inner = state[rate:] + SEP + b"0"
        digest = self.hash.digest
        pad = self.pad
        out = bytearray(n)
        for k, i in enumerate(range(start, start + n)):
            outer = (outer0 ^ int.from_bytes(pad(i), "big")).to_bytes(rate, "big")
            out[k] = digest(outer + inner)[0]
        return bytes(out)


@dataclass(frozen=True)
class XorMultiDigest(ExtendedDigest):
    """``byte[i] = XOR over hashes h of h(seed || i)[0]``.

    The stream is as strong as the strongest member of ``hashes``. The
    order of ``hashes`` does not affect the output.
    """

    seed: bytes
    hashes: tuple[HashSpec, ...] = field(default=DEFAULT_XOR_HASHES)

    def __post_init__(self) -> None:
        _check_seed(self.seed)
        object.__setattr__(self, "seed", bytes(self.seed))
        hashes = tuple(self.hashes)
        object.__setattr__(self, "hashes", hashes)
        if len(hashes) < 2:
            raise SpecError("xor-multi needs at least two hash functions")
        if len(set(hashes)) != len(hashes):
            raise SpecError(f"duplicate hash in xor-multi set: {[h.name for h in hashes]}")

    def get(self, index: int) -> int:
        message = self.seed + SEP + dec(check_index(index))
        result = 0
        for h in self.hashes:
            result ^= h.digest(message)[0]
        return result

    def read(self, start: int, n: int) -> bytes:
        start = _check_read(start, n)
        fns = [h.prefixed(self.seed + SEP) for h in self.hashes]
        out = bytearray(n)
        for k, i in enumerate(range(start, start + n)):
            suffix = dec(i)
            value = 0
            for fn in fns:
                value ^= fn(suffix)[0]
            out[k] = value
        return bytes(out)


@dataclass(frozen=True)
class CompositeDigest(ExtendedDigest):
    """XOR of one stream from each of the four hardened constructions."""

    xor_part: XorMultiDigest
    rekey_part: RekeyingDigest
    hier_part: HierarchicalDigest
    sponge_part: SpongeDigest

    def __post_init__(self) -> None:
        expected = (
            ("xor_part", XorMultiDigest),
            ("rekey_part", RekeyingDigest),
            ("hier_part", HierarchicalDigest),
            ("sponge_part", SpongeDigest),
        )
        for name, kind in expected:
            if not isinstance(getattr(self, name), kind):
                raise SpecError(f"{name} must be a {kind.__name__}")

    @classmethod
    def from_seed(cls, seed: bytes, hash: HashSpec = SHA256) -> "CompositeDigest":
        """All four parts keyed by the same seed, with default parameters."""
        return cls(
            XorMultiDigest(seed),
            RekeyingDigest(seed, hash),
            HierarchicalDigest(seed, hash),
            SpongeDigest(seed, hash=hash),
        )

    @property
    def parts(self) -> tuple[ExtendedDigest, ...]:
        return (self.xor_part, self.rekey_part, self.hier_part, self.sponge_part)

    def get(self, index: int) -> int:
        index = check_index(index)
        return (
            self.xor_part.get(index)
            ^ self.rekey_part.get(index)
            ^ self.hier_part.get(index)
            ^ self.sponge_part.get(index)
        )

    def read(self, start: int, n: int) -> bytes:
        start = _check_read(start, n)
        acc = int.from_bytes(self.xor_part.read(start, n), "big")
        for part in self.parts[1:]:
            acc ^= int.from_bytes(part.read(start, n), "big")
        return acc.to_bytes(n, "big")
