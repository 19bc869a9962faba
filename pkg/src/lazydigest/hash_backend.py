"""
Pluggable hash backends.

Four real hashes are wired to :mod:`hashlib`. The ``toy`` family truncates
SHA-256 to a handful of bits so that the rho structure of the iterated map
is small enough to enumerate. An optional one-byte tweak salts a toy hash,
giving a family of distinct small functions.

Names used in descriptors: ``sha256``, ``sha512``, ``sha3-256``,
``blake2b``, ``toy-<b>`` and ``toy-<b>:<tweak>``.
"""

from __future__ import annotations

import hashlib
import re
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .errors import ConfigurationError, DomainError

__all__ = [
    "HashSpec",
    "HashCallCounter",
    "SHA256",
    "SHA512",
    "SHA3_256",
    "BLAKE2B",
    "ALGORITHMS",
    "MAX_MESSAGE_BYTES",
    "count_calls",
    "hash_message",
    "toy_iterate",
]

_CONSTRUCTORS = {
    "sha256": hashlib.sha256,
    "sha512": hashlib.sha512,
    "sha3-256": hashlib.sha3_256,
    "blake2b": hashlib.blake2b,
}
_OUTPUT_LEN = {"sha256": 32, "sha512": 64, "sha3-256": 32, "blake2b": 64}

ALGORITHMS = tuple(_CONSTRUCTORS) + ("toy",)

# Smallest input limit among the backends (SHA-256: 2**64 - 1 bits).
MAX_MESSAGE_BYTES = 2**61 - 1

TOY_MIN_BITS = 4
TOY_MAX_BITS = 24

_TOY_NAME = re.compile(r"toy-(\d+)(?::(\d+))?")


class HashCallCounter:
    """Tally of hash invocations made while a :func:`count_calls` block is active."""

    def __init__(self) -> None:
        self.calls = 0

    def __repr__(self) -> str:
        return f"HashCallCounter(calls={self.calls})"


_active_counters: list[HashCallCounter] = []


@contextmanager
def count_calls() -> Iterator[HashCallCounter]:
    """Count every backend hash invocation inside the ``with`` block.

    >>> with count_calls() as counter:
    ...     _ = SHA256.digest(b"abc")
    >>> counter.calls
    1
    """
    counter = HashCallCounter()
    _active_counters.append(counter)
    try:
        yield counter
    finally:
        _active_counters.remove(counter)


def _tick() -> None:
    for counter in _active_counters:
        counter.calls += 1


@dataclass(frozen=True)
class HashSpec:
    """Identifier and parameters of one hash backend.

    Instances are immutable and hashable, so they can be shared freely and
    used as members of the ordered hash sets of the XOR construction.
    """

    algorithm: str
    toy_bits: Optional[int] = None
    tweak: Optional[int] = None

    def __post_init__(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ConfigurationError(f"unknown hash algorithm {self.algorithm!r}")
        if self.algorithm == "toy":
            bits = self.toy_bits
            if not isinstance(bits, int) or not TOY_MIN_BITS <= bits <= TOY_MAX_BITS:
                raise ConfigurationError(
                    f"toy hash needs {TOY_MIN_BITS} <= toy_bits <= {TOY_MAX_BITS}, got {bits!r}"
                )
            if self.tweak is not None and not 0 <= self.tweak <= 255:
                raise ConfigurationError(f"toy tweak must fit in one byte, got {self.tweak!r}")
        elif self.toy_bits is not None or self.tweak is not None:
            raise ConfigurationError("toy_bits and tweak apply only to the toy algorithm")

    @classmethod
    def toy(cls, bits: int, tweak: Optional[int] = None) -> "HashSpec":
        return cls("toy", bits, tweak)

    @classmethod
    def from_name(cls, name: str) -> "HashSpec":
        """Parse a descriptor name such as ``sha3-256`` or ``toy-12:3``."""
        if name in _CONSTRUCTORS:
            return cls(name)
        match = _TOY_NAME.fullmatch(name)
        if match is None:
            raise ConfigurationError(f"unknown hash algorithm {name!r}")
        tweak = match.group(2)
        return cls("toy", int(match.group(1)), None if tweak is None else int(tweak))

    @property
    def name(self) -> str:
        if self.algorithm != "toy":
            return self.algorithm
        if self.tweak is None:
            return f"toy-{self.toy_bits}"
        return f"toy-{self.toy_bits}:{self.tweak}"

    @property
    def is_toy(self) -> bool:
        return self.algorithm == "toy"

    @property
    def output_len(self) -> int:
        if self.is_toy:
            return (self.toy_bits + 7) // 8
        return _OUTPUT_LEN[self.algorithm]

    def digest(self, message: bytes) -> bytes:
        """Hash ``message``; always returns exactly :attr:`output_len` bytes."""
        if len(message) > MAX_MESSAGE_BYTES:
            raise DomainError("message exceeds the hash input limit")
        _tick()
        if not self.is_toy:
            return _CONSTRUCTORS[self.algorithm](message).digest()
        if self.tweak is not None:
            message = bytes((self.tweak,)) + message
        return self._truncate(hashlib.sha256(message).digest())

    def prefixed(self, prefix: bytes) -> Callable[[bytes], bytes]:
        """Return ``f`` with ``f(suffix) == self.digest(prefix + suffix)``.

        The prefix is absorbed once and the hash state is copied for each
        call, which is what makes bulk generation of a stream cheap.
        """
        if self.is_toy:
            if self.tweak is not None:
                prefix = bytes((self.tweak,)) + prefix
            base = hashlib.sha256(prefix)
            truncate = self._truncate
        else:
            base = _CONSTRUCTORS[self.algorithm](prefix)
            truncate = None
        counters = _active_counters

        def digest(suffix: bytes) -> bytes:
            if counters:
                _tick()
            h = base.copy()
            h.update(suffix)
            out = h.digest()
            return out if truncate is None else truncate(out)

        return digest

    def _truncate(self, full: bytes) -> bytes:
        width = self.output_len
        value = int.from_bytes(full[:width], "big") & ((1 << self.toy_bits) - 1)
        return value.to_bytes(width, "big")

    def __str__(self) -> str:
        return self.name


SHA256 = HashSpec("sha256")
SHA512 = HashSpec("sha512")
SHA3_256 = HashSpec("sha3-256")
BLAKE2B = HashSpec("blake2b")


def hash_message(spec: HashSpec, message: bytes) -> bytes:
    """Functional spelling of :meth:`HashSpec.digest`."""
    return spec.digest(message)


def toy_iterate(spec: HashSpec, state: int) -> int:
    """One step of the iterated toy map on ``toy_bits``-bit states.

    The state is encoded big-endian in ``ceil(b / 8)`` bytes, hashed with the
    toy hash, and the result is read back as an integer below ``2**b``.
    """
    if not spec.is_toy:
        raise ConfigurationError(f"toy_iterate needs a toy hash, got {spec.name}")
    if not 0 <= state < 1 << spec.toy_bits:
        raise DomainError(f"state {state} does not fit in {spec.toy_bits} bits")
    width = spec.output_len
    return int.from_bytes(spec.digest(state.to_bytes(width, "big")), "big")
