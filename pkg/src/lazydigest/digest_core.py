"""
Finite digests, the infinite :class:`ExtendedDigest` interface, and
:class:`OracleDigest`.

``OracleDigest`` draws fresh entropy for every new index and remembers it.
It is consistent, but it cannot be bounded in memory, saved, replayed or
shared between machines. Each of those failures is observable here: the
cache has a hard limit, pickling raises, and two instances disagree.
"""

from __future__ import annotations

import hashlib
import operator
import os
import threading
from abc import ABC, abstractmethod
from typing import Any, Callable, Iterable, Iterator, Optional, TypeVar

from .errors import DomainError, EntropyError, NotSerializableError, ResourceExhaustedError

__all__ = [
    "Digest",
    "ExtendedDigest",
    "ConstantDigest",
    "CounterDigest",
    "OracleDigest",
    "check_index",
]

T = TypeVar("T")

DEFAULT_CACHE_LIMIT = 2**20


class Digest(bytes):
    """A finite, immutable byte string.

    Equality is byte-wise and :meth:`hex` renders lowercase without a
    prefix, so ``Digest.fromhex(d.hex()) == d``.
    """

    def __repr__(self) -> str:
        return f"Digest('{self.hex()}')"


def check_index(index: Any) -> int:
    """Coerce ``index`` to a non-negative ``int`` or raise :class:`DomainError`."""
    try:
        index = operator.index(index)
    except TypeError:
        raise DomainError(f"stream index must be an integer, got {type(index).__name__}") from None
    if index < 0:
        raise DomainError(f"stream index must be non-negative, got {index}")
    return index


class ExtendedDigest(ABC):
    """An unbounded, index-addressable byte sequence.

    Subclasses implement :meth:`get`. Every call with the same index must
    return the same byte. ``d[i]`` is an alias for ``d.get(i)``.
    """

    @abstractmethod
    def get(self, index: int) -> int:
        """Return the byte at ``index`` as an int in ``range(256)``."""

    def __getitem__(self, index: int) -> int:
        if isinstance(index, slice):
            raise TypeError("infinite digests do not support Python slicing; use read() or slice()")
        return self.get(index)

    def __iter__(self) -> Iterator[int]:
        index = 0
        while True:
            yield self.get(index)
            index += 1

    def read(self, start: int, n: int) -> bytes:
        """Bytes ``[start, start + n)``. Subclasses may override with a faster path."""
        start = check_index(start)
        if n < 0:
            raise DomainError(f"read length must be non-negative, got {n}")
        get = self.get
        return bytes(get(i) for i in range(start, start + n))

    # Operation algebra; the implementations live in lazydigest.algebra.

    def xor(self, other: "ExtendedDigest") -> "ExtendedDigest":
        from . import algebra

        return algebra.xor(self, other)

    def slice(self, start: int, step: int) -> "ExtendedDigest":
        from . import algebra

        return algebra.slice(self, start, step)

    def transform(self, f: Callable[[int], int]) -> "ExtendedDigest":
        from . import algebra

        return algebra.transform(self, f)

    def truncate(self, n: int) -> Digest:
        from . import algebra

        return algebra.truncate(self, n)

    def sample(self, indices: Iterable[int]) -> bytes:
        from . import algebra

        return algebra.sample(self, indices)

    def fold(self, f: Callable[[T, int], T], init: T, n: int) -> T:
        from . import algebra

        return algebra.fold(self, f, init, n)


class ConstantDigest(ExtendedDigest):
    """Every byte equals ``value``."""

    def __init__(self, value: int = 0) -> None:
        if not 0 <= value <= 255:
            raise DomainError(f"byte value out of range: {value}")
        self.value = value

    def get(self, index: int) -> int:
        check_index(index)
        return self.value

    def read(self, start: int, n: int) -> bytes:
        check_index(start)
        return bytes((self.value,)) * n

    def __repr__(self) -> str:
        return f"ConstantDigest({self.value})"


class CounterDigest(ExtendedDigest):
    """Byte ``i`` is ``(offset + i) mod 256``; a deliberately non-random stream."""

    def __init__(self, offset: int = 0) -> None:
        self.offset = offset

    def get(self, index: int) -> int:
        return (self.offset + check_index(index)) & 0xFF

    def read(self, start: int, n: int) -> bytes:
        start = check_index(start)
        first = (self.offset + start) & 0xFF
        period = bytes(range(256))
        reps = (first + n) // 256 + 1
        return (period * reps)[first : first + n]

    def __repr__(self) -> str:
        return f"CounterDigest({self.offset})"


def _system_entropy() -> bytes:
    return hashlib.sha256(os.urandom(32)).digest()


class OracleDigest(ExtendedDigest):
    """A caching oracle that draws one fresh entropy byte per new index.

    Parameters
    ----------
    input
        Inert label. The oracle's output never depends on it.
    entropy
        Zero-argument callable returning bytes; only the first byte of each
        draw is used. Defaults to SHA-256 of 32 bytes from ``os.urandom``.
    cache_limit
        Maximum number of distinct indices that may be queried. The next
        new index raises :class:`ResourceExhaustedError`.
    """

    def __init__(
        self,
        input: Any = None,
        entropy: Optional[Callable[[], bytes]] = None,
        cache_limit: int = DEFAULT_CACHE_LIMIT,
    ) -> None:
        if cache_limit < 0:
            raise DomainError(f"cache_limit must be non-negative, got {cache_limit}")
        self.input = input
        self.entropy = _system_entropy if entropy is None else entropy
        self.cache_limit = cache_limit
        self._cache: dict[int, int] = {}
        self._lock = threading.Lock()

    def get(self, index: int) -> int:
        index = check_index(index)
        with self._lock:
            cached = self._cache.get(index)
            if cached is not None:
                return cached
            if len(self._cache) >= self.cache_limit:
                raise ResourceExhaustedError(
                    f"oracle cache is full ({self.cache_limit} entries); "
                    f"index {index} would need more memory"
                )
            try:
                drawn = self.entropy()
                value = drawn[0]
            except Exception as exc:
                raise EntropyError(f"entropy source failed: {exc}") from exc
            self._cache[index] = value
            return value

    def memory_usage(self) -> int:
        """Number of cached entries, i.e. distinct indices queried so far."""
        return len(self._cache)

    def serialize_attempt(self) -> bytes:
        """Always raises: the cache holds runtime entropy with no finite description."""
        raise NotSerializableError(
            "OracleDigest cannot be serialized: its bytes come from the entropy "
            f"source {getattr(self.entropy, '__name__', repr(self.entropy))} and "
            "exist only in this process's cache"
        )

    def __reduce__(self):
        self.serialize_attempt()

    def __repr__(self) -> str:
        return f"OracleDigest(input={self.input!r}, cached={len(self._cache)})"
