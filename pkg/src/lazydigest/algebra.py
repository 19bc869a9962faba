"""
Operations on infinite digests.

Lazy combinators (:func:`xor`, :func:`slice`, :func:`transform`) return new
:class:`ExtendedDigest` views. They store their operands and evaluate them
only when an index of the result is read, and they never cache. Concrete
projections (:func:`truncate`, :func:`sample`, :func:`fold`) read a finite
number of bytes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, TypeVar, Union

from .digest_core import Digest, ExtendedDigest, check_index
from .errors import DomainError

__all__ = [
    "ByteTransform",
    "NOT",
    "IDENTITY",
    "add",
    "named_transform",
    "XorDigest",
    "SliceDigest",
    "TransformDigest",
    "xor",
    "slice",
    "transform",
    "truncate",
    "sample",
    "fold",
]

T = TypeVar("T")


@dataclass(frozen=True)
class ByteTransform:
    """A total map from bytes to bytes, optionally carrying a descriptor name.

    Only named transforms (``not``, ``add:<k>``, ``id``) can be written into
    a descriptor. Arbitrary callables work through the API but have no name.
    """

    fn: Callable[[int], int]
    name: Optional[str] = None

    def __call__(self, value: int) -> int:
        return self.fn(value)

    def then(self, other: "ByteTransform") -> "ByteTransform":
        """``other`` applied after ``self``."""
        return ByteTransform(lambda v: other.fn(self.fn(v)))

    def table(self) -> bytes:
        """The transform as a 256-entry lookup table (checks totality)."""
        values = [self.fn(v) for v in range(256)]
        bad = [v for v in values if not (isinstance(v, int) and 0 <= v <= 255)]
        if bad:
            raise DomainError(f"transform is not byte -> byte: produced {bad[0]!r}")
        return bytes(values)


NOT = ByteTransform(lambda v: v ^ 0xFF, "not")
IDENTITY = ByteTransform(lambda v: v, "id")


def add(k: int) -> ByteTransform:
    """Add ``k`` modulo 256."""
    k %= 256
    return ByteTransform(lambda v: (v + k) & 0xFF, f"add:{k}")


def named_transform(name: str) -> ByteTransform:
    """Look up a descriptor-expressible transform by name."""
    if name == "not":
        return NOT
    if name == "id":
        return IDENTITY
    if name.startswith("add:"):
        arg = name[4:]
        if arg.isdigit():
            return add(int(arg))
    raise DomainError(f"unknown transform {name!r}; expected 'not', 'id' or 'add:<k>'")


class XorDigest(ExtendedDigest):
    def __init__(self, a: ExtendedDigest, b: ExtendedDigest) -> None:
        self.a = a
        self.b = b

    def get(self, index: int) -> int:
        return self.a.get(index) ^ self.b.get(index)

    def read(self, start: int, n: int) -> bytes:
        left = int.from_bytes(self.a.read(start, n), "big")
        right = int.from_bytes(self.b.read(start, n), "big")
        return (left ^ right).to_bytes(n, "big")

    def __repr__(self) -> str:
        return f"xor({self.a!r}, {self.b!r})"


class SliceDigest(ExtendedDigest):
    """``result[i] = source[start + i * step]``."""

    def __init__(self, source: ExtendedDigest, start: int, step: int) -> None:
        self.source = source
        self.start = check_index(start)
        if step < 1:
            raise DomainError(f"slice step must be >= 1, got {step}")
        self.step = step

    def get(self, index: int) -> int:
        return self.source.get(self.start + check_index(index) * self.step)

    def read(self, start: int, n: int) -> bytes:
        first = self.start + check_index(start) * self.step
        if self.step == 1:
            return self.source.read(first, n)
        return super().read(start, n)

    def __repr__(self) -> str:
        return f"slice({self.source!r}, start={self.start}, step={self.step})"


class TransformDigest(ExtendedDigest):
    """``result[i] = f(source[i])``."""

    def __init__(self, source: ExtendedDigest, f: ByteTransform) -> None:
        self.source = source
        self.f = f

    def get(self, index: int) -> int:
        return self.f(self.source.get(index))

    def read(self, start: int, n: int) -> bytes:
        return self.source.read(start, n).translate(self.f.table())

    def __repr__(self) -> str:
        return f"transform({self.source!r}, {self.f.name or self.f.fn!r})"


def xor(a: ExtendedDigest, b: ExtendedDigest) -> XorDigest:
    return XorDigest(a, b)


def slice(d: ExtendedDigest, start: int, step: int) -> SliceDigest:
    """Every ``step``-th byte of ``d`` beginning at ``start``."""
    return SliceDigest(d, start, step)


def transform(d: ExtendedDigest, f: Union[ByteTransform, Callable[[int], int]]) -> TransformDigest:
    if not isinstance(f, ByteTransform):
        f = ByteTransform(f)
    return TransformDigest(d, f)


def truncate(d: ExtendedDigest, n: int) -> Digest:
    """The first ``n`` bytes of ``d`` as a finite :class:`Digest`."""
    if n < 0:
        raise DomainError(f"truncate length must be non-negative, got {n}")
    return Digest(d.read(0, n))


def sample(d: ExtendedDigest, indices: Iterable[int]) -> bytes:
    """Bytes of ``d`` at ``indices``, in order, duplicates allowed."""
    return bytes(d.get(i) for i in indices)


def fold(d: ExtendedDigest, f: Callable[[T, int], T], init: T, n: int) -> T:
    """Left fold of ``f`` over the first ``n`` bytes of ``d``."""
    result = init
    for i in range(n):
        result = f(result, d.get(i))
    return result
