"""
A one-line text format that fully describes an infinite digest.

Grammar::

    node   := kind "{" params "}"
            | combinator "(" node ("," node)* ["," params] ")"
    params := [key "=" value ("," key "=" value)*]

Kinds are ``lazy``, ``hierarchical``, ``rekey``, ``sponge``, ``xor-multi``
and ``composite``. Combinators are ``xor``, ``slice`` and ``transform``.
Seeds are hex, integers are decimal, and hashes use the backend names.
``xor-multi`` lists its hashes joined by ``+``. ``composite`` takes one
dotted parameter group per part (``xor.seed``, ``rekey.interval``, ...),
and a bare ``seed`` fills any part seed that is not given.

Parsing fills in defaults. Serialising writes every parameter in
lexicographic key order, so ``serialize(parse(text))`` is the canonical
spelling of ``text``. Example::

    lazy{hash=sha256,seed=00ff}
    xor(lazy{hash=sha256,seed=01},slice(rekey{hash=sha256,interval=16,seed=02},start=5,step=3))
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

from . import algebra
from .constructions import (
    DEFAULT_XOR_HASHES,
    CompositeDigest,
    HierarchicalDigest,
    LazyDigest,
    RekeyingDigest,
    SpongeDigest,
    XorMultiDigest,
)
from .digest_core import ExtendedDigest
from .errors import ConfigurationError, DomainError, LazyDigestError, NotSerializableError, SpecError
from .hash_backend import HashSpec

__all__ = [
    "ConstructionDescriptor",
    "DescriptorError",
    "DescriptorSyntaxError",
    "UnknownKindError",
    "UnknownParamError",
    "MissingParamError",
    "HexError",
    "UnknownHashError",
    "DescriptorValidationError",
    "KINDS",
    "COMBINATORS",
    "parse_descriptor",
    "serialize_descriptor",
    "build",
    "to_descriptor",
    "dumps",
    "loads",
]


class DescriptorError(LazyDigestError, ValueError):
    """A descriptor could not be parsed; ``position`` is the character offset."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class DescriptorSyntaxError(DescriptorError):
    pass


class UnknownKindError(DescriptorError):
    pass


class UnknownParamError(DescriptorError):
    pass


class MissingParamError(DescriptorError):
    pass


class HexError(DescriptorError):
    pass


class UnknownHashError(DescriptorError):
    pass


class DescriptorValidationError(DescriptorError):
    """Well-formed text whose parameters violate a construction invariant."""


@dataclass(frozen=True)
class ConstructionDescriptor:
    """Finite description of a stream: a kind, string parameters, and children."""

    kind: str
    params: Mapping[str, str] = field(default_factory=dict)
    children: tuple["ConstructionDescriptor", ...] = ()

    def __str__(self) -> str:
        return serialize_descriptor(self)


# -- parameter value types -------------------------------------------------

_REQUIRED = object()
_HEX_DIGITS = set("0123456789abcdefABCDEF")
_DEFAULT_HASHES = "+".join(h.name for h in DEFAULT_XOR_HASHES)


def _norm_hex(value: str, pos: int) -> str:
    for k, ch in enumerate(value):
        if ch not in _HEX_DIGITS:
            raise HexError(f"invalid hex digit {ch!r} in seed", pos + k)
    if not value:
        raise HexError("seed must not be empty", pos)
    if len(value) % 2:
        raise HexError("hex seed has an odd number of digits", pos + len(value))
    return value.lower()


def _norm_int(value: str, pos: int) -> str:
    if not value.isdigit() or not value.isascii():
        raise DescriptorValidationError(f"expected a decimal integer, got {value!r}", pos)
    return str(int(value))


def _norm_hash(value: str, pos: int) -> str:
    try:
        return HashSpec.from_name(value).name
    except ConfigurationError:
        raise UnknownHashError(f"unknown hash name {value!r}", pos) from None


def _norm_hashes(value: str, pos: int) -> str:
    names = []
    offset = pos
    for part in value.split("+"):
        names.append(_norm_hash(part, offset))
        offset += len(part) + 1
    return "+".join(names)


def _norm_transform(value: str, pos: int) -> str:
    try:
        return algebra.named_transform(value).name
    except DomainError as exc:
        raise DescriptorValidationError(str(exc), pos) from None


# key -> (normaliser, default)
_Schema = Mapping[str, tuple[Callable[[str, int], str], object]]


def _seeded(extra: _Schema) -> dict:
    return {"seed": (_norm_hex, _REQUIRED), "hash": (_norm_hash, "sha256"), **extra}


_PART_SCHEMAS: dict[str, _Schema] = {
    "lazy": _seeded({}),
    "hierarchical": _seeded(
        {"epoch_size": (_norm_int, str(2**40)), "chunk_size": (_norm_int, str(2**20))}
    ),
    "rekey": _seeded({"interval": (_norm_int, str(2**32))}),
    "sponge": _seeded({"capacity": (_norm_int, "256"), "rate": (_norm_int, "256")}),
    "xor-multi": {"seed": (_norm_hex, _REQUIRED), "hashes": (_norm_hashes, _DEFAULT_HASHES)},
}

_COMPOSITE_PARTS = {"xor": "xor-multi", "rekey": "rekey", "hier": "hierarchical", "sponge": "sponge"}

_SCHEMAS: dict[str, _Schema] = {
    **_PART_SCHEMAS,
    "composite": {
        f"{prefix}.{key}": spec
        for prefix, kind in _COMPOSITE_PARTS.items()
        for key, spec in _PART_SCHEMAS[kind].items()
    },
    "slice": {"start": (_norm_int, "0"), "step": (_norm_int, "1")},
    "transform": {"fn": (_norm_transform, _REQUIRED)},
    "xor": {},
}

KINDS = ("lazy", "hierarchical", "rekey", "sponge", "xor-multi", "composite")
COMBINATORS = ("xor", "slice", "transform")
_ARITY = {"xor": (2, None), "slice": (1, 1), "transform": (1, 1)}


# -- parser ----------------------------------------------------------------

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_.\-]*")
_VALUE = re.compile(r"[A-Za-z0-9_:+.\-]*")


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def fail(self, message: str, pos: Optional[int] = None) -> DescriptorSyntaxError:
        return DescriptorSyntaxError(message, self.pos if pos is None else pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos : self.pos + 1]

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise self.fail(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def name(self) -> tuple[str, int]:
        self.skip_ws()
        match = _NAME.match(self.text, self.pos)
        if match is None:
            raise self.fail("expected a name")
        self.pos = match.end()
        return match.group(), match.start()

    def value(self) -> tuple[str, int]:
        self.skip_ws()
        match = _VALUE.match(self.text, self.pos)
        self.pos = match.end()
        return match.group(), match.start()

    def document(self) -> ConstructionDescriptor:
        node = self.node()
        if self.peek():
            raise self.fail("unexpected trailing text")
        return node

    def node(self) -> ConstructionDescriptor:
        kind, kind_pos = self.name()
        opener = self.peek()
        if kind in KINDS:
            if opener != "{":
                raise self.fail(f"{kind} takes parameters in braces")
            self.pos += 1
            raw = self.params("}")
            self.expect("}")
            children: tuple[ConstructionDescriptor, ...] = ()
        elif kind in COMBINATORS:
            if opener != "(":
                raise self.fail(f"{kind} takes its operands in parentheses")
            self.pos += 1
            nodes = [self.node()]
            raw = {}
            while self.peek() == ",":
                self.pos += 1
                if self._param_ahead():
                    raw = self.params(")")
                    break
                nodes.append(self.node())
            self.expect(")")
            children = tuple(nodes)
            low, high = _ARITY[kind]
            if len(children) < low or (high is not None and len(children) > high):
                raise DescriptorValidationError(
                    f"{kind} takes {low if high == low else f'at least {low}'} operand(s), "
                    f"got {len(children)}",
                    kind_pos,
                )
        else:
            raise UnknownKindError(f"unknown construction or combinator {kind!r}", kind_pos)
        params = _normalise(kind, raw, kind_pos)
        return ConstructionDescriptor(kind, params, children)

    def _param_ahead(self) -> bool:
        self.skip_ws()
        match = _NAME.match(self.text, self.pos)
        if match is None:
            return False
        rest = self.text[match.end() :].lstrip()
        return rest.startswith("=")

    def params(self, closer: str) -> dict[str, tuple[str, int, int]]:
        raw: dict[str, tuple[str, int, int]] = {}
        if self.peek() == closer:
            return raw
        while True:
            key, key_pos = self.name()
            self.expect("=")
            value, value_pos = self.value()
            if key in raw:
                raise self.fail(f"duplicate parameter {key!r}", key_pos)
            raw[key] = (value, key_pos, value_pos)
            if self.peek() != ",":
                return raw
            self.pos += 1


def _normalise(kind: str, raw: dict[str, tuple[str, int, int]], kind_pos: int) -> dict[str, str]:
    schema = _SCHEMAS[kind]
    if kind == "composite" and "seed" in raw:
        value, key_pos, value_pos = raw.pop("seed")
        for prefix in _COMPOSITE_PARTS:
            raw.setdefault(f"{prefix}.seed", (value, key_pos, value_pos))
    for key, (_, key_pos, _) in raw.items():
        if key not in schema:
            raise UnknownParamError(f"unknown parameter {key!r} for {kind}", key_pos)
    params = {}
    for key, (norm, default) in schema.items():
        if key in raw:
            value, _, value_pos = raw[key]
            params[key] = norm(value, value_pos)
        elif default is _REQUIRED:
            raise MissingParamError(f"{kind} requires parameter {key!r}", kind_pos)
        else:
            params[key] = default
    return params


def parse_descriptor(text: str) -> ConstructionDescriptor:
    """Parse and validate ``text``; raises a :class:`DescriptorError` subclass."""
    desc = _Parser(text).document()
    try:
        build(desc)
    except (SpecError, DomainError, ConfigurationError) as exc:
        raise DescriptorValidationError(str(exc), 0) from None
    return desc


# -- serialisation ---------------------------------------------------------


def serialize_descriptor(desc: ConstructionDescriptor) -> str:
    """Canonical one-line text for ``desc``."""
    if desc.kind == "transform":
        name = desc.params.get("fn")
        try:
            algebra.named_transform(name or "")
        except DomainError:
            raise NotSerializableError(f"transform {name!r} has no descriptor name") from None
    params = ",".join(f"{k}={desc.params[k]}" for k in sorted(desc.params))
    if desc.kind in COMBINATORS:
        parts = [serialize_descriptor(child) for child in desc.children]
        if params:
            parts.append(params)
        return f"{desc.kind}({','.join(parts)})"
    return f"{desc.kind}{{{params}}}"


# -- descriptor <-> stream ------------------------------------------------


def _hashes(value: str) -> tuple[HashSpec, ...]:
    return tuple(HashSpec.from_name(name) for name in value.split("+"))


def _build_part(kind: str, p: Mapping[str, str]) -> ExtendedDigest:
    seed = bytes.fromhex(p["seed"])
    if kind == "xor-multi":
        return XorMultiDigest(seed, _hashes(p["hashes"]))
    h = HashSpec.from_name(p["hash"])
    if kind == "lazy":
        return LazyDigest(seed, h)
    if kind == "hierarchical":
        return HierarchicalDigest(seed, h, int(p["epoch_size"]), int(p["chunk_size"]))
    if kind == "rekey":
        return RekeyingDigest(seed, h, int(p["interval"]))
    if kind == "sponge":
        return SpongeDigest(seed, int(p["capacity"]), int(p["rate"]), h)
    raise DomainError(f"unknown construction kind {kind!r}")


def build(desc: ConstructionDescriptor) -> ExtendedDigest:
    """The stream described by ``desc``."""
    kind, p = desc.kind, desc.params
    if kind in _PART_SCHEMAS:
        return _build_part(kind, p)
    if kind == "composite":
        parts = []
        for prefix, part_kind in _COMPOSITE_PARTS.items():
            sub = {k.split(".", 1)[1]: v for k, v in p.items() if k.startswith(prefix + ".")}
            parts.append(_build_part(part_kind, sub))
        return CompositeDigest(*parts)
    children = [build(child) for child in desc.children]
    if kind == "xor":
        result = children[0]
        for child in children[1:]:
            result = algebra.xor(result, child)
        return result
    if kind == "slice":
        return algebra.slice(children[0], int(p["start"]), int(p["step"]))
    if kind == "transform":
        return algebra.transform(children[0], algebra.named_transform(p["fn"]))
    raise DomainError(f"unknown descriptor kind {kind!r}")


def _part_params(d: ExtendedDigest) -> tuple[str, dict[str, str]]:
    if isinstance(d, LazyDigest):
        return "lazy", {"seed": d.seed.hex(), "hash": d.hash.name}
    if isinstance(d, HierarchicalDigest):
        return "hierarchical", {
            "seed": d.master_seed.hex(),
            "hash": d.hash.name,
            "epoch_size": str(d.epoch_size),
            "chunk_size": str(d.chunk_size),
        }
    if isinstance(d, RekeyingDigest):
        return "rekey", {"seed": d.seed.hex(), "hash": d.hash.name, "interval": str(d.rekey_interval)}
    if isinstance(d, SpongeDigest):
        return "sponge", {
            "seed": d.seed.hex(),
            "hash": d.hash.name,
            "capacity": str(d.capacity),
            "rate": str(d.rate),
        }
    if isinstance(d, XorMultiDigest):
        return "xor-multi", {"seed": d.seed.hex(), "hashes": "+".join(h.name for h in d.hashes)}
    raise NotSerializableError(f"{type(d).__name__} has no finite descriptor")


def to_descriptor(d: ExtendedDigest) -> ConstructionDescriptor:
    """Describe ``d``; raises :class:`NotSerializableError` for oracles and unnamed transforms."""
    if isinstance(d, CompositeDigest):
        params = {}
        for prefix, part in zip(_COMPOSITE_PARTS, d.parts):
            _, sub = _part_params(part)
            params.update({f"{prefix}.{k}": v for k, v in sub.items()})
        return ConstructionDescriptor("composite", params)
    if isinstance(d, algebra.XorDigest):
        return ConstructionDescriptor("xor", {}, (to_descriptor(d.a), to_descriptor(d.b)))
    if isinstance(d, algebra.SliceDigest):
        return ConstructionDescriptor(
            "slice", {"start": str(d.start), "step": str(d.step)}, (to_descriptor(d.source),)
        )
    if isinstance(d, algebra.TransformDigest):
        if d.f.name is None:
            raise NotSerializableError("transform by an arbitrary function has no descriptor name")
        return ConstructionDescriptor("transform", {"fn": d.f.name}, (to_descriptor(d.source),))
    kind, params = _part_params(d)
    return ConstructionDescriptor(kind, params)


def dumps(d: ExtendedDigest) -> str:
    return serialize_descriptor(to_descriptor(d))


def loads(text: str) -> ExtendedDigest:
    return build(parse_descriptor(text))
