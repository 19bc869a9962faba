"""
lazydigest: finite seeds that behave like infinite random byte streams.

>>> from lazydigest import LazyDigest
>>> d = LazyDigest(bytes(32))
>>> d[0] == d[0]
True
>>> len(d.truncate(16))
16
"""

from . import algebra, analysis, applications, descriptor
from .constructions import (
    CompositeDigest,
    HierarchicalDigest,
    LazyDigest,
    RekeyingDigest,
    SpongeDigest,
    XorMultiDigest,
)
from .descriptor import ConstructionDescriptor, dumps, loads, parse_descriptor, serialize_descriptor
from .digest_core import ConstantDigest, CounterDigest, Digest, ExtendedDigest, OracleDigest
from .errors import (
    ConfigurationError,
    DomainError,
    EntropyError,
    LazyDigestError,
    NotSerializableError,
    ResourceExhaustedError,
    SpecError,
)
from .hash_backend import BLAKE2B, SHA3_256, SHA256, SHA512, HashSpec, count_calls, hash_message, toy_iterate

__version__ = "0.1.0"

__all__ = [
    "algebra",
    "analysis",
    "applications",
    "descriptor",
    "Digest",
    "ExtendedDigest",
    "OracleDigest",
    "ConstantDigest",
    "CounterDigest",
    "LazyDigest",
    "HierarchicalDigest",
    "RekeyingDigest",
    "SpongeDigest",
    "XorMultiDigest",
    "CompositeDigest",
    "ConstructionDescriptor",
    "parse_descriptor",
    "serialize_descriptor",
    "dumps",
    "loads",
    "HashSpec",
    "SHA256",
    "SHA512",
    "SHA3_256",
    "BLAKE2B",
    "hash_message",
    "toy_iterate",
    "count_calls",
    "LazyDigestError",
    "ConfigurationError",
    "DomainError",
    "SpecError",
    "ResourceExhaustedError",
    "EntropyError",
    "NotSerializableError",
]
