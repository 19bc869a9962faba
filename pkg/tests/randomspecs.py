"""Random constructions and combinator trees for property-style tests."""

import random

from lazydigest import algebra
from lazydigest.constructions import (
    CompositeDigest,
    HierarchicalDigest,
    LazyDigest,
    RekeyingDigest,
    SpongeDigest,
    XorMultiDigest,
)
from lazydigest.hash_backend import BLAKE2B, SHA3_256, SHA256, SHA512, HashSpec

REAL_HASHES = [SHA256, SHA512, SHA3_256, BLAKE2B]
KIND_NAMES = ["lazy", "hierarchical", "rekey", "sponge", "xor-multi", "composite"]


def _seed(rng):
    return rng.randbytes(rng.choice([1, 8, 16, 32, 32, 32]))


def _hash(rng):
    if rng.random() < 0.15:
        return HashSpec.toy(rng.randint(4, 24), rng.choice([None, rng.randrange(256)]))
    return rng.choice(REAL_HASHES)


def _hier(rng):
    chunk = rng.choice([1, 2, 16, 1000, 2**20])
    epoch = chunk * rng.choice([2, 3, 64, 2**20])
    return HierarchicalDigest(_seed(rng), _hash(rng), epoch, chunk)


def _rekey(rng):
    return RekeyingDigest(_seed(rng), _hash(rng), rng.choice([1, 5, 256, 10**6, 2**32]))


def _sponge(rng):
    # 21 bytes of rate absorb any index below 2**64.
    return SpongeDigest(_seed(rng), rng.choice([8, 64, 256, 512]), rng.choice([168, 256, 512]), _hash(rng))


def _xor_multi(rng):
    return XorMultiDigest(_seed(rng), tuple(rng.sample(REAL_HASHES, rng.randint(2, 4))))


def random_construction(rng, kind=None):
    kind = kind or rng.choice(KIND_NAMES)
    if kind == "lazy":
        return LazyDigest(_seed(rng), _hash(rng))
    if kind == "hierarchical":
        return _hier(rng)
    if kind == "rekey":
        return _rekey(rng)
    if kind == "sponge":
        return _sponge(rng)
    if kind == "xor-multi":
        return _xor_multi(rng)
    if kind == "composite":
        return CompositeDigest(_xor_multi(rng), _rekey(rng), _hier(rng), _sponge(rng))
    raise ValueError(kind)


def random_tree(rng, depth=3):
    """A construction, possibly wrapped in xor/slice/transform combinators."""
    if depth == 0 or rng.random() < 0.4:
        return random_construction(rng)
    op = rng.choice(["xor", "slice", "transform"])
    if op == "xor":
        return algebra.xor(random_tree(rng, depth - 1), random_tree(rng, depth - 1))
    if op == "slice":
        return algebra.slice(random_tree(rng, depth - 1), rng.randrange(10**4), rng.randint(1, 50))
    f = rng.choice([algebra.NOT, algebra.IDENTITY, algebra.add(rng.randrange(256))])
    return algebra.transform(random_tree(rng, depth - 1), f)


def rng_for(seed):
    return random.Random(seed)
