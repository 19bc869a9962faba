"""
An oracle that remembers, and a stream that recomputes
======================================================

OracleDigest hands out fresh random bytes and has to remember every one.
LazyDigest hands out bytes that are recomputed from a 32-byte seed.
"""

import pickle

from lazydigest import LazyDigest, NotSerializableError, OracleDigest, ResourceExhaustedError, dumps, loads

# The oracle is consistent, but its cache grows with every new index.
oracle = OracleDigest(cache_limit=10_000)
for i in range(5000):
    oracle[i]
print("oracle cache entries after 5000 queries:", oracle.memory_usage())

# Asking about too many indices runs into the limit.
try:
    for i in range(5000, 20_000):
        oracle[i]
except ResourceExhaustedError as exc:
    print("oracle gave up:", exc)

# There is nothing finite to save...
try:
    pickle.dumps(oracle)
except NotSerializableError as exc:
    print("cannot save the oracle:", exc)

# ...and a second oracle disagrees almost everywhere.
other = OracleDigest()
agree = sum(OracleDigest()[i] == other[i] for i in range(2000))
print("two oracles agree on", agree, "of 2000 indices (about 8 expected)")

# The lazy stream answers any index with nothing stored.
lazy = LazyDigest(bytes(32))
print("byte 10**18 of the lazy stream:", lazy[10**18])

# Its whole description fits on one line, and it rebuilds anywhere.
text = dumps(lazy)
print("descriptor:", text, f"({len(text)} characters)")
print("rebuilt stream agrees:", loads(text).read(10**18, 8) == lazy.read(10**18, 8))
