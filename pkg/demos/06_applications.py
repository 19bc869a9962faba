"""
Test data, key derivation, proof of work
========================================
"""

import time

from lazydigest.applications import find_pow, memory_hard_kdf, test_stream, verify_pow

# Each test id owns an infinite stream that is the same everywhere.
data = test_stream("unit_test_1").truncate(1024)
print("test data for unit_test_1:", data[:16].hex(), "...", len(data), "bytes")

# Key derivation: cost is the number of data-dependent stream reads.
for cost in (1_000, 10_000, 100_000):
    t0 = time.perf_counter()
    key = memory_hard_kdf(b"correct horse", b"battery staple", cost)
    print(f"kdf cost={cost:>6}: {key.hex()[:16]}... in {time.perf_counter() - t0:.3f}s")

# Proof of work: the expected number of attempts doubles with each bit of difficulty.
header = b"block 42"
for difficulty in (4, 8, 12, 16):
    result = find_pow(header, difficulty)
    assert verify_pow(header, result.nonce, difficulty)
    print(f"difficulty {difficulty:>2}: nonce {result.nonce:>6} after {result.attempts:>6} attempts")
