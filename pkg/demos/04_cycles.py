"""
Cycles of small iterated hashes
===============================

A hash truncated to b bits has 2**b states, so iterating it must loop.
For a random map the typical scale is sqrt(pi * 2**b / 2). Here that scale
is compared with the measured tail and cycle lengths.
"""

import numpy as np

from lazydigest import HashSpec
from lazydigest.analysis import birthday_experiment, detect_cycle, expected_cycle_length

spec = HashSpec.toy(12)
report = detect_cycle(spec, start=0)
print("start 0 under toy-12:", report)

print(f"{'b':>3} {'closed form':>12} {'mean rho':>10} {'mean cycle':>11}")
for bits in (8, 10, 12, 14):
    r = birthday_experiment(bits, starts=200, tweaks=range(16))
    print(f"{bits:>3} {r.expected:12.2f} {r.mean_rho_length:10.2f} {r.mean_cycle_length:11.2f}")

# The closed form tracks the number of distinct states visited (tail + cycle).
# The loop alone is about half of that on average.

# Distribution of cycle lengths over every start of one 10-bit toy hash
spec = HashSpec.toy(10, tweak=3)
cycles = np.array([detect_cycle(spec, s).cycle_length for s in range(1 << 10)])
values, counts = np.unique(cycles, return_counts=True)
print("toy-10:3 cycle lengths and how many starts reach them:", dict(zip(values.tolist(), counts.tolist())))

print("a 256-bit state gives", expected_cycle_length(256) / 2**128, "x 2**128")
