"""
A small statistical battery
===========================

Monobit, byte chi-square and lag-1 serial correlation. Every construction
should pass. A constant stream and a counter should not.
"""

from lazydigest import CompositeDigest, ConstantDigest, CounterDigest, LazyDigest, SpongeDigest
from lazydigest.analysis import run_battery

n = 200_000
streams = {
    "lazy": LazyDigest(bytes(32)),
    "sponge": SpongeDigest(bytes(32)),
    "composite": CompositeDigest.from_seed(bytes(32)),
    "constant": ConstantDigest(0),
    "counter": CounterDigest(),
}
for name, stream in streams.items():
    print(name)
    for report in run_battery(stream, n):
        print("   ", report)
