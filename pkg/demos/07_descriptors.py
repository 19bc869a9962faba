"""
Writing streams down
====================

A descriptor is a short line of text that rebuilds a stream exactly. It
does not grow however much of the stream is used.
"""

from lazydigest import algebra, descriptor
from lazydigest import LazyDigest, RekeyingDigest

text = "xor(lazy{seed=00ff},slice(rekey{seed=01,interval=16},start=5,step=3))"
desc = descriptor.parse_descriptor(text)
print("canonical:", descriptor.serialize_descriptor(desc))

stream = descriptor.build(desc)
by_hand = algebra.xor(LazyDigest(b"\x00\xff"), algebra.slice(RekeyingDigest(b"\x01", rekey_interval=16), 5, 3))
print("same bytes as the hand-built stream:", stream.read(0, 100) == by_hand.read(0, 100))

# Errors point at the offending character.
try:
    descriptor.parse_descriptor("lazy{seed=GG}")
except descriptor.DescriptorError as exc:
    print("error:", exc)

# The command line takes the same text:
#   python -m lazydigest gen -d "lazy{seed=00ff}" -n 16
#   python -m lazydigest gen -d "lazy{seed=00ff}" -n 1000000 --format raw > stream.bin
