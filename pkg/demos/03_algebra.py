"""
Algebra on infinite streams
===========================

xor, slice and transform build new streams without computing anything.
truncate, sample and fold read a finite part.
"""

from lazydigest import LazyDigest, algebra

a = LazyDigest(b"stream a")
b = LazyDigest(b"stream b")

mixed = a.xor(b)
every_third = mixed.slice(start=5, step=3)
inverted = every_third.transform(algebra.NOT)

# Nothing has been evaluated yet; this reads exactly 8 positions of a and b.
print("first 8 bytes:", inverted.truncate(8).hex())
print("inverted[2] == 255 - mixed[11]:", inverted[2] == 255 - mixed[11])

# x ^ x = 0 at every index
print("a xor a is zero:", a.xor(a).truncate(32) == bytes(32))

# Projections to finite values
print("sample at 0, 10**12, 0:", list(a.sample([0, 10**12, 0])))
print("sum of the first 1000 bytes:", a.fold(lambda acc, v: acc + v, 0, 1000), "(uniform bytes: 127500 +- 2340)")

# Any named transform stays describable; arbitrary functions do not.
print(algebra.transform(a, algebra.add(7)).truncate(4).hex())
