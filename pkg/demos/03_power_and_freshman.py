"""
(XY)^n = X^n Y^n and the freshman dream
=======================================
"""

from commforce import freshman_decide, power_identity_decide

# (XY)^2 = X^2 Y^2 forces commutativity, but from n = 3 on a prime
# dividing n(n-1)/2 leaves room for a truncated free algebra model
for ns in [{2}, {3}, {4}, {3, 5}]:
    hit = power_identity_decide(ns)
    print("power identity for n in", sorted(ns), "->",
          "forces" if hit is None else "model at p = %d" % hit[0])

# (X+Y)^n = X^n + Y^n needs every n to be a power of one prime,
# and n >= 4 when that prime is 2
for ns in [{2}, {4, 8}, {6}]:
    hit = freshman_decide(ns)
    print("freshman identity for n in", sorted(ns), "->",
          "forces" if hit is None else "model at p = %d" % hit[0])
