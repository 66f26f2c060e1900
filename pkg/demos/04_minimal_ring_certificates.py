"""
Certificates on the minimal noncommutative ring
===============================================

For each prime p there is a smallest noncommutative ring whose
identities are exactly the ones every noncommutative model must break.
min_ring_certify either decomposes a polynomial into generators of
that identity ideal or hands back an explicit failing substitution.
"""

from commforce import (MinRing, NcPoly, commutator, make_ring,
                       min_ring_certify)
from commforce.theorems import MinRingCertificate

X = NcPoly.var(1)
Y = NcPoly.var(2)

p = 3
ring = make_ring(MinRing(p))
print("minimal ring at p = %d has %d elements" % (p, ring.size))

for P in [commutator(X, Y) * commutator(X, Y),
          X.scale(p),
          commutator(X, Y),
          (X ** p - X) * (Y ** p - Y)]:
    out = min_ring_certify(P, p)
    if isinstance(out, MinRingCertificate):
        print("identity holds, certified")
    else:
        # the report carries a concrete substitution and its value
        print("fails at stage %r with arguments %s, value %s"
              % (out.stage, out.arguments, out.value))
        assert any(ring.eval(P, out.arguments))
