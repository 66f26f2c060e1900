"""
Witnesses given by a presentation
=================================

Some models are too structured to appear in any fixed table of small
rings.  (x^2 + x)^2 = 0 is satisfied by a noncommutative quotient of
the free algebra over Z/4; the decision procedure returns its
completed rewriting basis instead of a multiplication table, and the
witness can be re-checked from that basis alone.
"""

from commforce import (IdentitySet, NcPoly, commutator, decide_Ap,
                       presented_scan_check)

X = NcPoly.var(1)

ids = IdentitySet(1, (X ** 4 + (X ** 3).scale(2) + X ** 2,))
p, witness = decide_Ap(ids)
print("prime:", p)
print("presentation over Z/%d:" % (p ** witness.family.a))
for g in witness.family.generators:
    print("   ", g)

# the commutator survives reduction, so the quotient is noncommutative
assert not witness.normal_form(commutator(NcPoly.var(1),
                                          NcPoly.var(2))).is_zero()

# and every specialization over short normal words kills the identity
ok = presented_scan_check(ids, witness.basis, witness.scan_length)
print("independent re-check:", "confirmed" if ok else "rejected")
