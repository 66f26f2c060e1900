"""
Deciding whether an identity forces commutativity
=================================================

Two quartic-to-sextic identities with opposite fates: the first rules
out every noncommutative model, the second is satisfied by upper
triangular 2x2 matrices mod 2.
"""

from commforce import IdentitySet, NcPoly, candidate_primes, decide_all

X = NcPoly.var(1)
Y = NcPoly.var(2)

forcing = X ** 2 * Y ** 2 + X ** 4 * Y ** 2 + X * Y * X * Y
satisfiable = (X ** 2 * Y * X * Y - X ** 2 * Y ** 2 * X
               - X * Y * X ** 2 * Y + X * Y ** 2 * X ** 2
               + Y * X ** 2 * Y * X - Y * X * Y * X ** 2)

for P in (forcing, satisfiable):
    ids = IdentitySet(2, (P,))
    # scalar substitutions constrain the possible characteristics first
    print("candidate primes:", candidate_primes(ids))
    v = decide_all(ids)
    print("verdict:", v.kind)
    if v.kind == "witness":
        print("  model:", v.family, "with", v.witness.size, "elements")
        a, b = v.pair
        print("  noncommuting pair:", v.witness.describe(a),
              "/", v.witness.describe(b))
    print()
