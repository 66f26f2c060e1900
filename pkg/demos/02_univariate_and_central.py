"""
Single-variable identities and central elements
===============================================

X^n = X always forces commutativity.  Identities with a repeated root
pattern, like (X^2 - X)^2 = 0, do not: triangular matrices survive.
The same machinery handles "Q(X) commutes with everything" identities.
"""

from commforce import NcPoly, central_decide, herstein_pair, \
    univariate_decide

X = NcPoly.var(1)

for n in range(2, 7):
    print("X^%d - X:" % n,
          "forces" if univariate_decide(X ** n - X) is None else "witness")

P = X ** 4 - (X ** 3).scale(2) + X ** 2   # (X^2 - X)^2
hit = univariate_decide(P)
print("(X^2 - X)^2 = 0 has a model:", hit[1].family)

# [X^a - X^b, Y] = 0 admits a closed form; compare it with the decision
for a, b in [(3, 1), (4, 2), (5, 2), (6, 3), (7, 4)]:
    closed = herstein_pair(a, b)
    decided = central_decide(X ** a - X ** b) is None
    assert closed == decided
    print("[X^%d - X^%d, Y] = 0 forces: %s" % (a, b, closed))
