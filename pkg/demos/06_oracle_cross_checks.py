"""
Cross-checking verdicts against brute force
===========================================

witness_search shares no code with the decision pipeline: it just
walks a bounded list of small rings and tests every identity
exhaustively.  cross_validate compares the two.
"""

from commforce import (IdentitySet, NcPoly, SearchBounds, cross_validate,
                       decide_all, random_identities, witness_search)

X = NcPoly.var(1)
Y = NcPoly.var(2)

bounds = SearchBounds(max_p=3, max_n=2, max_trunc_k=3, eval_cap=10 ** 6)

quartic = IdentitySet(2, (X ** 2 * Y ** 2 + X ** 4 * Y ** 2
                          + X * Y * X * Y,))
res = witness_search(quartic, bounds)
print("search over small rings:", res.family, "skipped:", res.skipped)

for seed in range(5):
    ids = random_identities(seed)
    rep = cross_validate(ids, decide_all(ids), bounds)
    print("seed %d: verdict %-7s agree=%s" % (seed, rep.verdict_kind,
                                              rep.agree))
