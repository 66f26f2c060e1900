"""Closed-form decisions for special identity shapes.

Univariate identities, central univariate identities [Q(X),Y] = 0,
power identities (XY)^n = X^n Y^n, freshman identities
(X+Y)^n = X^n + Y^n and sets of homogeneous multilinear identities all
admit complete arithmetic criteria.  This module implements them,
always returning a verified finite witness or None (meaning the shape
forces commutativity), together with a certification routine for
identities of the four-dimensional minimal witness ring.
"""

from dataclasses import dataclass
from itertools import product
from math import comb, gcd

from .commalg import (CPoly, field_ideal_normal_form, trial_factor, univ,
                      univariate_membership)
from .finitering import MinRing, TruncFree, Up, make_ring
from .freealg import NcPoly, abelianize, from_cpoly, reduce_Ap


def _primes_upto(n):
    out = []
    for m in range(2, n + 1):
        if all(m % q for q in out):
            out.append(m)
    return out


# ---------------------------------------------------------------------------
# multilinear identities

@dataclass(frozen=True)
class MultilinearProfile:
    arity: int
    total: int
    theta: dict


def is_multilinear(P):
    """True when every word of P is a permutation of X_1..X_m."""
    vs = P.variables()
    if not vs:
        return False
    m = max(vs)
    if vs != list(range(1, m + 1)):
        return False
    target = tuple(range(1, m + 1))
    return all(len(w) == m and tuple(sorted(w)) == target for w in P.terms)


def theta_profile(P):
    """Sum of coefficients plus, for each pair i < j, the sum over
    words placing X_i before X_j."""
    if not is_multilinear(P):
        raise ValueError("not a homogeneous multilinear polynomial")
    m = max(P.variables())
    total = sum(P.terms.values())
    theta = {}
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            theta[(i, j)] = sum(c for w, c in P.terms.items()
                                if w.index(i) < w.index(j))
    return MultilinearProfile(m, total, theta)


def multilinear_decide(polys):
    """(p, ring) with the identities verified on the minimal witness
    ring, or None when the multilinear set forces commutativity."""
    profiles = [theta_profile(P) for P in polys]
    g = 0
    for pr in profiles:
        g = gcd(g, pr.total)
        for v in pr.theta.values():
            g = gcd(g, v)
    if g == 1:
        return None
    p = 2 if g == 0 else trial_factor(g)[0][0]
    ring = make_ring(MinRing(p))
    basis = [ring.basis_element(i) for i in range(ring.dim)]
    for P, pr in zip(polys, profiles):
        # multilinearity lets basis tuples certify all tuples
        for tup in product(basis, repeat=pr.arity):
            if any(ring.eval(P, tup)):
                return None
    return (p, ring)


# ---------------------------------------------------------------------------
# univariate and central identities

def univariate_decide(P):
    """Witness (p, Up(p) ring) for a single univariate identity, or
    None: every ring satisfying P(X) = 0 is then commutative."""
    vs = P.variables()
    if any(v != 1 for v in vs):
        raise ValueError("univariate polynomial required")
    Q = abelianize(P, 1)
    if Q.is_zero():
        ring = make_ring(Up(2))
        return (2, ring)
    N = 0
    for i in range(Q.degree() + 1):
        N = Q.eval((i,))
        if N:
            break
    for p, _ in trial_factor(N):
        if univariate_membership(Q, "sq", p):
            ring = make_ring(Up(p))
            if ring.is_identity(P) is True:
                return (p, ring)
    return None


def _central_verify(ring, Q):
    """Exhaustively check that Q(x) is central for every ring element,
    batching over the whole ring at once."""
    import numpy as np
    col = np.array([ring.element_from_index(i) for i in range(ring.size)],
                   dtype=np.int64)
    vals = ring.eval_batch(Q, [col])
    T = ring.table
    left = np.einsum("nj,ijk->nik", vals, T) % ring.char
    right = np.einsum("nj,jik->nik", vals, T) % ring.char
    return np.array_equal(left, right)


def central_decide(Q):
    """Witness (p, ring) for the identity [Q(X), Y] = 0, with the
    truncated free algebra F_p{u,v}/(u,v)^3, or None."""
    vs = Q.variables()
    if any(v != 1 for v in vs):
        raise ValueError("univariate polynomial required")
    Qc = abelianize(Q, 1)
    dQ = univ({e[0] - 1: e[0] * c for e, c in Qc.terms.items() if e[0] >= 1})
    if dQ.is_zero():
        cands = [2]
    else:
        N = 0
        for i in range(dQ.degree() + 1):
            N = dQ.eval((i,))
            if N:
                break
        cands = [p for p, _ in trial_factor(N)]
    for p in cands:
        if dQ.is_zero() or univariate_membership(dQ, "lin", p):
            ring = make_ring(TruncFree(p, 3))
            if _central_verify(ring, Q):
                return (p, ring)
    return None


def herstein_pair(a, b):
    """True when X^a - X^b (a > b >= 1) forces commutativity: either
    b = 1, or gcd(a, b) = 1 with a, b of opposite parity."""
    if not (a > b >= 1):
        raise ValueError("need a > b >= 1")
    return b == 1 or (gcd(a, b) == 1 and (a - b) % 2 == 1)


# ---------------------------------------------------------------------------
# power and freshman identities

def power_identity_decide(exponents):
    """Witness for the identities (XY)^n = X^n Y^n, n over the given
    set, or None.  A witness exists iff one prime divides every C(n,2)."""
    S = sorted(set(exponents))
    if not S or min(S) < 2:
        raise ValueError("exponents must be >= 2")
    g = 0
    for n in S:
        g = gcd(g, comb(n, 2))
    if g == 1:
        return None
    p = trial_factor(g)[0][0]
    X = NcPoly.var(1)
    Y = NcPoly.var(2)
    n0 = S[0]
    ident = (X * Y) ** n0 - X ** n0 * Y ** n0
    ring = make_ring(TruncFree(p, 3))
    if ring.is_identity(ident) is True:
        return (p, ring)
    return None


def freshman_decide(exponents):
    """Witness for (X+Y)^n = X^n + Y^n, n over the given set, or None.
    Requires every n to be a power of one prime p, all >= 4 when p = 2."""
    S = sorted(set(exponents))
    if not S or min(S) < 2:
        raise ValueError("exponents must be >= 2")

    def admissible(p):
        for n in S:
            k = 0
            m = n
            while m % p == 0:
                m //= p
                k += 1
            if m != 1 or k < 1:
                return False
            if p == 2 and n < 4:
                return False
        return True

    for p in _primes_upto(max(S)):
        if not admissible(p):
            continue
        X = NcPoly.var(1)
        Y = NcPoly.var(2)
        ring = make_ring(TruncFree(p, 3))
        if all(ring.is_identity((X + Y) ** n - X ** n - Y ** n) is True
               for n in S):
            return (p, ring)
    return None


# ---------------------------------------------------------------------------
# certification on the minimal witness ring

@dataclass
class MinRingCertificate:
    """Constructive decomposition of P mod p into generators of the
    identity ideal of the minimal witness ring."""
    p: int
    qhat: dict    # (i, j), i <= j -> CPoly mod p
    dcoef: dict   # (i, j), i < j  -> CPoly mod p


@dataclass
class NotIdentityReport:
    p: int
    stage: str          # scalar | field-linear | commutator | field-square
    point: tuple        # scalar parameters of the failing substitution
    arguments: tuple    # ring element tuple
    value: tuple        # nonzero evaluation of P there


def _peel(Q, i, p):
    """Q = (X_i^p - X_i) * A + R over F_p with deg_{X_i} R < p."""
    work = {e: c % p for e, c in Q.terms.items() if c % p}
    quo = {}
    rem = {}
    while work:
        e = max(work, key=lambda e: (e[i - 1], e))
        c = work.pop(e)
        if e[i - 1] < p:
            rem[e] = c
            continue
        qe = list(e)
        qe[i - 1] -= p
        qe = tuple(qe)
        quo[qe] = (quo.get(qe, 0) + c) % p
        le = list(e)
        le[i - 1] -= p - 1
        le = tuple(le)
        v = (work.get(le, 0) + c) % p
        if v:
            work[le] = v
        elif le in work:
            del work[le]
    s = Q.nvars
    return CPoly(quo, s, p), CPoly(rem, s, p)


def _nonzero_point(G, p):
    """A point of F_p^s where the reduced polynomial G is nonzero."""
    for point in product(range(p), repeat=G.nvars):
        if G.eval(point) % p:
            return point
    raise AssertionError("reduced nonzero polynomial with no nonzero point")


def min_ring_certify(P, p):
    """Certify P = 0 as an identity of the minimal witness ring at p,
    or report a counterexample substitution.

    Peels the commutative image along the field ideal twice, reduces
    the remaining commutator part, and checks each extracted
    coefficient; every failure converts into an explicit nonvanishing
    ring substitution.
    """
    vs = P.variables()
    s = max(vs) if vs else 1
    ring = make_ring(MinRing(p))
    u = ring.basis_element(1)
    v = ring.basis_element(2)
    vu = ring.basis_element(3)

    def args(lam, extra):
        out = [ring.scalar(c) for c in lam]
        for idx, elem in extra.items():
            out[idx - 1] = ring.add(out[idx - 1], elem)
        return tuple(out)

    def report(stage, lam, extra):
        tup = args(lam, extra)
        return NotIdentityReport(p, stage, lam, tup, ring.eval(P, tup))

    Q = abelianize(P, s).mod(p)
    first = {}
    R = Q
    for i in range(1, s + 1):
        first[i], R = _peel(R, i, p)
    if not R.is_zero():
        return report("scalar", _nonzero_point(R, p), {})
    qhat = {}
    for i in range(1, s + 1):
        Ri = first[i]
        for k in range(1, s + 1):
            Bik, Ri = _peel(Ri, k, p)
            key = (min(i, k), max(i, k))
            qhat[key] = qhat.get(key, CPoly.zero(s, p)) + Bik
        if not Ri.is_zero():
            return report("field-linear", _nonzero_point(Ri, p), {i: vu})
    sub = NcPoly.zero(p)
    for (i, k), qh in sorted(qhat.items()):
        fi = CPoly.var(i, s, p) ** p - CPoly.var(i, s, p)
        fk = CPoly.var(k, s, p) ** p - CPoly.var(k, s, p)
        sub = sub + from_cpoly(fi * fk * qh)
    P1 = P.mod(p) - sub
    form = reduce_Ap(P1)
    dcoef = {}
    for (i, k), Acoef in sorted(form.A.items()):
        Dc = abelianize(Acoef, s).mod(p)
        dcoef[(i, k)] = Dc
        nfD = field_ideal_normal_form(Dc, p, 1)
        if not nfD.is_zero():
            lam = _nonzero_point(nfD, p)
            return report("commutator", lam, {i: u, k: v})
    for (i, k), qh in sorted(qhat.items()):
        nfq = field_ideal_normal_form(qh, p, 1)
        if not nfq.is_zero():
            lam = _nonzero_point(nfq, p)
            extra = {i: ring.add(u, v)} if i == k else {i: v, k: u}
            return report("field-square", lam, extra)
    return MinRingCertificate(p, qhat, dcoef)
