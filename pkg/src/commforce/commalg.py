"""Commutative polynomial arithmetic over Z, F_p and Z/p^a.

Provides the pieces of commutative machinery the decision procedures
need: Cartier operators splitting a mod-p polynomial along p-th power
blocks, normal forms modulo field ideals (p, X_i^q - X_i), the
lexicographic grid scan for a nonvanishing point, and univariate
division tests modulo (p, X^p - X) and (p, (X^p - X)^2).
"""

from itertools import product
from math import gcd


def _canon(terms, modulus):
    out = {}
    for e, c in terms.items():
        if modulus is not None:
            c %= modulus
        if c:
            out[tuple(e)] = c
    return out


class CPoly:
    """Commutative polynomial in ``nvars`` variables.

    ``terms`` maps exponent tuples to nonzero coefficients; ``modulus``
    is None over Z.  Immutable.
    """

    __slots__ = ("terms", "nvars", "modulus")

    def __init__(self, terms=None, nvars=0, modulus=None):
        t = _canon(terms or {}, modulus)
        for e in t:
            if len(e) != nvars:
                raise ValueError("exponent arity %d != nvars %d" % (len(e), nvars))
        object.__setattr__(self, "terms", dict(sorted(t.items())))
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "modulus", modulus)

    def __setattr__(self, *a):
        raise AttributeError("CPoly is immutable")

    @staticmethod
    def zero(nvars=0, modulus=None):
        return CPoly({}, nvars, modulus)

    @staticmethod
    def const(c, nvars=0, modulus=None):
        return CPoly({(0,) * nvars: c}, nvars, modulus)

    @staticmethod
    def var(i, nvars, modulus=None):
        e = [0] * nvars
        e[i - 1] = 1
        return CPoly({tuple(e): 1}, nvars, modulus)

    def _check(self, other):
        if self.nvars != other.nvars or self.modulus != other.modulus:
            raise ValueError("incompatible CPoly operands")

    def __add__(self, other):
        if isinstance(other, int):
            other = CPoly.const(other, self.nvars, self.modulus)
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return CPoly(t, self.nvars, self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return CPoly({e: -c for e, c in self.terms.items()}, self.nvars, self.modulus)

    def __sub__(self, other):
        if isinstance(other, int):
            other = CPoly.const(other, self.nvars, self.modulus)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return CPoly(t, self.nvars, self.modulus)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k):
        out = CPoly.const(1, self.nvars, self.modulus)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c):
        return CPoly({e: c * v for e, v in self.terms.items()}, self.nvars, self.modulus)

    def mod(self, m):
        return CPoly(dict(self.terms), self.nvars, m)

    def lift(self):
        return CPoly(dict(self.terms), self.nvars, None)

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def content(self):
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    def eval(self, point):
        if len(point) != self.nvars:
            raise ValueError("point arity mismatch")
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                v *= x ** k
            total += v
        if self.modulus is not None:
            total %= self.modulus
        return total

    def coeff(self, e):
        return self.terms.get(tuple(e), 0)

    def __eq__(self, other):
        if not isinstance(other, CPoly):
            return NotImplemented
        return (self.nvars == other.nvars and self.modulus == other.modulus
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, self.modulus, tuple(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "CPoly(0)"
        parts = []
        for e, c in self.terms.items():
            body = "*".join("X%d^%d" % (i + 1, k) if k > 1 else "X%d" % (i + 1)
                            for i, k in enumerate(e) if k)
            parts.append("%+d%s" % (c, "*" + body if body else ""))
        return "CPoly(%s)" % " ".join(parts)


def content_gcd(P):
    """gcd of all coefficients of a CPoly or NcPoly; 0 for zero."""
    return P.content()


def cartier(P, j):
    """Cartier operator Lambda_j: coefficient of X^(j + p*k) becomes the
    coefficient of X^k.  P must be tagged mod a prime p and every entry
    of j must lie in {0,...,p-1}."""
    p = P.modulus
    if p is None:
        raise ValueError("cartier requires a mod-p polynomial")
    j = tuple(j)
    if len(j) != P.nvars:
        raise ValueError("index arity mismatch")
    if any(not (0 <= ji < p) for ji in j):
        raise ValueError("index entries must lie in 0..p-1")
    t = {}
    for e, c in P.terms.items():
        if all(ei % p == ji for ei, ji in zip(e, j)):
            t[tuple(ei // p for ei in e)] = c
    return CPoly(t, P.nvars, p)


def frobenius_scale(P, times=1):
    """Raise every exponent by the factor p^times (the inverse
    direction of cartier on exponents)."""
    p = P.modulus
    q = p ** times
    return CPoly({tuple(ei * q for ei in e): c for e, c in P.terms.items()}, P.nvars, p)


def cartier_reconstruct(P):
    """Rebuild P as sum_j X^j * Lambda_j(P)^(p) -- exact for mod-p P."""
    p = P.modulus
    out = CPoly.zero(P.nvars, p)
    for j in product(range(p), repeat=P.nvars):
        mono = CPoly({tuple(j): 1}, P.nvars, p)
        out = out + mono * frobenius_scale(cartier(P, j))
    return out


def field_ideal_normal_form(P, p, n):
    """Canonical representative of P modulo (p, X_i^(p^n) - X_i).

    Reduces coefficients mod p and exponents e >= 1 into {1,...,p^n-1}
    by e -> ((e-1) mod (p^n - 1)) + 1.  The result is zero exactly when
    P is an identity for the field with p^n elements.
    """
    q = p ** n
    t = {}
    for e, c in P.terms.items():
        c %= p
        if not c:
            continue
        ne = tuple(((ei - 1) % (q - 1)) + 1 if ei >= 1 else 0 for ei in e)
        t[ne] = (t.get(ne, 0) + c) % p
    return CPoly(t, P.nvars, p)


def find_nonvanishing_point(P, bound=None):
    """First point of the grid {0,...,D}^s (lexicographic order) where
    the integer polynomial P is nonzero, with its value; None iff P = 0.
    D defaults to the total degree of P, which suffices."""
    if P.is_zero():
        return None
    D = bound if bound is not None else max(P.degree(), 0)
    for point in product(range(D + 1), repeat=P.nvars):
        v = P.eval(point)
        if v:
            return point, v
    return None


def univariate_divrem(P, M, p):
    """Division with remainder in F_p[X]: P = Q*M + R, deg R < deg M.
    P, M are univariate CPoly; M must have an invertible leading
    coefficient mod p.  Returns (Q, R) mod p."""
    if P.nvars != 1 or M.nvars != 1:
        raise ValueError("univariate polynomials required")
    rem = {e[0]: c % p for e, c in P.terms.items() if c % p}
    md = max(e[0] for e in M.terms if M.terms[e] % p)
    mlead = M.terms[(md,)] % p
    minv = pow(mlead, -1, p)
    mco = {e[0]: c % p for e, c in M.terms.items() if c % p}
    quo = {}
    while rem:
        d = max(rem)
        if d < md:
            break
        f = (rem[d] * minv) % p
        quo[d - md] = (quo.get(d - md, 0) + f) % p
        for me, mc in mco.items():
            k = d - md + me
            v = (rem.get(k, 0) - f * mc) % p
            if v:
                rem[k] = v
            elif k in rem:
                del rem[k]
    Q = CPoly({(e,): c for e, c in quo.items()}, 1, p)
    R = CPoly({(e,): c for e, c in rem.items()}, 1, p)
    return Q, R


def univ(coeffs, modulus=None):
    """Univariate CPoly from {degree: coefficient}."""
    return CPoly({(d,): c for d, c in coeffs.items()}, 1, modulus)


def univariate_membership(P, kind, p):
    """Membership of a univariate integer polynomial in (p, X^p - X)
    (kind='lin') or (p, (X^p - X)^2) (kind='sq')."""
    if P.nvars != 1:
        raise ValueError("univariate polynomial required")
    base = univ({p: 1, 1: -1})
    M = base if kind == "lin" else base * base
    _, R = univariate_divrem(P, M, p)
    return R.is_zero()


def trial_factor(N, step_budget=10 ** 7):
    """Factor |N| by trial division; returns sorted [(p, multiplicity)].
    Raises OverflowError when more than step_budget candidate divisors
    would be needed."""
    N = abs(N)
    if N in (0, 1):
        return []
    out = []
    d = 2
    steps = 0
    while d * d <= N:
        steps += 1
        if steps > step_budget:
            raise OverflowError("factoring budget exceeded")
        if N % d == 0:
            a = 0
            while N % d == 0:
                N //= d
                a += 1
            out.append((d, a))
        d += 1 if d == 2 else 2
    if N > 1:
        out.append((N, 1))
    return sorted(out)
