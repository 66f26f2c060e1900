"""Decision procedures for commutativity-forcing identity sets.

A finite set of identities in Z{X_1,...,X_s} either forces every ring
satisfying it to be commutative or admits a finite noncommutative
model.  A model, when one exists, can always be found among three
families: upper triangular 2x2 matrices over F_p, the twisted rings
B(p,n,l) over F_{p^n}, and local rings with central commutators and
prime-power characteristic.  Each family has its own procedure here;
the orchestrator runs them in a fixed order and reports a verified
witness, a Forces certificate, or a resource limit.
"""

from dataclasses import dataclass, field
from itertools import product
from math import gcd, isqrt

from .commalg import (CPoly, field_ideal_normal_form, find_nonvanishing_point,
                      frobenius_scale, trial_factor, univ)
from .errors import ResourceLimitError
from .finitering import B, Mat, Presented, TruncFree, Up, make_ring
from .freealg import (NcPoly, abelianize, bar_transversal, format_ncpoly,
                      reduce_Ap, reduce_caseI, deglex_key)
from .gsb import CompletionLimits, complete, _occurrences


# ---------------------------------------------------------------------------
# inputs and outputs

@dataclass(frozen=True)
class IdentitySet:
    """A finite list of integer identities in s noncommuting variables."""
    nvars: int
    polys: tuple

    def __post_init__(self):
        if self.nvars < 1:
            raise ValueError("at least one variable required")
        object.__setattr__(self, "polys", tuple(self.polys))
        for P in self.polys:
            vs = P.variables()
            if vs and max(vs) > self.nvars:
                raise ValueError("identity uses variable X_%d > declared %d"
                                 % (max(vs), self.nvars))


@dataclass(frozen=True)
class PrimeConstraint:
    """Either no restriction, or a finite list of (p, max exponent)."""
    all_primes: bool
    primes: tuple = ()


@dataclass(frozen=True)
class Lemma33Instance:
    """Sum of (X_alpha^(p^k) - X_alpha) * A^(p^k) * B summands.

    ``summands`` is a tuple of (alpha, A, B) with A, B integer CPoly in
    ``nvars`` variables; kappa bounds all A and B degrees.
    """
    summands: tuple
    nvars: int
    kappa: int


@dataclass
class PresentedWitness:
    """A noncommutative quotient certified by its completed basis.
    ``scan_length`` records the word-length bound of the accepted
    specialization scan so the witness can be re-checked later."""
    family: object
    basis: object
    scan_length: int = 0

    def normal_form(self, P):
        return self.basis.normal_form(P)


@dataclass
class Verdict:
    kind: str                 # "forces" | "witness" | "limit"
    prime: int = None
    family: object = None
    witness: object = None    # TabledRing or PresentedWitness
    params: tuple = ()
    pair: tuple = None        # noncommuting element pair, when tabled
    stage: str = None
    limit: object = None
    detail: str = ""


@dataclass
class DecideOptions:
    eval_cap: int = 10 ** 7
    gsb_limits: CompletionLimits = field(default_factory=CompletionLimits)
    max_specializations: int = 200000
    max_normal_words: int = 5000
    fast_paths: bool = True


def _primes_upto(n):
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i in range(2, n + 1) if sieve[i]]


def _vp(c, p):
    e = 0
    c = abs(c)
    while c and c % p == 0:
        c //= p
        e += 1
    return e


# ---------------------------------------------------------------------------
# characteristic constraints

def candidate_primes(ids):
    """Constrain the characteristic of any model.

    A nonzero commutative image must vanish at every scalar point of a
    model, so its first nonzero value on the integer grid bounds the
    characteristic.
    """
    for P in ids.polys:
        img = abelianize(P, ids.nvars)
        if img.is_zero():
            continue
        point, value = find_nonvanishing_point(img)
        try:
            fac = trial_factor(value)
        except OverflowError:
            raise ResourceLimitError("candidate-primes", abs(value),
                                     "factoring grid value")
        return PrimeConstraint(False, tuple(fac))
    return PrimeConstraint(True)


# ---------------------------------------------------------------------------
# upper triangular matrices

_UPPER_MATS = [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]


def _upper_mul(m1, m2):
    a1, b1, d1 = m1
    a2, b2, d2 = m2
    return (a1 * a2, a1 * b2 + b1 * d2, d1 * d2)


def _upper_eval(P, tup):
    acc = (0, 0, 0)
    for w, c in P.terms.items():
        v = (1, 0, 1)
        for letter in w:
            v = _upper_mul(v, tup[letter - 1])
        acc = (acc[0] + c * v[0], acc[1] + c * v[1], acc[2] + c * v[2])
    return acc


def decide_Up(ids, options=None):
    """Witness among upper triangular 2x2 matrix rings, or None.

    The identities are evaluated at every tuple from the eight {0,1}
    upper triangular integer matrices; the gcd of the nonzero entries
    pins down the usable primes.
    """
    options = options or DecideOptions()
    if 8 ** ids.nvars > options.eval_cap:
        raise ResourceLimitError("upper-matrix-scan", options.eval_cap,
                                 "8^%d integer tuples" % ids.nvars)
    g = 0
    for P in ids.polys:
        for tup in product(_UPPER_MATS, repeat=ids.nvars):
            for entry in _upper_eval(P, tup):
                g = gcd(g, entry)
    if g == 0:
        ring = make_ring(Up(2))
        if all(ring.is_identity(P, eval_cap=options.eval_cap) is True
               for P in ids.polys):
            return (2, ring)
        return None
    if g == 1:
        return None
    for p, _ in trial_factor(g):
        ring = make_ring(Up(p))
        if all(ring.is_identity(P, eval_cap=options.eval_cap) is True
               for P in ids.polys):
            return (p, ring)
    return None


# ---------------------------------------------------------------------------
# the twisted-sum membership test

def _instance_conditions(summands, s):
    """Coefficient condition polynomials, one per exponent index.

    For the sum S = sum (X_a^(p^k) - X_a) A^(p^k) B with p^k beyond
    every degree in sight, S vanishes identically mod p exactly when
    each condition polynomial does; the indices track the coefficient
    expansion of the unpowered factors.
    """
    conds = {}
    zero = CPoly.zero(s)
    for alpha, A, Bm in summands:
        Xa = CPoly.var(alpha, s)
        XA = Xa * A
        for e, c in Bm.terms.items():
            conds[e] = conds.get(e, zero) + XA.scale(c)
        XB = Xa * Bm
        for e, c in XB.terms.items():
            conds[e] = conds.get(e, zero) - A.scale(c)
    return conds


def _instance_gcd(summands, s):
    g = 0
    for T in _instance_conditions(summands, s).values():
        g = gcd(g, T.content())
    return g


def _instance_value(summands, s, p, k):
    total = CPoly.zero(s, p)
    for alpha, A, Bm in summands:
        Xa = CPoly.var(alpha, s, p)
        Ap = A.mod(p)
        powered = frobenius_scale(Xa * Ap, k) - Xa * frobenius_scale(Ap, k)
        total = total + powered * Bm.mod(p)
    return total


def _instance_member(summands, s, p, n, k):
    val = _instance_value(summands, s, p, k)
    return field_ideal_normal_form(val, p, n).is_zero()


def _scan_bound(p, kappa):
    """Largest n worth scanning for a given prime: beyond it, any
    membership is already witnessed at a smaller n."""
    k1 = 1
    while p ** k1 <= kappa + 2:
        k1 += 1
    k2 = 0
    while p ** (k2 + 1) <= kappa + 2:
        k2 += 1
    n2 = 0
    while p ** (n2 + 1) <= kappa * kappa + 4 * kappa + 2:
        n2 += 1
    return max(2, 2 * k1 + 1, 2 * k2 + 1, n2)


def lemma33_decide(inst):
    """Least (p, n, k) with k <= n/2 making the twisted sum vanish on
    the field with p^n elements, or None."""
    summands = [(a, A, Bm) for (a, A, Bm) in inst.summands
                if not A.is_zero() and not Bm.is_zero()]
    if not summands:
        return (2, 2, 1)
    s = inst.nvars
    kappa = inst.kappa
    cands = set(_primes_upto(kappa + 2)) | {2}
    N = _instance_gcd(summands, s)
    if N > 1:
        cands |= {q for q, _ in trial_factor(N)}
    for p in sorted(cands):
        for n in range(2, _scan_bound(p, kappa) + 1):
            for k in range(1, n // 2 + 1):
                if _instance_member(summands, s, p, n, k):
                    return (p, n, k)
    return None


# ---------------------------------------------------------------------------
# twisted rings B(p, n, l)

def _case_one_instances(ids):
    """Per identity and per target variable, the two summand lists
    whose vanishing on F_{p^n} characterizes the identity on B(p,n,l):
    one for twists with l <= n/2, one for the mirrored range."""
    s = ids.nvars
    low, high = [], []
    kappa = 0
    for P in ids.polys:
        form = reduce_caseI(P)
        per_low, per_high = {}, {}
        for (i, j, A, C) in form.comm_terms:
            Ab = abelianize(A, s)
            Cb = abelianize(C, s)
            kappa = max(kappa, Ab.degree(), Cb.degree())
            # coefficient of the j-slot: +(U_i^q - U_i) A^q C
            per_low.setdefault(j, []).append((i, Ab, Cb))
            # coefficient of the i-slot picks up the opposite sign
            per_low.setdefault(i, []).append((j, Ab, -Cb))
            # mirrored twist: the C side carries the power, signs flip
            per_high.setdefault(j, []).append((i, Cb, -Ab))
            per_high.setdefault(i, []).append((j, Cb, Ab))
        low.extend(v for _, v in sorted(per_low.items()))
        high.extend(v for _, v in sorted(per_high.items()))
    return low, high, kappa


def _case_one(ids, prime_filter, options):
    s = ids.nvars
    low, high, kappa = _case_one_instances(ids)
    if prime_filter is not None:
        cands = {prime_filter}
    else:
        cands = set(_primes_upto(kappa + 2)) | {2}
        for group in (low, high):
            N = 0
            for lst in group:
                N = gcd(N, _instance_gcd(lst, s))
            if N > 1:
                cands |= {q for q, _ in trial_factor(N)}
    for p in sorted(cands):
        for n in range(2, _scan_bound(p, kappa) + 1):
            for l in range(1, n):
                if l <= n - l:
                    ok = all(_instance_member(lst, s, p, n, l) for lst in low)
                else:
                    ok = all(_instance_member(lst, s, p, n, n - l) for lst in high)
                if not ok:
                    continue
                ring = make_ring(B(p, n, l))
                if all(ring.is_identity(P, eval_cap=options.eval_cap) is True
                       for P in ids.polys):
                    return (p, n, l, ring)
    return None


def _case_two_small(ids, p, options):
    """Primes not killing the straightened parts: the field image of a
    surviving straightened polynomial bounds p^n, leaving an explicit
    finite list to test."""
    s = ids.nvars
    D = -1
    for P in ids.polys:
        img = abelianize(bar_transversal(P), s).mod(p)
        if not img.is_zero():
            D = img.degree()
            break
    if D < 0:
        return None
    n = 2
    while p ** n <= D:
        for l in range(1, n):
            ring = make_ring(B(p, n, l))
            if all(ring.is_identity(P, eval_cap=options.eval_cap) is True
                   for P in ids.polys):
                return (p, n, l, ring)
        n += 1
    return None


def decide_B(ids, options=None):
    """Least verified witness (p, n, l, ring) among the twisted rings,
    or None."""
    options = options or DecideOptions()
    bars = [bar_transversal(P) for P in ids.polys]
    if all(b.is_zero() for b in bars):
        return _case_one(ids, None, options)
    d = 0
    for b in bars:
        d = gcd(d, b.content())
    degmax = max(b.degree() for b in bars if not b.is_zero())
    cands = set()
    if d > 1:
        cands |= {q for q, _ in trial_factor(d)}
    cands |= {q for q in _primes_upto(isqrt(degmax)) if d % q}
    for p in sorted(cands):
        if d % p == 0:
            # straightened parts vanish mod p; only twist data matters
            hit = _case_one(ids, p, options)
        else:
            hit = _case_two_small(ids, p, options)
        if hit:
            return hit
    return None


# ---------------------------------------------------------------------------
# local rings with central commutators

def _ap_flat(ids, prime, options):
    """All straightened parts vanish (absolutely, or mod the given
    prime): a model exists iff one prime makes every flattened
    commutator coefficient an identity for F_p."""
    s = ids.nvars
    coeffs = []
    for P in ids.polys:
        form = reduce_Ap(P)
        for Acoef in form.A.values():
            img = abelianize(Acoef, s)
            if not img.is_zero():
                coeffs.append(img)
    if prime is not None:
        cands = [prime]
    elif not coeffs:
        cands = [2]
    else:
        g = 0
        mx = 0
        for A in coeffs:
            g = gcd(g, A.content())
            mx = max(mx, A.degree())
        cands = set(_primes_upto(mx))
        if g > 1:
            cands |= {q for q, _ in trial_factor(g)}
        cands = sorted(cands)
    for p in cands:
        if all(field_ideal_normal_form(A, p, 1).is_zero() for A in coeffs):
            ring = make_ring(TruncFree(p, 3))
            if all(ring.is_identity(P, eval_cap=options.eval_cap) is True
                   for P in ids.polys):
                return (p, ring)
    return None


def _normal_words(basis, at, p, a, cap):
    """Words of length < at with nonzero residue range modulo the
    basis, paired with that range p^e.  Breadth-first, lexicographic."""
    out = []
    frontier = [()]
    while frontier:
        nxt = []
        for w in frontier:
            e = a
            for h in basis.elements:
                if _occurrences(h.lead_word, w):
                    e = min(e, h.lead_exp)
            if e == 0:
                continue
            out.append((w, p ** e))
            if len(out) > cap:
                raise ResourceLimitError("normal-words", cap,
                                         "quotient span too large")
            if len(w) + 1 < at:
                nxt.extend(w + (z,) for z in (1, 2))
        frontier = nxt
    return out


class _AssignmentSpace:
    """Substitution values over the normal words, materialized lazily
    by cost: 1 + word length per nonzero nonconstant coefficient, the
    constant part free.  Cheap assignments come first, so a collapsing
    specialization is usually found long before the space is large."""

    def __init__(self, normal, cap):
        self.const_range = 1
        others = []
        for w, rng in normal:
            if w == ():
                self.const_range = rng
            else:
                others.append((w, rng))
        others.sort(key=lambda wr: deglex_key(wr[0]))
        self.others = others
        self.cap = cap
        self.cache = {}
        self.count = 0
        self.max_cost = sum(1 + len(w) for w, _ in others)

    def at_cost(self, cost):
        if cost in self.cache:
            return self.cache[cost]
        lst = []

        def close(chosen):
            for c0 in range(self.const_range):
                lst.append(chosen + ((((), c0),) if c0 else ()))

        def rec(idx, chosen, remaining):
            if remaining == 0:
                close(chosen)
                return
            for k in range(idx, len(self.others)):
                w, rng = self.others[k]
                step = 1 + len(w)
                if step > remaining:
                    break
                for c in range(1, rng):
                    rec(k + 1, chosen + ((w, c),), remaining - step)

        rec(0, (), cost)
        self.count += len(lst)
        if self.count > self.cap:
            raise ResourceLimitError("specialization-space", self.cap,
                                     "assignment classes")
        self.cache[cost] = lst
        return lst

    def tuples_with_total(self, s, total):
        def rec(i, remaining):
            if i == s - 1:
                for asg in self.at_cost(remaining):
                    yield (asg,)
                return
            for c in range(remaining + 1):
                here = self.at_cost(c)
                if not here:
                    continue
                for rest in rec(i + 1, remaining - c):
                    for asg in here:
                        yield (asg,) + rest

        return rec(0, total)


def _ap_presented(ids, p, a, d, Gs, options):
    """Build the two-generator presentation for characteristic p^a and
    decide by completion whether a noncommutative model survives."""
    s = ids.nvars
    b = min(a, _vp(d, p))
    pick = None
    for G in Gs:
        cg = G.content()
        if cg and _vp(cg, p) == b:
            pick = G
            break
    if pick is None:
        return None
    low = [e[0] for e, c in pick.terms.items() if _vp(c, p) == b]
    t = min(low)
    if t < 1:
        raise AssertionError("truncation exponent must be positive")
    at = a * t
    X = NcPoly.var(1)
    Y = NcPoly.var(2)
    comm = X * Y - Y * X
    gens = [X * comm, Y * comm, comm * X, comm * Y, comm.scale(p)]
    pb = p ** b
    if at >= 3:
        for i in range(at + 1):
            gens.append(NcPoly.from_word((1,) * i + (2,) * (at - i), pb))
    else:
        for w in product((1, 2), repeat=at):
            gens.append(NcPoly.from_word(w, pb))
    comm_poly = NcPoly({(1, 2): 1, (2, 1): -1})
    evals = 0
    while True:
        basis = complete(gens, p, a, options.gsb_limits)
        if basis.normal_form(comm_poly).is_zero():
            return None
        normal = _normal_words(basis, at, p, a, options.max_normal_words)
        space = _AssignmentSpace(normal, options.max_specializations)
        top = space.max_cost * s
        grew = False
        for total in range(top + 1):
            for tup in space.tuples_with_total(s, total):
                evals += 1
                if evals > options.max_specializations:
                    raise ResourceLimitError(
                        "specialization-scan", options.max_specializations,
                        "p=%d a=%d" % (p, a))
                assignment = {}
                for i in range(s):
                    assignment[i + 1] = NcPoly(dict(tup[i]))
                for P in ids.polys:
                    img = P.substitute(assignment)
                    nf = basis.normal_form(img)
                    if not nf.is_zero():
                        gens.append(nf.lift())
                        grew = True
                        break
                if grew:
                    break
            if grew:
                break
        if grew:
            continue
        ordered = sorted(basis.elements, key=lambda g: deglex_key(g.lead_word))
        fam = Presented(p, a, tuple(format_ncpoly(g.as_ncpoly(), names="XY")
                                    for g in ordered))
        return (p, PresentedWitness(fam, basis, at))


def _ap_general(ids, options):
    s = ids.nvars
    bars = [bar_transversal(P) for P in ids.polys]
    D = max(b.degree() for b in bars if not b.is_zero())
    d = 0
    for b in bars:
        d = gcd(d, b.content())
    weights = [(D + 1) ** i for i in range(s)]
    Gs = []
    for P in ids.polys:
        Q = abelianize(P, s)
        terms = {}
        for e, c in Q.terms.items():
            k = sum(ei * wi for ei, wi in zip(e, weights))
            terms[k] = terms.get(k, 0) + c
        Gs.append(univ(terms))
    N = 0
    for G in Gs:
        for j in range((D + 1) ** s + 1):
            N = gcd(N, G.eval((j,)))
            if N == 1:
                break
        if N == 1:
            break
    if N == 1:
        return None
    try:
        fac = trial_factor(N)
    except OverflowError:
        raise ResourceLimitError("characteristic-factoring", N, "")
    for p, a in fac:
        if d % (p ** a) == 0:
            hit = _ap_flat(ids, p, options)
        else:
            hit = _ap_presented(ids, p, a, d, Gs, options)
        if hit:
            return hit
    return None


def decide_Ap(ids, options=None):
    """Witness among local rings with central commutators, or None.
    Returns (p, ring) with a tabled truncated algebra, or
    (p, PresentedWitness) when only a presentation certifies it."""
    options = options or DecideOptions()
    bars = [bar_transversal(P) for P in ids.polys]
    if all(b.is_zero() for b in bars):
        return _ap_flat(ids, None, options)
    return _ap_general(ids, options)


def presented_scan_check(ids, basis, scan_length, options=None):
    """Re-check a presented witness against an identity set: the
    commutator must survive reduction and every identity must reduce to
    zero under every specialization over normal words shorter than
    ``scan_length``."""
    options = options or DecideOptions()
    comm = NcPoly({(1, 2): 1, (2, 1): -1})
    if basis.normal_form(comm).is_zero():
        return False
    normal = _normal_words(basis, scan_length, basis.p, basis.a,
                           options.max_normal_words)
    space = _AssignmentSpace(normal, options.max_specializations)
    s = ids.nvars
    evals = 0
    for total in range(space.max_cost * s + 1):
        for tup in space.tuples_with_total(s, total):
            evals += 1
            if evals > options.max_specializations:
                raise ResourceLimitError("specialization-scan",
                                         options.max_specializations, "verify")
            assignment = {i + 1: NcPoly(dict(tup[i])) for i in range(s)}
            for P in ids.polys:
                if not basis.normal_form(P.substitute(assignment)).is_zero():
                    return False
    return True


# ---------------------------------------------------------------------------
# orchestrator

def _witness_verdict(p, witness, params=()):
    if isinstance(witness, PresentedWitness):
        return Verdict("witness", prime=p, family=witness.family,
                       witness=witness, params=tuple(params))
    pair = witness.is_commutative()
    return Verdict("witness", prime=p, family=witness.family, witness=witness,
                   params=tuple(params), pair=None if pair is True else pair)


def _central_form(P):
    """The univariate Q with P = Q(X)Y - YQ(X), if P has that shape."""
    if P.variables() != [1, 2]:
        return None
    left = {}
    for w, c in P.terms.items():
        if not w:
            return None
        if w == (2,):
            return None
        if w[-1] == 2 and all(x == 1 for x in w[:-1]):
            left[len(w) - 1] = c
        elif w[0] == 2 and all(x == 1 for x in w[1:]):
            continue
        else:
            return None
    Q = NcPoly({(1,) * k: c for k, c in left.items()})
    Y = NcPoly.var(2)
    if Q * Y - Y * Q == P:
        return Q
    return None


def _fast_path(ids, options):
    from . import theorems
    polys = ids.polys
    if all(theorems.is_multilinear(P) for P in polys):
        hit = theorems.multilinear_decide(list(polys))
        if hit is None:
            return Verdict("forces")
        return _witness_verdict(hit[0], hit[1])
    if len(polys) == 1:
        P = polys[0]
        vs = P.variables()
        if vs in ([], [1]):
            hit = theorems.univariate_decide(P)
            if hit is None:
                return Verdict("forces")
            return _witness_verdict(hit[0], hit[1])
        Q = _central_form(P)
        if Q is not None:
            hit = theorems.central_decide(Q)
            if hit is None:
                return Verdict("forces")
            return _witness_verdict(hit[0], hit[1])
    return None


def decide_all(ids, options=None):
    """Full decision: Forces, a verified Witness, or ResourceLimit."""
    options = options or DecideOptions()
    if not ids.polys or all(P.is_zero() for P in ids.polys):
        ring = make_ring(Mat(2, 2, 1))
        return _witness_verdict(2, ring)
    if options.fast_paths:
        fp = _fast_path(ids, options)
        if fp is not None:
            return fp
    constraint = candidate_primes(ids)
    if not constraint.all_primes and not constraint.primes:
        return Verdict("forces")
    limited = None
    try:
        hit = decide_Up(ids, options)
        if hit:
            return _witness_verdict(hit[0], hit[1])
    except ResourceLimitError as err:
        limited = err
    try:
        hit = decide_B(ids, options)
        if hit:
            return _witness_verdict(hit[0], hit[3], params=(hit[1], hit[2]))
    except ResourceLimitError as err:
        limited = limited or err
    try:
        hit = decide_Ap(ids, options)
        if hit:
            return _witness_verdict(hit[0], hit[1])
    except ResourceLimitError as err:
        limited = limited or err
    if limited is not None:
        return Verdict("limit", stage=limited.stage, limit=limited.limit,
                       detail=limited.detail)
    return Verdict("forces")
