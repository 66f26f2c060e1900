"""Finite fields and tabled finite rings.

A TabledRing is a free Z/char-module with a structure-constant
multiplication table; elements are coefficient tuples.  Constructors
cover the witness families used by the decision procedures: 2x2 upper
triangular matrices over F_p, the Frobenius-twisted rings over F_{p^n},
matrix rings, truncated free algebras and the 4-dimensional minimal
ring for multilinear identities.  Identity checking over all tuples is
batched with numpy.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import ResourceLimitError


# ---------------------------------------------------------------------------
# finite fields

def _poly_mul_mod(a, b, modulus, p, n):
    out = [0] * (2 * n - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    for d in range(2 * n - 2, n - 1, -1):
        c = out[d]
        if c:
            out[d] = 0
            # X^n = -(modulus tail)
            for j in range(n):
                out[d - n + j] = (out[d - n + j] - c * modulus[j]) % p
    return tuple(out[:n])


def _is_irreducible(modulus, p, n):
    # trial division by every monic polynomial of degree 1..n//2
    coeffs = list(modulus) + [1]
    for d in range(1, n // 2 + 1):
        for tail in product(range(p), repeat=d):
            div = list(tail) + [1]
            rem = list(coeffs)
            for k in range(len(rem) - 1, d - 1, -1):
                c = rem[k]
                if c:
                    rem[k] = 0
                    for j in range(d):
                        rem[k - d + j] = (rem[k - d + j] - c * div[j]) % p
            if not any(rem):
                return False
    return True


def least_irreducible(p, n):
    """Tail coefficients (c_0,...,c_{n-1}) of the lexicographically
    least monic irreducible X^n + c_{n-1}X^{n-1} + ... + c_0 over F_p,
    comparing coefficient vectors low degree first."""
    if n == 1:
        return (0,)
    for tail in product(range(p), repeat=n):
        if _is_irreducible(tail, p, n):
            return tail
    raise ValueError("no irreducible polynomial found")


class Fq:
    """The field with p^n elements as F_p[X]/(modulus).

    Elements are length-n coefficient tuples, low degree first.
    """

    def __init__(self, p, n):
        self.p = p
        self.n = n
        self.modulus = least_irreducible(p, n)

    def zero(self):
        return (0,) * self.n

    def one(self):
        return (1,) + (0,) * (self.n - 1)

    def embed(self, c):
        return (c % self.p,) + (0,) * (self.n - 1)

    def gen(self):
        if self.n == 1:
            raise ValueError("prime field has no proper generator element")
        return tuple(1 if i == 1 else 0 for i in range(self.n))

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def mul(self, a, b):
        return _poly_mul_mod(a, b, self.modulus, self.p, self.n)

    def pow(self, a, k):
        out = self.one()
        base = a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def frobenius(self, a, k=1):
        """a^(p^k) via k successive p-th power maps."""
        for _ in range(k % self.n if self.n > 1 else 1):
            a = self.pow(a, self.p)
        return a

    def elements(self):
        for tup in product(range(self.p), repeat=self.n):
            yield tup


def frobenius(field, x, k=1):
    return field.frobenius(x, k)


# ---------------------------------------------------------------------------
# ring family descriptors

@dataclass(frozen=True)
class Up:
    p: int


@dataclass(frozen=True)
class B:
    p: int
    n: int
    l: int


@dataclass(frozen=True)
class Mat:
    k: int
    p: int
    n: int


@dataclass(frozen=True)
class TruncFree:
    p: int
    k: int
    relations: tuple = ()


@dataclass(frozen=True)
class MinRing:
    p: int


@dataclass(frozen=True)
class Presented:
    """Quotient of Z/p^a{X,Y} by a completed basis; not tabled here,
    verified through gsb normal forms."""
    p: int
    a: int
    generators: tuple = ()


def family_json(family):
    """Canonical JSON-able description, enough to rebuild the ring."""
    if isinstance(family, Up):
        return {"family": "U", "p": family.p}
    if isinstance(family, B):
        fq = Fq(family.p, family.n)
        return {"family": "B", "p": family.p, "n": family.n, "l": family.l,
                "modulus": list(fq.modulus)}
    if isinstance(family, Mat):
        fq = Fq(family.p, family.n)
        return {"family": "Mat", "k": family.k, "p": family.p, "n": family.n,
                "modulus": list(fq.modulus)}
    if isinstance(family, TruncFree):
        return {"family": "TruncFree", "p": family.p, "k": family.k,
                "relations": [list(w) for w in family.relations]}
    if isinstance(family, MinRing):
        return {"family": "MinRing", "p": family.p}
    if isinstance(family, Presented):
        return {"family": "Presented", "p": family.p, "a": family.a,
                "generators": list(family.generators)}
    raise TypeError("unknown family %r" % (family,))


def family_from_json(doc):
    kind = doc["family"]
    if kind == "U":
        return Up(doc["p"])
    if kind == "B":
        return B(doc["p"], doc["n"], doc["l"])
    if kind == "Mat":
        return Mat(doc["k"], doc["p"], doc["n"])
    if kind == "TruncFree":
        return TruncFree(doc["p"], doc["k"], tuple(tuple(w) for w in doc["relations"]))
    if kind == "MinRing":
        return MinRing(doc["p"])
    if kind == "Presented":
        return Presented(doc["p"], doc["a"], tuple(doc["generators"]))
    raise ValueError("unknown family kind %r" % kind)


# ---------------------------------------------------------------------------
# tabled rings

class TabledRing:
    """Finite ring given by structure constants over Z/char."""

    def __init__(self, char, basis_labels, one, table, family):
        self.char = char
        self.dim = len(basis_labels)
        self.basis_labels = list(basis_labels)
        self.one = np.array(one, dtype=np.int64) % char
        self.table = np.array(table, dtype=np.int64) % char
        self.family = family
        if self.table.shape != (self.dim, self.dim, self.dim):
            raise ValueError("bad table shape")
        self._check_axioms()

    @property
    def size(self):
        return self.char ** self.dim

    def _check_axioms(self):
        T = self.table
        left = np.einsum("ijm,mkl->ijkl", T, T) % self.char
        right = np.einsum("jkm,iml->ijkl", T, T) % self.char
        if not np.array_equal(left, right):
            raise ValueError("multiplication table is not associative")
        eye = np.eye(self.dim, dtype=np.int64)
        one_left = np.einsum("i,ijk->jk", self.one, T) % self.char
        one_right = np.einsum("j,ijk->ik", self.one, T) % self.char
        if not (np.array_equal(one_left, eye) and np.array_equal(one_right, eye)):
            raise ValueError("declared identity element is not an identity")

    # single-element helpers; elements are int tuples of length dim
    def add(self, a, b):
        return tuple((x + y) % self.char for x, y in zip(a, b))

    def mul(self, a, b):
        v = np.einsum("i,j,ijk->k", np.array(a, dtype=np.int64),
                      np.array(b, dtype=np.int64), self.table) % self.char
        return tuple(int(x) for x in v)

    def scalar(self, c):
        return tuple(int(x) for x in (c * self.one) % self.char)

    def zero(self):
        return (0,) * self.dim

    def basis_element(self, i):
        return tuple(1 if j == i else 0 for j in range(self.dim))

    def element_from_index(self, idx):
        """Mixed-radix decode; index order equals lexicographic order on
        coefficient vectors."""
        out = []
        for i in range(self.dim - 1, -1, -1):
            out.append(idx % self.char)
            idx //= self.char
        return tuple(reversed(out))

    def elements(self):
        for idx in range(self.size):
            yield self.element_from_index(idx)

    def eval(self, P, tup):
        """Evaluate an NcPoly at a tuple of ring elements."""
        vs = P.variables()
        if vs and max(vs) > len(tup):
            raise ValueError("tuple arity %d < variables in P" % len(tup))
        if P.modulus is not None and self.char % P.modulus != 0 and P.modulus % self.char != 0:
            raise ValueError("modulus incompatible with ring characteristic")
        acc = self.zero()
        for w, c in P.terms.items():
            v = self.scalar(1)
            for letter in w:
                v = self.mul(v, tup[letter - 1])
            acc = self.add(acc, tuple((c * x) % self.char for x in v))
        return acc

    def _mul_batch(self, A, Bm):
        # (N,d) x (N,d) -> (N,d) through the structure constants
        d = self.dim
        tmp = A @ self.table.reshape(d, d * d)
        tmp %= self.char
        out = np.einsum("njk,nj->nk", tmp.reshape(-1, d, d), Bm)
        return out % self.char

    def eval_batch(self, P, columns):
        """Evaluate P at many tuples at once.  ``columns`` is a list of
        (N, dim) arrays, one per variable; returns an (N, dim) array."""
        N = columns[0].shape[0] if columns else 1
        cache = {(): np.repeat(self.one[None, :], N, axis=0)}
        acc = np.zeros((N, self.dim), dtype=np.int64)
        for w, c in P.terms.items():
            for i in range(1, len(w) + 1):
                if w[:i] not in cache:
                    cache[w[:i]] = self._mul_batch(cache[w[:i - 1]],
                                                   columns[w[i - 1] - 1])
            acc += (c % self.char) * cache[w]
        return acc % self.char

    def is_identity(self, P, mode="exhaustive", trials=200, seed=0,
                    eval_cap=10 ** 7, chunk=1 << 16):
        """True if P vanishes at every tuple, else the first failing
        tuple in scan order.  ``random`` mode is a screen only."""
        vs = P.variables()
        s = max(vs) if vs else 1
        if mode == "random":
            rng = np.random.default_rng(seed)
            for _ in range(trials):
                tup = tuple(self.element_from_index(int(rng.integers(self.size)))
                            for _ in range(s))
                if any(self.eval(P, tup)):
                    return tup
            return True
        total = self.size ** s
        if total > eval_cap:
            raise ResourceLimitError("exhaustive-eval", eval_cap,
                                     "%d tuples on %r" % (total, self.family))
        # all ring elements as rows, in index (= lexicographic) order
        digits = np.arange(self.size, dtype=np.int64)
        elems = np.empty((self.size, self.dim), dtype=np.int64)
        rest = digits
        for i in range(self.dim - 1, -1, -1):
            elems[:, i] = rest % self.char
            rest = rest // self.char
        for lo in range(0, total, chunk):
            hi = min(lo + chunk, total)
            flat = np.arange(lo, hi, dtype=np.int64)
            rest = flat
            idxs = []
            for v in range(s - 1, -1, -1):
                idxs.append(rest % self.size)
                rest = rest // self.size
            idxs.reverse()
            columns = [elems[ix] for ix in idxs]
            vals = self.eval_batch(P, columns)
            bad = np.nonzero(vals.any(axis=1))[0]
            if bad.size:
                k = int(flat[bad[0]])
                tup = []
                for v in range(s - 1, -1, -1):
                    tup.append(self.element_from_index(k % self.size))
                    k //= self.size
                return tuple(reversed(tup))
        return True

    def is_commutative(self):
        """True, or a pair of basis elements (a, b) with ab != ba."""
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if not np.array_equal(self.table[i, j] % self.char,
                                      self.table[j, i] % self.char):
                    return self.basis_element(i), self.basis_element(j)
        return True

    def describe(self, element):
        parts = []
        for c, lab in zip(element, self.basis_labels):
            if c:
                parts.append(lab if c == 1 else "%d*%s" % (c, lab))
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# constructors

def _ring_from_basis_mul(char, labels, one, mul, family):
    d = len(labels)
    table = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            table[i][j] = mul(i, j)
    return TabledRing(char, labels, one, table, family)


def _make_up(p):
    labels = ["e11", "e12", "e22"]
    # e11*e12 = e12, e12*e22 = e12, idempotents on the diagonal
    prod = {(0, 0): 0, (0, 1): 1, (1, 2): 1, (2, 2): 2}

    def mul(i, j):
        v = [0, 0, 0]
        if (i, j) in prod:
            v[prod[(i, j)]] = 1
        return v

    return _ring_from_basis_mul(p, labels, [1, 0, 1], mul, Up(p))


def _make_b(p, n, l):
    fq = Fq(p, n)
    d = 2 * n
    labels = ["x*t^%d" % i for i in range(n)] + ["y*t^%d" % i for i in range(n)]
    basis_fq = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]

    def emb(x, y):
        return list(x) + list(y)

    def mul(i, j):
        # basis i is (x,0) for i<n else (0,y); product rule
        # (x,y)(x',y') = (x x', x^(p^l) y' + y x')
        x1 = basis_fq[i] if i < n else fq.zero()
        y1 = fq.zero() if i < n else basis_fq[i - n]
        x2 = basis_fq[j] if j < n else fq.zero()
        y2 = fq.zero() if j < n else basis_fq[j - n]
        xprod = fq.mul(x1, x2)
        yprod = fq.add(fq.mul(fq.frobenius(x1, l), y2), fq.mul(y1, x2))
        return emb(xprod, yprod)

    one = emb(fq.one(), fq.zero())
    return _ring_from_basis_mul(p, labels, one, mul, B(p, n, l))


def _make_mat(k, p, n):
    fq = Fq(p, n)
    d = k * k * n
    labels = []
    basis_fq = [tuple(1 if m == t else 0 for m in range(n)) for t in range(n)]
    for i in range(k):
        for j in range(k):
            for t in range(n):
                labels.append("e%d%d*t^%d" % (i + 1, j + 1, t))

    def unpack(idx):
        t = idx % n
        j = (idx // n) % k
        i = idx // (n * k)
        return i, j, t

    def mul(a, b):
        i1, j1, t1 = unpack(a)
        i2, j2, t2 = unpack(b)
        v = [0] * d
        if j1 == i2:
            prod = fq.mul(basis_fq[t1], basis_fq[t2])
            for t, c in enumerate(prod):
                v[(i1 * k + j2) * n + t] = c
        return v

    one = [0] * d
    for i in range(k):
        one[(i * k + i) * n] = 1
    return _ring_from_basis_mul(p, labels, one, mul, Mat(k, p, n))


def _trunc_words(k, relations):
    rels = [tuple(w) for w in relations]
    words = []
    for length in range(k):
        for w in product((1, 2), repeat=length):
            if any(w[i:i + len(r)] == r for r in rels for i in range(len(w) - len(r) + 1)):
                continue
            words.append(w)
    return words


def _make_truncfree(p, k, relations):
    words = _trunc_words(k, relations)
    index = {w: i for i, w in enumerate(words)}
    rels = [tuple(w) for w in relations]
    names = {(): "1"}
    for w in words:
        if w:
            names[w] = "".join("xy"[c - 1] for c in w)

    def mul(i, j):
        v = [0] * len(words)
        w = words[i] + words[j]
        if len(w) < k and not any(w[a:a + len(r)] == r
                                  for r in rels for a in range(len(w) - len(r) + 1)):
            v[index[w]] = 1
        return v

    one = [0] * len(words)
    one[index[()]] = 1
    return _ring_from_basis_mul(p, [names[w] for w in words], one, mul,
                                TruncFree(p, k, tuple(rels)))


def _make_minring(p):
    labels = ["1", "u", "v", "vu"]
    # u^2 = v^2 = uv = 0 and vu is annihilated by u, v
    def mul(i, j):
        v = [0, 0, 0, 0]
        if i == 0:
            v[j] = 1
        elif j == 0:
            v[i] = 1
        elif (i, j) == (2, 1):
            v[3] = 1
        return v

    return _ring_from_basis_mul(p, labels, [1, 0, 0, 0], mul, MinRing(p))


def make_ring(family):
    """Build the tabled ring for a family descriptor."""
    if isinstance(family, Up):
        return _make_up(family.p)
    if isinstance(family, B):
        if family.n < 2 or not (1 <= family.l <= family.n - 1):
            raise ValueError("B requires n >= 2 and 1 <= l <= n-1")
        return _make_b(family.p, family.n, family.l)
    if isinstance(family, Mat):
        return _make_mat(family.k, family.p, family.n)
    if isinstance(family, TruncFree):
        if family.k < 2:
            raise ValueError("TruncFree requires k >= 2")
        return _make_truncfree(family.p, family.k, family.relations)
    if isinstance(family, MinRing):
        return _make_minring(family.p)
    if isinstance(family, Presented):
        raise ValueError("Presented quotients are handled through gsb normal forms")
    raise TypeError("unknown family %r" % (family,))
