import pytest

from commforce.errors import ResourceLimitError
from commforce.finitering import (B, Fq, Mat, MinRing, Presented, TruncFree,
                                  Up, family_from_json, family_json,
                                  least_irreducible, make_ring)
from commforce.freealg import NcPoly, commutator

X = NcPoly.var(1)
Y = NcPoly.var(2)
Z = NcPoly.var(3)


def test_least_irreducible_f4():
    # X^2 + X + 1 is the first irreducible quadratic mod 2
    assert least_irreducible(2, 2) == (1, 1)


def test_fq_arithmetic_and_frobenius():
    fq = Fq(2, 2)
    g = fq.gen()
    assert fq.mul(g, g) == fq.add(g, fq.one())          # g^2 = g + 1
    assert fq.frobenius(g, 1) == fq.mul(g, g)
    assert fq.pow(g, 3) == fq.one()
    assert sorted(fq.elements()) == sorted(
        [(0, 0), (1, 0), (0, 1), (1, 1)])


def test_ring_sizes_frozen():
    assert make_ring(TruncFree(2, 3)).dim == 7
    assert make_ring(TruncFree(2, 3)).size == 128
    assert make_ring(MinRing(3)).size == 81
    assert make_ring(Up(2)).size == 8
    assert make_ring(B(2, 2, 1)).size == 16
    assert make_ring(Mat(2, 2, 1)).size == 16


def test_up_noncommutative_with_valid_pair():
    ring = make_ring(Up(3))
    pair = ring.is_commutative()
    assert pair is not True
    a, b = pair
    assert ring.mul(a, b) != ring.mul(b, a)


def test_minring_relations():
    ring = make_ring(MinRing(3))
    u = ring.basis_element(1)
    v = ring.basis_element(2)
    vu = ring.basis_element(3)
    assert ring.mul(u, u) == ring.zero()
    assert ring.mul(v, v) == ring.zero()
    assert ring.mul(u, v) == ring.zero()
    assert ring.mul(v, u) == vu
    assert ring.mul(vu, u) == ring.zero()
    assert ring.mul(u, vu) == ring.zero()


def test_b_ring_satisfies_twisted_identity():
    ring = make_ring(B(2, 2, 1))
    P = X * commutator(Y, Z) - commutator(Y, Z) * X * X
    assert ring.is_identity(P) is True
    assert ring.is_commutative() is not True


def test_is_identity_counterexample_is_real():
    ring = make_ring(Up(2))
    res = ring.is_identity(commutator(X, Y))
    assert res is not True
    assert any(ring.eval(commutator(X, Y), res))


def test_is_identity_eval_cap():
    ring = make_ring(MinRing(3))
    with pytest.raises(ResourceLimitError):
        ring.is_identity(commutator(X, Y), eval_cap=10)


def test_family_json_roundtrip():
    for fam in [Up(3), B(2, 2, 1), Mat(2, 2, 1), TruncFree(3, 3),
                MinRing(5), Presented(2, 2, ("X^2", "Y^2"))]:
        doc = family_json(fam)
        assert family_from_json(doc) == fam
    assert family_json(B(2, 2, 1))["modulus"] == [1, 1]


def test_presented_not_tabled():
    with pytest.raises(ValueError):
        make_ring(Presented(2, 2, ()))


def test_truncfree_with_relations():
    # killing u^2, v^2, uv but keeping vu matches the minimal ring sizes
    ring = make_ring(TruncFree(2, 3, ((1, 1), (2, 2), (1, 2))))
    assert ring.size == 2 ** 4
