import pytest
from hypothesis import given, settings, strategies as st

from commforce.commalg import (CPoly, cartier, cartier_reconstruct,
                               field_ideal_normal_form,
                               find_nonvanishing_point, frobenius_scale,
                               trial_factor, univ, univariate_divrem,
                               univariate_membership)


def cpolys(p, nvars=2):
    exps = st.tuples(*([st.integers(0, 7)] * nvars))
    return st.dictionaries(exps, st.integers(1, p - 1) if p > 2
                           else st.just(1), max_size=5).map(
        lambda t: CPoly(t, nvars, p))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_cartier_reconstruct_examples(p):
    P = CPoly({(3, 1): 1, (0, 4): p - 1, (2, 2): 1}, 2, p)
    assert cartier_reconstruct(P) == P


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_cartier_reconstruct_random(data):
    p = data.draw(st.sampled_from([2, 3, 5]))
    P = data.draw(cpolys(p))
    assert cartier_reconstruct(P) == P


def test_cartier_extracts_blocks():
    # X^5 Y^2 mod 3: index (2, 2), inner exponent (1, 0)
    P = CPoly({(5, 2): 2}, 2, 3)
    assert cartier(P, (2, 2)).terms == {(1, 0): 2}
    assert cartier(P, (0, 0)).is_zero()


def test_frobenius_scale():
    P = CPoly({(1, 2): 1}, 2, 3)
    assert frobenius_scale(P, 2).terms == {(9, 18): 1}


def test_field_ideal_normal_form_frozen():
    # X^5 modulo (2, X^4 - X): exponent folds to 2
    P = CPoly({(5,): 1}, 1, None)
    assert field_ideal_normal_form(P, 2, 2).terms == {(2,): 1}
    # (X^2 - X)^2 expands to X^4 + X^2 mod 2 and vanishes on F_2
    sq = CPoly({(4,): 1, (2,): 1}, 1, None)
    assert field_ideal_normal_form(sq, 2, 1).is_zero()
    # X^2 + X + 1 is 1 at both points of F_2
    assert field_ideal_normal_form(CPoly({(2,): 1, (1,): 1, (0,): 1}, 1, None),
                                   2, 1).terms == {(0,): 1}
    # but X^2 - X itself is an identity of F_2
    assert field_ideal_normal_form(CPoly({(2,): 1, (1,): -1}, 1, None),
                                   2, 1).is_zero()


def test_field_ideal_vs_brute_force():
    # nf zero iff the polynomial vanishes on all of F_p^s (n = 1)
    import itertools
    for p in (2, 3):
        P = CPoly({(p, 0): 1, (1, 0): -1}, 2, p)
        assert field_ideal_normal_form(P, p, 1).is_zero()
        Q = CPoly({(1, 1): 1}, 2, p)
        nf = field_ideal_normal_form(Q, p, 1)
        vanishes = all(Q.eval(pt) % p == 0
                       for pt in itertools.product(range(p), repeat=2))
        assert nf.is_zero() == vanishes


def test_find_nonvanishing_point():
    P = CPoly({(2, 2): 2, (4, 2): 1}, 2, None)
    assert find_nonvanishing_point(P) == ((1, 1), 3)
    assert find_nonvanishing_point(CPoly.zero(2)) is None


def test_univariate_division():
    P = univ({6: 1, 3: -1})
    M = univ({2: 1, 1: -1})
    Q, R = univariate_divrem(P, M, 2)
    assert Q * M.mod(2) + R == P.mod(2)
    assert R.degree() < 2


def test_univariate_membership():
    assert univariate_membership(univ({3: 1, 1: -1}), "lin", 3)
    assert not univariate_membership(univ({2: 1}), "lin", 3)
    # X^p(X^p - ... ) square membership: (X^2 - X)^2 itself
    sq = univ({4: 1, 3: -2, 2: 1})
    assert univariate_membership(sq, "sq", 2)
    assert not univariate_membership(univ({2: 1, 1: -1}), "sq", 2)


def test_trial_factor():
    assert trial_factor(360) == [(2, 3), (3, 2), (5, 1)]
    assert trial_factor(-7) == [(7, 1)]
    assert trial_factor(1) == []
    assert trial_factor(0) == []
    with pytest.raises(OverflowError):
        trial_factor((10 ** 9 + 7) * (10 ** 9 + 9), step_budget=10)
