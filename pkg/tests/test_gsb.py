import itertools
import random

import pytest

from commforce.errors import ResourceLimitError
from commforce.freealg import NcPoly, commutator
from commforce.gsb import (CompletionLimits, GsPoly, complete, initial_term,
                           is_commutative_presentation)
from commforce.oracle import truncated_ideal_membership

X = NcPoly.var(1)
Y = NcPoly.var(2)


def test_gspoly_normalizes_lead_to_p_power():
    # lead 3*XY over Z/4 scales by 3^-1 = 3
    g = GsPoly({(1, 2): 3, (1,): 2}, 2, 2)
    assert initial_term(g) == (1, (1, 2))
    assert g.terms[(1, 2)] == 1
    assert g.terms[(1,)] == 2


def test_commutative_presentation_mod4():
    basis = complete([NcPoly.const(2), commutator(X, Y)], 2, 2)
    assert basis.complete
    assert is_commutative_presentation(basis)
    # 2*anything also dies: the coefficient composition fired
    assert basis.normal_form((X * Y).scale(2)).is_zero()


def test_noncommutative_presentation():
    basis = complete([Y * X], 2, 1)
    assert not is_commutative_presentation(basis)
    assert basis.normal_form(X * Y).coeff((1, 2)) == 1


def test_coefficient_composition_membership():
    # over Z/4 the pair {X^2 + X, X^4} puts X itself in the ideal:
    # squaring gives X^2 = -X, so X^4 = X^2 = -X up to multiples
    basis = complete([X * X + X, X ** 4], 2, 2)
    assert basis.normal_form(X).is_zero()


@pytest.mark.parametrize("p,a", [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)])
def test_structural_generators_terminate(p, a):
    gens = [X * commutator(X, Y), Y * commutator(X, Y),
            commutator(X, Y) * X, commutator(X, Y) * Y,
            commutator(X, Y).scale(p)]
    basis = complete(gens, p, a)
    assert basis.complete
    assert not basis.normal_form(commutator(X, Y)).is_zero()
    assert basis.normal_form(X * Y * X * Y - X * X * Y * Y).is_zero()


def test_completion_limit_carries_partial():
    with pytest.raises(ResourceLimitError) as info:
        complete([Y * X, X * Y, commutator(X, Y)], 2, 1,
                 CompletionLimits(max_steps=1))
    assert info.value.partial is not None
    assert not info.value.partial.complete


def test_normal_form_requires_no_completion_flag_for_membership():
    basis = complete([X * X], 3, 1)
    assert basis.normal_form(Y * X * X * Y).is_zero()
    assert not basis.normal_form(X * Y * X).is_zero()


def random_poly(rng, max_len, p):
    terms = {}
    for _ in range(rng.randrange(1, 4)):
        w = tuple(rng.randrange(1, 3) for _ in range(rng.randrange(0, max_len)))
        terms[w] = rng.randrange(1, p)
    return NcPoly(terms)


@pytest.mark.parametrize("p", [2, 3])
def test_membership_agrees_with_truncated_oracle(p):
    # completing with all length-k words appended makes the truncated
    # quotient exact, so nf == 0 must match the linear-algebra oracle
    rng = random.Random(p)
    k = 4
    trunc = [NcPoly.from_word(w)
             for w in itertools.product((1, 2), repeat=k)]
    hits = 0
    for trial in range(60):
        gens = [random_poly(rng, k - 1, p) for _ in range(2)]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        basis = complete(gens + trunc, p, 1)
        f = random_poly(rng, k - 1, p)
        member = truncated_ideal_membership(f, gens, p, k)
        assert basis.normal_form(f).is_zero() == member
        hits += member
    assert hits > 0
