import pytest

from commforce.commalg import CPoly
from commforce.decide import (DecideOptions, IdentitySet, Lemma33Instance,
                              PresentedWitness, candidate_primes, decide_Ap,
                              decide_B, decide_Up, decide_all, lemma33_decide,
                              presented_scan_check)
from commforce.errors import ResourceLimitError
from commforce.finitering import B, Mat, Presented, Up
from commforce.freealg import NcPoly, commutator, format_ncpoly

X = NcPoly.var(1)
Y = NcPoly.var(2)
Z = NcPoly.var(3)

# the quartic whose only candidate characteristic is 3 yet no witness exists
QUARTIC = X ** 2 * Y ** 2 + X ** 4 * Y ** 2 + X * Y * X * Y
# the sextic satisfied by upper triangular matrices mod 2
SEXTIC = (X ** 2 * Y * X * Y - X ** 2 * Y ** 2 * X - X * Y * X ** 2 * Y
          + X * Y ** 2 * X ** 2 + Y * X ** 2 * Y * X - Y * X * Y * X ** 2)


def ids(*polys, nvars=2):
    return IdentitySet(nvars, tuple(polys))


def test_identity_set_validation():
    with pytest.raises(ValueError):
        IdentitySet(1, (X * Y,))
    with pytest.raises(ValueError):
        IdentitySet(0, ())


def test_candidate_primes_quartic():
    c = candidate_primes(ids(QUARTIC))
    assert not c.all_primes
    assert c.primes == ((3, 1),)


def test_candidate_primes_unrestricted():
    assert candidate_primes(ids(commutator(X, Y))).all_primes


def test_candidate_primes_empty_forces():
    v = decide_all(ids(X * Y * 3 + NcPoly.const(1)))
    assert v.kind == "forces"


def test_decide_up_sextic():
    hit = decide_Up(ids(SEXTIC))
    assert hit is not None
    p, ring = hit
    assert p == 2 and ring.family == Up(2)


def test_decide_up_rejects_commutator():
    assert decide_Up(ids(commutator(X, Y))) is None


def test_decide_all_sextic_witness():
    v = decide_all(ids(SEXTIC))
    assert v.kind == "witness"
    assert v.prime == 2 and v.family == Up(2)
    a, b = v.pair
    assert v.witness.mul(a, b) != v.witness.mul(b, a)


def test_lemma33_empty_instance():
    one = CPoly({(0,): 1}, 1, None)
    inst = Lemma33Instance(((1, one - one, one),), 1, 0)
    assert lemma33_decide(inst) == (2, 2, 1)


def test_lemma33_unit_summand_has_no_solution():
    one = CPoly({(0,): 1}, 1, None)
    assert lemma33_decide(Lemma33Instance(((1, one, one),), 1, 0)) is None


def test_decide_b_twisted_identity():
    hit = decide_B(ids(X * commutator(Y, Z) - commutator(Y, Z) * X * X,
                       nvars=3))
    assert hit is not None
    p, n, l, ring = hit
    assert (p, n, l) == (2, 2, 1)
    assert ring.is_identity(
        X * commutator(Y, Z) - commutator(Y, Z) * X * X) is True
    assert ring.is_commutative() is not True


def test_decide_b_and_ap_reject_quartic():
    assert decide_B(ids(QUARTIC)) is None
    assert decide_Ap(ids(QUARTIC)) is None


def test_decide_ap_presented_witness():
    # (x^2 + x)^2 = 0 admits a char-4 noncommutative model that no
    # tabled family in the pipeline catches
    hit = decide_Ap(ids(X ** 4 + (X ** 3).scale(2) + X ** 2, nvars=1))
    assert hit is not None
    p, w = hit
    assert p == 2
    assert isinstance(w, PresentedWitness)
    assert w.family.p == 2 and w.family.a == 2
    assert w.scan_length == 4
    assert not w.normal_form(commutator(X, Y)).is_zero()
    trunc = {format_ncpoly(NcPoly({word: 1}), names="XY")
             for word in [(1, 1), (2, 2)]} | {"X*Y + Y*X"}
    assert trunc <= set(w.family.generators)
    assert presented_scan_check(ids(X ** 4 + (X ** 3).scale(2) + X ** 2,
                                    nvars=1),
                                w.basis, w.scan_length)


def test_decide_ap_rejects_x4_minus_x2():
    assert decide_Ap(ids(X ** 4 - X ** 2, nvars=1)) is None


def test_decide_all_empty_set_witness():
    v = decide_all(IdentitySet(2, ()))
    assert v.kind == "witness"
    assert v.family == Mat(2, 2, 1)


def test_fast_path_consistency():
    for P in [X ** 2 - X, commutator(X, Y) * 1, SEXTIC]:
        fast = decide_all(ids(P))
        slow = decide_all(ids(P), DecideOptions(fast_paths=False))
        assert fast.kind == slow.kind
        if fast.kind == "witness":
            assert fast.prime == slow.prime


def test_eval_cap_surfaces_as_limit():
    opts = DecideOptions(eval_cap=4, fast_paths=False)
    with pytest.raises(ResourceLimitError):
        decide_Up(ids(SEXTIC), opts)
