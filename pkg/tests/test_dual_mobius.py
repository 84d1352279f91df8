from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from modflow.cf_core import DigitSequence, LehnerDigit
from modflow.dual_mobius import (
    FAREY_SYSTEM,
    FSTAR_SYSTEM,
    LEHNER_SYSTEM,
    Interval,
    dual_natext_step,
    fbar,
    find_dual_partition,
    fstar_expand,
    fstar_orbit,
    fstar_step,
    invariance_check_1pxy,
    invariance_sides_1pxy,
    mutants,
    natural_dual,
    transfer_check_Fstar,
    transfer_sides_Fstar,
    verify_system,
)
from modflow.errors import DegenerateDenominator, DualVerificationFailed, OutOfDomain
from modflow.lehner import lehner_expand
from modflow.numeric import floor_exact, surd

from conftest import SQRT2, rationals, squarefree

D21, D11 = LehnerDigit.D21, LehnerDigit.D11
HALF, TWO_THIRDS = Fraction(1, 2), Fraction(2, 3)
FSTAR_CARRIER = Interval(HALF, 1, False, True)


def test_builtin_systems_verify():
    for s in (FAREY_SYSTEM, LEHNER_SYSTEM, FSTAR_SYSTEM):
        report = verify_system(s)
        assert report.ok, report.defects


@pytest.mark.parametrize("name", sorted(mutants()))
def test_mutants_fail(name):
    report = verify_system(mutants()[name])
    assert not report.ok and report.defects


def test_overlap_defect_is_named():
    report = verify_system(mutants()["overlap"])
    assert any("overlap" in d for d in report.defects)


def test_natural_dual_of_farey():
    lower = Interval(HALF, TWO_THIRDS, False, True)
    upper = Interval(TWO_THIRDS, 1, False, True)
    # cell k of the dual carries the transpose of Farey cell k: [-1,0) pairs with (2/3,1]
    assert find_dual_partition(FAREY_SYSTEM, FSTAR_CARRIER) == [upper, lower]
    dual = natural_dual(FAREY_SYSTEM, FSTAR_CARRIER, [upper, lower])
    assert dual == FSTAR_SYSTEM
    with pytest.raises(DualVerificationFailed):
        natural_dual(FAREY_SYSTEM, FSTAR_CARRIER, [lower, upper])


def test_transpose_is_involutive():
    dual = natural_dual(FAREY_SYSTEM, FSTAR_CARRIER, find_dual_partition(FAREY_SYSTEM, FSTAR_CARRIER))
    back = natural_dual(dual, FAREY_SYSTEM.carrier, [c.interval for c in FAREY_SYSTEM.cells])
    assert back == FAREY_SYSTEM


def test_natural_dual_cell_count():
    with pytest.raises(DualVerificationFailed):
        natural_dual(FAREY_SYSTEM, FSTAR_CARRIER, [FSTAR_CARRIER])


def test_fstar_step_examples():
    assert fstar_step(TWO_THIRDS) == (D11, HALF)
    assert fstar_step(1) == (D21, 1)
    assert fstar_step(SQRT2 / 2) == (D21, 2 - SQRT2)
    with pytest.raises(OutOfDomain):
        fstar_step(HALF)


def test_fstar_boundary_flag():
    seq, boundary = fstar_orbit(TWO_THIRDS)
    assert boundary
    assert seq == DigitSequence("fstar", (D21, D11))
    assert fstar_orbit(SQRT2 / 2)[1] is False


def test_fstar_expand_examples():
    assert fstar_expand(SQRT2 / 2) == DigitSequence("fstar", (), (D21, D11))
    assert fstar_expand(2 / (1 + surd(0, 1, 5))) == DigitSequence("fstar", (), (D11,))
    seq = fstar_expand(Fraction(3, 4))
    assert seq.preperiod == lehner_expand(Fraction(4, 3)).preperiod
    assert seq.value() == Fraction(3, 4)


def test_transfer_examples():
    assert transfer_sides_Fstar(Fraction(3, 4)) == (Fraction(16, 3), Fraction(16, 3))
    assert transfer_sides_Fstar(Fraction(5, 8)) == (Fraction(64, 15), Fraction(64, 15))
    assert transfer_sides_Fstar(Fraction(7, 9)) == (Fraction(81, 14), Fraction(81, 14))
    with pytest.raises(OutOfDomain):
        transfer_check_Fstar(1)


def test_dual_natext_examples():
    assert dual_natext_step(FAREY_SYSTEM, FSTAR_SYSTEM, (1, 1)) == (0, HALF)
    assert fbar(SQRT2 / 2, 0) == (2 - SQRT2, -HALF)
    assert dual_natext_step(FSTAR_SYSTEM, FAREY_SYSTEM, (SQRT2 / 2, 0)) == (2 - SQRT2, -HALF)
    assert fbar(Fraction(3, 5), 0) == (TWO_THIRDS, 1)


def test_invariance_examples():
    assert invariance_sides_1pxy(Fraction(3, 5), 0) == (1, 1)
    assert invariance_check_1pxy(Fraction(3, 4), 1)
    assert invariance_check_1pxy(SQRT2 / 2, SQRT2)
    with pytest.raises(DegenerateDenominator):
        invariance_check_1pxy(Fraction(3, 4), Fraction(-4, 3))


@given(rationals(HALF, 1, 1000, closed_hi=True))
def test_fstar_conjugate_to_lehner_rationals(x):
    assert fstar_expand(x).preperiod == lehner_expand(1 / x).preperiod


@pytest.mark.parametrize("d", [d for d in range(2, 40) if squarefree(d)][:20])
def test_fstar_conjugate_to_lehner_surds(d):
    # a point of (1, 2) in Q(sqrt d), inverted into (1/2, 1)
    r = surd(0, 1, d)
    y = 1 + r - floor_exact(r)
    assert 1 < y < 2
    a, b = fstar_expand(1 / y), lehner_expand(y)
    assert (a.preperiod, a.period) == (b.preperiod, b.period)


@given(rationals(HALF, 1, 10**6))
def test_fstar_transfer_identity(x):
    assert transfer_check_Fstar(x)


@given(rationals(HALF, 1, 1000, closed_hi=True), rationals(-1, 20, 1000))
def test_fbar_jacobian(x, y):
    assume(1 + x * y != 0)
    assert invariance_check_1pxy(x, y)


@given(rationals(HALF, 1, 1000, closed_hi=True), rationals(-1, 20, 1000))
def test_generic_dual_step_matches_fbar(x, y):
    d, _ = fstar_step(x)
    assume(y + d.a != 0)
    assert dual_natext_step(FSTAR_SYSTEM, FAREY_SYSTEM, (x, y)) == fbar(x, y)
