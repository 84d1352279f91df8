import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from modflow.cf_core import DigitSequence, FareyDigit, LehnerDigit, value_of_periodic
from modflow.errors import (
    ExcludedGeodesic,
    FormulaUndefined,
    InvalidPeriod,
    InvalidRuns,
    NoIntersection,
    OutOfDomain,
    OutOfWindow,
)
from modflow.geodesics import (
    CuttingSequence,
    FareyWalker,
    Geodesic,
    HPoint,
    J_inverse,
    J_map,
    closed_geodesic_test,
    commute_check,
    cutting_sequence_backward,
    cutting_sequence_from_rcf,
    cutting_sequence_geometric,
    decoded_geodesic,
    eval_eq7_formula,
    expected_letters,
    in_A,
    in_S,
    letter_coding_rule,
    lehner_digits_from_letters,
    lift_to_A,
    orbit_of_zero,
    periodic_pair,
    re_rho_eta,
    re_rho_eta_closed_form,
    return_time,
    return_time_transported,
    rho_bar,
    rho_bar_inverse,
    rho_point,
    run_lengths,
    theorem1_decode,
    theorem1_decode_literal,
    xi_eta,
)
from modflow.natext import OmegaPoint
from modflow.numeric import INF, UnimodularMap, compare, conjugate, mobius_apply, surd
from modflow.sweeps import random_spoint, surd_spoints, theorem1_census, theorem1_round_trip

from conftest import PHI, SQRT2, rationals

D21, D11 = LehnerDigit.D21, LehnerDigit.D11
Dm12, Dp11 = FareyDigit.Dm12, FareyDigit.Dp11
TOL = mpmath.mpf(2) ** -80


# -- lifting -------------------------------------------------------------------


def test_lift_examples():
    g = Geodesic(1 - SQRT2, SQRT2)
    lifted, h = lift_to_A(g)
    assert lifted == g and h == UnimodularMap.identity()
    g = Geodesic(-SQRT2 - 1, SQRT2 + 2)
    lifted, h = lift_to_A(g)
    assert in_S(lifted.forward, lifted.backward)
    assert g.moved(h) == lifted and h.det == 1
    with pytest.raises(ExcludedGeodesic):
        lift_to_A(Geodesic(0, INF))


@given(st.builds(surd, st.integers(-30, 30), st.integers(1, 5), st.sampled_from([2, 3, 5, 7, 13]), st.integers(1, 9)))
def test_lift_of_conjugate_pairs_lands_in_A(x):
    g = Geodesic(conjugate(x), x)
    lifted, h = lift_to_A(g)
    assert in_A(lifted)
    assert h.det == 1 and g.moved(h) == lifted


# -- cutting sequences ---------------------------------------------------------


def test_cutting_sequence_from_rcf_examples():
    # sqrt2 = [1; 2, 2, ...] and -1/(1 - sqrt2) = [2; 2, ...]: n0 = 1, every other run 2
    cs = cutting_sequence_from_rcf(Geodesic(1 - SQRT2, SQRT2))
    assert cs == CuttingSequence(1, DigitSequence("rcf", (), (2,)), DigitSequence("rcf", (), (2,)))
    cs = cutting_sequence_from_rcf(Geodesic(conjugate(PHI), PHI))
    assert cs == CuttingSequence.periodic([1])
    cs = cutting_sequence_from_rcf(Geodesic(Fraction(-1, 2), Fraction(3, 2)))
    assert cs.n0 == 1
    assert cs.forward == DigitSequence("rcf", (2,), ())
    assert cs.backward == DigitSequence("rcf", (2,), ())
    with pytest.raises(OutOfWindow):
        cutting_sequence_from_rcf(Geodesic(-SQRT2, SQRT2))


def test_cutting_sequence_json_round_trip():
    cs = CuttingSequence(3, DigitSequence("rcf", (1,), (2, 5)), DigitSequence("rcf", (), (4,)))
    assert CuttingSequence.from_json(cs.to_json()) == cs
    with pytest.raises(InvalidRuns):
        CuttingSequence(0, cs.forward, cs.backward)


def test_walker_examples():
    assert cutting_sequence_geometric(Geodesic(1 - SQRT2, SQRT2), 8) == "RRLLRRLL"
    assert cutting_sequence_geometric(Geodesic(conjugate(PHI), PHI), 8) == "RLRLRLRL"
    w = FareyWalker(Geodesic(Fraction(-1, 2), Fraction(3, 2)))
    letters = "".join(w)
    assert letters == "R" and w.cusp


def test_walker_mirrored_geodesic_swaps_letters():
    g = Geodesic(1 - SQRT2, SQRT2)
    mirrored = Geodesic(SQRT2 - 1, -SQRT2)
    swap = str.maketrans("LR", "RL")
    assert cutting_sequence_geometric(mirrored, 16) == cutting_sequence_geometric(g, 16).translate(swap)


def test_walker_rejects_bad_start_edge():
    with pytest.raises(ValueError):
        cutting_sequence_geometric(Geodesic(1 - SQRT2, SQRT2), 4, start=((2, 1), (3, 1)))


def test_walker_respects_explicit_start_edge():
    # from the edge (1, 2) the letters are those from (1, oo) minus the first one
    g = Geodesic(1 - SQRT2, SQRT2)
    assert cutting_sequence_geometric(g, 7, start=((1, 1), (2, 1))) == cutting_sequence_geometric(g, 8)[1:]


def test_letter_coding_rule_examples():
    assert letter_coding_rule("L", "L") is D21
    assert letter_coding_rule("L", "R") is D11
    assert letter_coding_rule("R", "R") is D21


def test_letters_code_the_lehner_digits_of_forward():
    # dropping the first letter, same/different pairs read off the Lehner digits
    g = Geodesic(1 - SQRT2, SQRT2)
    letters = cutting_sequence_geometric(g, 21)
    assert lehner_digits_from_letters(letters) == [D21, D11] * 10


def _random_window_geodesic(rng):
    d = rng.choice([2, 3, 5, 6, 7, 10, 11, 13])
    while True:
        f = surd(rng.randint(0, 40), rng.randint(1, 4), d, rng.randint(1, 12))
        b = surd(rng.randint(-20, 20), rng.choice([-1, 1]) * rng.randint(1, 4), d, rng.randint(1, 12))
        if compare(f, 1) > 0 and compare(b, -1) > 0 and compare(b, 0) < 0:
            return Geodesic(b, f)


@pytest.mark.parametrize("seed", range(20))
def test_walker_matches_rcf_runs(seed):
    g = _random_window_geodesic(random.Random(seed))
    cs = cutting_sequence_from_rcf(g)
    fwd, bwd = expected_letters(cs, 50)
    assert cutting_sequence_geometric(g, 50) == fwd
    assert cutting_sequence_backward(g, 50) == bwd


# -- decoding cutting sequences into Farey words ------------------------------


def test_theorem1_all_twos():
    fwd, bwd = theorem1_decode(CuttingSequence.periodic([2]))
    assert fwd == DigitSequence("lehner", (), (D21, D11))
    assert value_of_periodic(fwd) == SQRT2
    assert bwd == DigitSequence("farey", (), (Dp11, Dm12))
    assert value_of_periodic(bwd) == SQRT2
    g = decoded_geodesic(CuttingSequence.periodic([2]))
    assert g == Geodesic(-SQRT2, SQRT2)
    assert run_lengths(cutting_sequence_geometric(g, 40))[:-1] == [2] * 19
    assert run_lengths(cutting_sequence_backward(g, 40))[:-1] == [2] * 19


def test_theorem1_literal_words_for_all_twos():
    # the literal backward word evaluates to 1 + sqrt2, whose geodesic does not carry runs of 2
    _, bwd = theorem1_decode_literal(CuttingSequence.periodic([2]))
    assert list(bwd.digits(3)) == [Dp11, Dm12, Dm12]
    assert value_of_periodic(bwd) == 1 + SQRT2
    g = Geodesic(-(1 + SQRT2), SQRT2)
    assert run_lengths(cutting_sequence_backward(g, 12))[0] == 3


def test_theorem1_all_ones():
    fwd, bwd = theorem1_decode(CuttingSequence.periodic([1]))
    assert fwd == DigitSequence("lehner", (), (D11,))
    assert value_of_periodic(fwd) == PHI
    assert bwd == DigitSequence("farey", (Dp11, Dp11), (Dp11,))


def test_theorem1_n0_three():
    cs = CuttingSequence(3, DigitSequence("rcf", (), (2,)), DigitSequence("rcf", (), (2,)))
    _, bwd = theorem1_decode(cs)
    assert list(bwd.digits(3)) == [Dp11, Dm12, Dm12]
    g = decoded_geodesic(cs)
    fwd_letters, bwd_letters = expected_letters(cs, 30)
    assert cutting_sequence_geometric(g, 30) == fwd_letters
    assert cutting_sequence_backward(g, 30) == bwd_letters


@pytest.mark.parametrize("word", theorem1_census())
def test_theorem1_round_trip_census(word):
    assert theorem1_round_trip(word)


# -- the cross-section map -----------------------------------------------------


def test_rho_point_examples():
    assert rho_point(SQRT2, SQRT2) == 1 + SQRT2 / 2
    assert rho_point(-SQRT2, SQRT2) == 1 - SQRT2 / 2
    # forward 3/2 takes the (1,+1) branch: 1/(1 - (1+i)) = i
    assert rho_point(HPoint(1, 1), Fraction(3, 2)) == HPoint(0, 1)
    # with a0 = 2: 1/(2 - (1+i)) = (1+i)/2
    assert rho_point(HPoint(1, 1), Fraction(5, 4)) == HPoint(Fraction(1, 2), Fraction(1, 4))
    with pytest.raises(OutOfDomain):
        rho_point(SQRT2, Fraction(1, 2))


def test_rho_bar_examples():
    assert rho_bar(SQRT2, -SQRT2) == (1 + SQRT2 / 2, 1 - SQRT2 / 2)
    assert rho_bar(-SQRT2, SQRT2) == (-(2 + SQRT2) / 2, -(2 - SQRT2) / 2)
    assert rho_bar(*rho_bar(SQRT2, -SQRT2)) == (-SQRT2, SQRT2)
    with pytest.raises(OutOfDomain):
        rho_bar(Fraction(1, 2), 0)


def test_J_examples():
    assert J_map(SQRT2, -SQRT2) == OmegaPoint(SQRT2, SQRT2, 1)
    assert J_map(-SQRT2, SQRT2) == OmegaPoint(SQRT2, SQRT2, -1)
    assert J_inverse(OmegaPoint(SQRT2, SQRT2, -1)) == (-SQRT2, SQRT2)


def test_commute_examples():
    assert commute_check(SQRT2, -SQRT2)
    assert J_map(*rho_bar(SQRT2, -SQRT2)) == OmegaPoint(1 + SQRT2 / 2, -1 + SQRT2 / 2, 1)
    assert commute_check(Fraction(13, 8), 0)
    assert commute_check(Fraction(-13, 8), 0)


@given(st.integers(0, 10**6))
def test_commute_and_invert_random_points(seed):
    x, y = random_spoint(random.Random(seed), 300)
    assert commute_check(x, y)
    assert rho_bar_inverse(*rho_bar(x, y)) == (x, y)


def test_commute_surd_points():
    for x, y in surd_spoints():
        assert commute_check(x, y)
        assert rho_bar_inverse(*rho_bar(x, y)) == (x, y)


# -- crossing points and return time ------------------------------------------


def test_xi_eta_examples():
    c = xi_eta(Geodesic(-SQRT2, SQRT2))
    assert c.xi == HPoint(Fraction(4, 3), Fraction(2, 9))
    assert c.eta == HPoint(Fraction(7, 5), Fraction(1, 25))
    with pytest.raises(NoIntersection):
        xi_eta(Geodesic(SQRT2, INF))


def test_return_time_example():
    rt = return_time(Geodesic(-SQRT2, SQRT2))
    with mpmath.workprec(128):
        y1, y2 = mpmath.sqrt(2) / 3, mpmath.mpf(1) / 5
        expected = mpmath.acosh(1 + ((mpmath.mpf(1) / 15) ** 2 + (y1 - y2) ** 2) / (2 * y1 * y2))
        assert abs(rt - expected) < TOL


def test_return_time_vanishes_at_the_corner():
    small = [return_time(Geodesic(1 - d, 1 + d)) for d in (Fraction(1, 10**3), Fraction(1, 10**6))]
    assert small[1] < small[0] < mpmath.mpf("1e-2")
    assert small[1] < mpmath.mpf("1e-5")


def test_return_time_rho_invariant():
    for g in [Geodesic(-SQRT2, SQRT2), Geodesic(1 - SQRT2, SQRT2), Geodesic(SQRT2, -SQRT2), Geodesic(Fraction(-1, 3), Fraction(7, 5))]:
        assert abs(return_time(g) - return_time_transported(g)) < TOL


def test_re_rho_eta_examples():
    g = Geodesic(-SQRT2, SQRT2)
    c = xi_eta(g)
    direct = rho_point(c.eta, SQRT2).x
    assert re_rho_eta(g) == direct == Fraction(3, 2)
    assert re_rho_eta(Geodesic(Fraction(-1, 3), Fraction(7, 5))) == Fraction(27, 19)
    assert re_rho_eta(Geodesic(SQRT2, -SQRT2)) == Fraction(-3, 2)


def test_re_rho_eta_rational_cusp_case():
    # eta for (-1/2, 3/2) sits on the real axis at 3/2, so there is no crossing in H
    with pytest.raises(NoIntersection):
        re_rho_eta(Geodesic(Fraction(-1, 2), Fraction(3, 2)))
    assert re_rho_eta_closed_form(Geodesic(Fraction(-1, 2), Fraction(3, 2))) is not None


def test_eq7_report():
    rep = eval_eq7_formula(Geodesic(-SQRT2, SQRT2))
    assert set(rep) == {"formula", "return_time", "difference"}
    with pytest.raises(FormulaUndefined):
        eval_eq7_formula(Geodesic(1 - SQRT2, SQRT2))
    rep = eval_eq7_formula(Geodesic(Fraction(-3, 2), Fraction(7, 5)))
    assert rep["return_time"] > 0


# -- closed geodesics ----------------------------------------------------------


def test_closed_geodesic_examples():
    assert closed_geodesic_test((D21, D11)) == (True, 4)
    x, y = periodic_pair((D21, D11))
    assert (x, y) == (SQRT2, -SQRT2)
    p = (x, y)
    for _ in range(2):
        p = rho_bar(*p)
    assert p == (-x, -y)
    for _ in range(2):
        p = rho_bar(*p)
    assert p == (x, y)
    assert closed_geodesic_test((D11,)) == (True, 2)
    with pytest.raises(InvalidPeriod):
        closed_geodesic_test((D21, D11, D21, D11))
    with pytest.raises(InvalidPeriod):
        closed_geodesic_test(())


def test_closed_geodesic_cusp_period_rejected():
    # (2,-1) forever is the cusp 1, whose pair (1, 1) is not a geodesic
    assert periodic_pair((D21,)) == (1, 1)
    with pytest.raises(InvalidPeriod):
        closed_geodesic_test((D21,))


def test_orbit_of_zero_examples():
    assert orbit_of_zero(0) == UnimodularMap.identity()
    m = orbit_of_zero(Fraction(1, 2))
    assert m == UnimodularMap(1, 1, 1, 2) and m.det == 1
    m = orbit_of_zero(INF)
    assert mobius_apply(m, 0) is INF and m.det == 1


@given(rationals(-50, 50, 500))
def test_orbit_of_zero_hits_target(pq):
    m = orbit_of_zero(pq)
    assert m.det == 1 and mobius_apply(m, 0) == pq
