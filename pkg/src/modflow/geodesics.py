"""Geodesics on the modular surface: lifts, Farey cutting sequences, the cross-section map.

Geodesics are stored as (backward, forward) endpoint pairs.  Points of the
cross-section set S are stored the other way round, as (x, y) = (forward,
backward), with S = ((1,2) x (-oo,1)) u ((-2,-1) x (-1,oo)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby
from typing import Iterator, Sequence

import mpmath

from .cf_core import DigitSequence, FareyDigit, LehnerDigit, rcf_expand, value_of_periodic
from .errors import (
    DegenerateEndpoints,
    DivisionByZero,
    ExcludedGeodesic,
    FormulaUndefined,
    InvalidPeriod,
    InvalidRuns,
    MixedFieldError,
    NoIntersection,
    OutOfDomain,
    OutOfWindow,
)
from .farey_cf import farey_from_rcf
from .lehner import dual_of_period, lehner_from_rcf, lehner_step
from .natext import OmegaPoint
from .numeric import (
    INF,
    Surd,
    UnimodularMap,
    compare,
    conjugate,
    floor_exact,
    mobius_apply,
    normalize,
    sign,
    to_mpf,
)

DEFAULT_PREC = 128
TOL_BITS = 80


@dataclass(frozen=True)
class Geodesic:
    backward: object
    forward: object

    def __post_init__(self):
        object.__setattr__(self, "backward", normalize(self.backward))
        object.__setattr__(self, "forward", normalize(self.forward))
        if compare(self.backward, self.forward) == 0:
            raise DegenerateEndpoints("endpoints coincide")

    def reversed(self) -> "Geodesic":
        return Geodesic(self.forward, self.backward)

    def moved(self, m: UnimodularMap) -> "Geodesic":
        return Geodesic(mobius_apply(m, self.backward), mobius_apply(m, self.forward))


def in_S(x, y) -> bool:
    """(forward, backward) = (x, y) lies in the cross-section set."""
    if x is INF or y is INF:
        return False
    if compare(x, 1) > 0 and compare(x, 2) < 0:
        return compare(y, 1) < 0
    if compare(x, -2) > 0 and compare(x, -1) < 0:
        return compare(y, -1) > 0
    return False


def in_A(g: Geodesic) -> bool:
    return in_S(g.forward, g.backward)


# -- lifting -------------------------------------------------------------------


def _as_ratio(v):
    """(p, q) for a rational or INF, else None."""
    if v is INF:
        return 1, 0
    if isinstance(v, Fraction):
        return v.numerator, v.denominator
    return None


def _farey_neighbours(u, v) -> bool:
    a, b = _as_ratio(u), _as_ratio(v)
    if a is None or b is None:
        return False
    return abs(a[0] * b[1] - a[1] * b[0]) == 1


def _translate(k: int) -> UnimodularMap:
    return UnimodularMap(1, k, 0, 1)


INVERT = UnimodularMap(0, -1, 1, 0)


def _positive_window(a, b) -> bool:
    return a is not INF and b is not INF and compare(a, 1) > 0 and compare(b, -1) > 0 and compare(b, 0) < 0


def _negative_window(a, b) -> bool:
    return a is not INF and b is not INF and compare(a, -1) < 0 and compare(b, 0) > 0 and compare(b, 1) < 0


def _reduce(g: Geodesic, done, budget: int):
    """Apply z -> -1/(z - n) with n the integer part of the forward endpoint until ``done``."""
    if _farey_neighbours(g.backward, g.forward):
        raise ExcludedGeodesic("endpoints are Farey neighbours: the line through i")
    h = UnimodularMap.identity()
    cur = g
    for _ in range(budget):
        a, b = cur.forward, cur.backward
        step = done(a, b)
        if step is not None:
            return cur.moved(step), step @ h
        if a is INF:
            raise DegenerateEndpoints("forward endpoint reached the cusp at infinity")
        n = floor_exact(a) if sign(a) > 0 else -floor_exact(-a)
        if compare(a, n) == 0:
            raise DegenerateEndpoints(f"forward endpoint {a} reached an integer cusp")
        step = INVERT @ _translate(-n)
        h = step @ h
        cur = cur.moved(step)
    raise DegenerateEndpoints(f"no reduction within {budget} steps")


def lift_to_A(g: Geodesic, budget: int = 10_000) -> tuple[Geodesic, UnimodularMap]:
    """An equivalent geodesic in A and the map h with h(g) equal to it.

    Reduces the endpoint pair until it lies in A or in one of the windows
    forward > 1, backward in (-1, 0) or forward < -1, backward in (0, 1), then
    translates the forward endpoint into (1,2) or (-2,-1).
    """

    def done(a, b):
        if in_S(a, b):
            return UnimodularMap.identity()
        if _positive_window(a, b):
            return _translate(1 - floor_exact(a))
        if _negative_window(a, b):
            return _translate(floor_exact(-a) - 1)
        return None

    out, h = _reduce(g, done, budget)
    assert in_A(out)
    return out, h


def to_series_window(g: Geodesic, budget: int = 10_000) -> tuple[Geodesic, UnimodularMap]:
    """An equivalent geodesic with forward > 1 and backward in (-1, 0)."""
    return _reduce(g, lambda a, b: UnimodularMap.identity() if _positive_window(a, b) else None, budget)


# -- cutting sequences ---------------------------------------------------------


@dataclass(frozen=True)
class CuttingSequence:
    """Runs ... n_-2 n_-1 | n0 | n1 n2 ... of a two-sided cutting sequence."""

    n0: int
    forward: DigitSequence
    backward: DigitSequence

    def __post_init__(self):
        if self.n0 < 1:
            raise InvalidRuns("n0 must be at least 1")
        for seq in (self.forward, self.backward):
            bad = [n for n in seq.preperiod + seq.period if not isinstance(n, int) or n < 1]
            if bad:
                raise InvalidRuns(f"runs must be positive integers: {bad}")

    @classmethod
    def periodic(cls, word: Sequence[int]) -> "CuttingSequence":
        """Two-sided periodic runs with n_i = word[i mod len(word)]."""
        word = tuple(word)
        if not word:
            raise InvalidRuns("empty run pattern")
        fwd = word[1:] + word[:1]
        bwd = tuple(reversed(word))
        return cls(word[0], DigitSequence("rcf", (), fwd), DigitSequence("rcf", (), bwd))

    def to_json(self) -> dict:
        return {
            "runs_backward": self.backward.to_json(),
            "n0": self.n0,
            "runs_forward": self.forward.to_json(),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "CuttingSequence":
        return cls(
            doc["n0"],
            DigitSequence.from_json(doc["runs_forward"]),
            DigitSequence.from_json(doc["runs_backward"]),
        )


def in_series_window(g: Geodesic) -> bool:
    return _positive_window(g.forward, g.backward)


def cutting_sequence_from_rcf(g: Geodesic) -> CuttingSequence:
    """forward = [n0; n1, n2, ...], backward = -[0; n_-1, n_-2, ...]."""
    if not in_series_window(g):
        raise OutOfWindow("need forward > 1 and backward in (-1, 0)")
    f = rcf_expand(g.forward)
    b = rcf_expand(-1 / g.backward)
    back = DigitSequence("rcf", (b.head,) + b.preperiod, b.period)
    return CuttingSequence(f.head, DigitSequence("rcf", f.preperiod, f.period), back)


def letters_from_runs(runs: Sequence[int], first: str = "R") -> str:
    other = {"R": "L", "L": "R"}
    out, cur = [], first
    for n in runs:
        out.append(cur * n)
        cur = other[cur]
    return "".join(out)


def run_lengths(letters: str) -> list[int]:
    return [len(list(g)) for _, g in groupby(letters)]


def _runs_prefix(seq: DigitSequence, total: int) -> list[int]:
    """Enough leading runs of ``seq`` to cover ``total`` letters."""
    out, n = [], 0
    if seq.finite:
        return list(seq.digits())
    k = 0
    while n < total:
        k += 1
        out = list(seq.digits(k))
        n = sum(out)
    return out


def expected_letters(cs: CuttingSequence, count: int) -> tuple[str, str]:
    """Walker letters predicted by the runs, from the start edge (n, oo) with n = floor(forward).

    Forward: R^n1 L^n2 R^n3 ...  Backward (read in reverse): R^n0 L^n_-1 R^n_-2 ...
    """
    fwd = letters_from_runs(_runs_prefix(cs.forward, count), "R")[:count]
    bwd = letters_from_runs([cs.n0] + _runs_prefix(cs.backward, count), "R")[:count]
    return fwd, bwd


Edge = tuple[tuple[int, int], tuple[int, int]]


def _ratio_value(r: tuple[int, int]):
    p, q = r
    return INF if q == 0 else Fraction(p, q)


def _neg_ratio(r):
    p, q = r
    return (p, q) if q == 0 else (-p, q)


def _mirror_edge(edge):
    """Image of the edge (u, v) under x -> -x, again ordered u < v."""
    u, v = edge
    if v[1] == 0:
        return (_neg_ratio(u), v)
    return (_neg_ratio(v), _neg_ratio(u))


class FareyWalker:
    """Letters L/R recorded while a geodesic crosses Farey triangles towards its forward end.

    The state is an edge (u, v) of Farey neighbours, u < v (v may be oo), that
    the geodesic crosses with its forward endpoint inside (u, v).  A letter
    is R when the vertex shared by the entry and exit edges is u, L when it
    is v.  Geodesics running right to left are mirrored by x -> -x, which
    swaps the letters.
    """

    def __init__(self, g: Geodesic, start: Edge | None = None):
        self.mirror = compare(g.backward, g.forward) > 0 if g.backward is not INF else False
        s = -1 if self.mirror else 1
        self.alpha = g.forward if g.forward is INF else s * g.forward
        self.beta = g.backward if g.backward is INF else s * g.backward
        self.cusp = False
        self.finished = False
        if start is not None:
            self.edge = _mirror_edge(start) if self.mirror else tuple(start)
            self._check_edge()
        else:
            self.edge = self._default_edge()

    def _inside(self, v, u, w) -> bool:
        """u < v < w with w possibly oo."""
        return compare(u, v) < 0 and (w is INF or compare(v, w) < 0)

    def _check_edge(self):
        u, v = (_ratio_value(r) for r in self.edge)
        if self.alpha is INF or not self._inside(self.alpha, u, v):
            raise ValueError("the forward endpoint must lie inside the start edge")
        b = self.beta
        if b is not INF and (self._inside(b, u, v) or compare(b, u) == 0 or v is not INF and compare(b, v) == 0):
            raise ValueError("the geodesic does not cross the start edge")

    def _default_edge(self):
        a, b = self.alpha, self.beta
        if a is INF:
            self.cusp = self.finished = True
            return ((1, 0), (1, 0))
        n = floor_exact(a)
        if compare(a, n) == 0:
            self.cusp = self.finished = True
            return ((n - 1, 1), (n, 1))
        if b is INF:
            return ((n, 1), (n + 1, 1))
        if compare(b, n) < 0:
            return ((n, 1), (1, 0))
        # b and a share the unit interval (n, n+1): descend by mediants
        u, v = (n, 1), (n + 1, 1)
        while True:
            m = (u[0] + v[0], u[1] + v[1])
            mv = _ratio_value(m)
            if compare(mv, a) == 0:
                self.cusp = self.finished = True
                return (u, v)
            if compare(mv, a) > 0:
                v = m
            elif compare(mv, b) <= 0:
                u = m
            else:
                return (m, v)

    def __iter__(self) -> Iterator[str]:
        return self

    def __next__(self) -> str:
        if self.finished:
            raise StopIteration
        u, v = self.edge
        m = (u[0] + v[0], u[1] + v[1])
        c = compare(self.alpha, _ratio_value(m))
        if c == 0:
            self.cusp = self.finished = True
            raise StopIteration
        if c < 0:
            self.edge, letter = (u, m), "R"
        else:
            self.edge, letter = (m, v), "L"
        if self.mirror:
            letter = "L" if letter == "R" else "R"
        return letter


def default_start_edge(g: Geodesic) -> Edge:
    w = FareyWalker(g)
    return _mirror_edge(w.edge) if w.mirror else w.edge


def cutting_sequence_geometric(g: Geodesic, max_letters: int, start: Edge | None = None) -> str:
    """Up to ``max_letters`` letters towards the forward end; shorter when a cusp is reached."""
    w = FareyWalker(g, start)
    out = []
    for letter in w:
        out.append(letter)
        if len(out) >= max_letters:
            break
    return "".join(out)


def cutting_sequence_backward(g: Geodesic, max_letters: int) -> str:
    """Letters towards the backward end, from the same start edge as the forward walk.

    Read in the reversed direction, so the names of left and right swap.
    """
    return cutting_sequence_geometric(g.reversed(), max_letters, default_start_edge(g))


def letter_coding_rule(prev: str, cur: str) -> LehnerDigit:
    return LehnerDigit.D21 if prev == cur else LehnerDigit.D11


def lehner_digits_from_letters(letters: str) -> list[LehnerDigit]:
    return [letter_coding_rule(a, b) for a, b in zip(letters, letters[1:])]


# -- decoding cutting sequences into Farey words ------------------------------


def theorem1_decode(cs: CuttingSequence) -> tuple[DigitSequence, DigitSequence]:
    """Lehner word of the forward endpoint and Farey word w of the backward one (endpoint -<<w>>).

    forward  = [[(2,-1)^(n1-1)(1,+1)(2,-1)^(n2-1)(1,+1)...]] = [1; n1, n2, ...]
    backward = Farey word of [n0 - 1; n_-1, n_-2, ...]:
        n0 > 1:  (1/1)(-1/2)^(n0-1)(1/1)(-1/2)^(n_-1 - 1)...
        n0 = 1:  (1/1)(1/1)(-1/2)^(n_-1 - 1)...
    This lift is the Series-window geodesic translated by 1 - n0.
    """
    forward = lehner_from_rcf(1, cs.forward)
    backward = farey_from_rcf(1, cs.n0 - 1, cs.backward)
    return forward, backward


def theorem1_decode_literal(cs: CuttingSequence) -> tuple[DigitSequence, DigitSequence]:
    """The backward words exactly as printed, kept for comparison; see the decisions notes."""
    D, P = FareyDigit.Dm12, FareyDigit.Dp11
    back = list(cs.backward.preperiod)
    per = list(cs.backward.period)
    n1 = (back or per)[0]
    rest = cs.backward.drop(1)
    if cs.n0 > 1 or n1 >= 2:
        head = [P] + [D] * n1
    else:
        head = [P, P] + [D] * (n1 - 1)
    pre = head + [x for n in rest.preperiod for x in [P] + [D] * (n - 1)]
    period = [x for n in rest.period for x in [P] + [D] * (n - 1)]
    return lehner_from_rcf(1, cs.forward), DigitSequence("farey", tuple(pre), tuple(period))


def decoded_geodesic(cs: CuttingSequence) -> Geodesic:
    fwd, bwd = theorem1_decode(cs)
    return Geodesic(-value_of_periodic(bwd), value_of_periodic(fwd))


# -- the cross-section map -----------------------------------------------------


@dataclass(frozen=True)
class HPoint:
    """x + i*y in the upper half plane, stored as (x, y^2).

    Exact when both numbers are rational or in a single quadratic field,
    otherwise mpmath floats.
    """

    x: object
    y2: object

    @property
    def exact(self) -> bool:
        return not isinstance(self.x, mpmath.mpf) and not isinstance(self.y2, mpmath.mpf)

    def y(self, prec: int = DEFAULT_PREC):
        with mpmath.workprec(prec):
            return mpmath.sqrt(to_mpf(self.y2, prec))

    def mp(self, prec: int = DEFAULT_PREC) -> tuple:
        return to_mpf(self.x, prec), to_mpf(self.y2, prec)


def _float_pair(x, y2, prec):
    return HPoint(to_mpf(x, prec), to_mpf(y2, prec))


def hpoint_apply(m: UnimodularMap, z: HPoint, prec: int = DEFAULT_PREC) -> HPoint:
    """Image of an upper-half-plane point; det < 0 maps reflect back into H."""
    a, b, c, d = m.a, m.b, m.c, m.d

    def image(x, y2):
        den = (c * x + d) ** 2 + c * c * y2
        if den == 0:
            raise DivisionByZero("point mapped to infinity")
        re = ((a * x + b) * (c * x + d) + a * c * y2) / den
        return re, m.det ** 2 * y2 / den ** 2

    if z.exact:
        try:
            return HPoint(*image(z.x, z.y2))
        except MixedFieldError:
            pass
    with mpmath.workprec(prec):
        return HPoint(*image(*z.mp(prec)))


def hyperbolic_distance(z1: HPoint, z2: HPoint, prec: int = DEFAULT_PREC):
    """arcosh(1 + |z1 - z2|^2 / (2 y1 y2)) at ``prec`` bits."""
    with mpmath.workprec(prec):
        x1, a = z1.mp(prec)
        x2, b = z2.mp(prec)
        arg = ((x1 - x2) ** 2 + a + b) / (2 * mpmath.sqrt(a * b))
        return mpmath.acosh(arg)


def _lehner_a_eps(v):
    """First Lehner digit of |v| for |v| in [1, 2)."""
    d, _ = lehner_step(v if sign(v) > 0 else -v)
    return d.a, d.eps


def rho_matrix(forward) -> UnimodularMap:
    """z -> 1/(e*a0 - z) where e = sign(forward) and a0 is the first Lehner quotient of |forward|."""
    forward = normalize(forward)
    if forward is INF or not (
        compare(forward, 1) > 0 and compare(forward, 2) < 0 or compare(forward, -2) > 0 and compare(forward, -1) < 0
    ):
        raise OutOfDomain(f"forward endpoint {forward} not in (1,2) or (-2,-1)")
    a0, _ = _lehner_a_eps(forward)
    return UnimodularMap(0, 1, -1, sign(forward) * a0)


def rho_point(z, forward):
    m = rho_matrix(forward)
    if isinstance(z, HPoint):
        return hpoint_apply(m, z)
    z = normalize(z)
    if z is not INF and compare(z, m.d) == 0:
        raise DivisionByZero("z = e*a0")
    return mobius_apply(m, z)


def rho_bar(x, y):
    """The cross-section map on S, in (forward, backward) coordinates."""
    x, y = normalize(x), normalize(y)
    if not in_S(x, y):
        raise OutOfDomain(f"({x}, {y}) is not in S")
    m = rho_matrix(x)
    out = mobius_apply(m, x), mobius_apply(m, y)
    if not in_S(*out):
        # only x = 3/2 or -3/2, sent to the corner 2 or -2
        raise OutOfDomain(f"image {out} lies on the boundary of S")
    return out


def rho_bar_inverse(x, y):
    """Inverse of rho_bar through J and the natural extension."""
    from .natext import natext_inverse

    return J_inverse(natext_inverse(J_map(x, y)))


def J_map(x, y) -> OmegaPoint:
    x, y = normalize(x), normalize(y)
    if not in_S(x, y):
        raise OutOfDomain(f"({x}, {y}) is not in S")
    if sign(x) > 0:
        return OmegaPoint(x, -y, 1)
    return OmegaPoint(-x, y, -1)


def J_inverse(p: OmegaPoint):
    if p.eps == 1:
        return p.x, -p.y
    if p.eps == -1:
        return -p.x, p.y
    raise ValueError("J inverse needs the sign layer")


def commute_check(x, y) -> bool:
    from .natext import natext_step

    return J_map(*rho_bar(x, y)) == natext_step(J_map(x, y))


# -- crossing points and return times -----------------------------------------


@dataclass(frozen=True)
class CellCrossing:
    xi: HPoint
    eta: HPoint


def _circle_meet(u, v, centre, r2, prec):
    """Upper intersection of the semicircle on [u, v] with |z - centre|^2 = r2."""

    def solve(u, v, centre, r2):
        c1 = (u + v) / 2
        r1 = (u - v) ** 2 / 4
        if c1 == centre:
            raise NoIntersection("concentric circles")
        x = (r1 - r2 - c1 * c1 + centre * centre) / (2 * (centre - c1))
        return x, r1 - (x - c1) ** 2

    try:
        x, y2 = solve(u, v, centre, r2)
        if sign(y2) <= 0:
            raise NoIntersection("circles do not meet in H")
        return HPoint(x, y2)
    except MixedFieldError:
        pass
    with mpmath.workprec(prec):
        x, y2 = solve(*(to_mpf(t, prec) for t in (u, v, centre, r2)))
        if y2 <= 0:
            raise NoIntersection("circles do not meet in H")
        return HPoint(x, y2)


def xi_eta(g: Geodesic, prec: int = DEFAULT_PREC) -> CellCrossing:
    """Entry point xi on the arc s*[1,2] and exit point eta on the arc s*[a0+e0, 3/2]."""
    if g.forward is INF or g.backward is INF:
        raise NoIntersection("vertical geodesic")
    if not in_A(g):
        raise NoIntersection("geodesic is not in A")
    s = sign(g.forward)
    a0, e0 = _lehner_a_eps(g.forward)
    xi = _circle_meet(g.backward, g.forward, s * Fraction(3, 2), Fraction(1, 4), prec)
    lo = Fraction(a0 + e0)
    centre = s * (lo + Fraction(3, 2)) / 2
    eta = _circle_meet(g.backward, g.forward, centre, Fraction(1, 16), prec)
    return CellCrossing(xi, eta)


def return_time(g: Geodesic, prec: int = DEFAULT_PREC):
    c = xi_eta(g, prec)
    return hyperbolic_distance(c.xi, c.eta, prec)


def return_time_transported(g: Geodesic, prec: int = DEFAULT_PREC):
    """Distance between rho(xi) and rho(eta); equal to return_time since rho is an isometry."""
    c = xi_eta(g, prec)
    m = rho_matrix(g.forward)
    return hyperbolic_distance(hpoint_apply(m, c.xi, prec), hpoint_apply(m, c.eta, prec), prec)


def re_rho_eta_closed_form(g: Geodesic):
    """(2 - r+ r-) / (3 s - r+ - r-) with r+- = rho(endpoints) and s = sign(rho(forward))."""
    m = rho_matrix(g.forward)
    rf, rb = mobius_apply(m, g.forward), mobius_apply(m, g.backward)
    s = sign(rf)

    def f(rf, rb):
        return (2 - rf * rb) / (3 * s - rf - rb)

    try:
        return f(rf, rb)
    except MixedFieldError:
        with mpmath.workprec(DEFAULT_PREC):
            return f(to_mpf(rf), to_mpf(rb))


def re_rho_eta(g: Geodesic, prec: int = DEFAULT_PREC):
    """Real part of rho(eta) by the closed form, checked against rho applied to xi_eta's eta."""
    closed = re_rho_eta_closed_form(g)
    direct = rho_point(xi_eta(g, prec).eta, g.forward).x
    if not _close(closed, direct, prec):
        raise ValueError(f"closed form {closed} disagrees with {direct}")
    return closed


def _close(a, b, prec=DEFAULT_PREC, tol_bits=TOL_BITS) -> bool:
    if not isinstance(a, mpmath.mpf) and not isinstance(b, mpmath.mpf):
        try:
            return a == b
        except MixedFieldError:
            pass
    with mpmath.workprec(prec):
        return abs(to_mpf(a, prec) - to_mpf(b, prec)) <= mpmath.mpf(2) ** -tol_bits


def eval_eq7_formula(g: Geodesic, prec: int = DEFAULT_PREC) -> dict:
    """Closed-form log expression for the return time, evaluated literally (report only).

    Each endpoint's e0 is the first Lehner sign of its absolute value, which
    is only defined when that value lies in [1, 2).
    """
    if not in_A(g):
        raise NoIntersection("geodesic is not in A")
    e = sign(g.forward)

    def eps0(v):
        av = v if sign(v) > 0 else -v
        if compare(av, 1) < 0 or compare(av, 2) >= 0:
            raise FormulaUndefined(f"|{v}| is outside [1, 2)")
        return _lehner_a_eps(v)[1]

    ef, eb = eps0(g.forward), eps0(g.backward)
    m = rho_matrix(g.forward)
    with mpmath.workprec(prec):
        rf, rb = to_mpf(mobius_apply(m, g.forward), prec), to_mpf(mobius_apply(m, g.backward), prec)
        num = (rf + e * ef) * (rf + 2 * e * ef) * (1 - rb)
        den = (rb + e * eb) * (rb + 2 * e * eb) * (1 - rf)
        if den == 0 or num / den <= 0:
            raise FormulaUndefined("log argument is not positive")
        value = mpmath.log(num / den) / 2
        rt = return_time(g, prec)
        return {"formula": value, "return_time": rt, "difference": value - rt}


# -- closed geodesics ----------------------------------------------------------


def _is_primitive(word: tuple) -> bool:
    n = len(word)
    return all(word[:k] * (n // k) != word for k in range(1, n) if n % k == 0)


def periodic_pair(period: Sequence[LehnerDigit]):
    """(forward, backward) of the geodesic coded by a purely periodic Lehner word.

    backward = -<<reversed dual word>>, which equals the conjugate of forward.
    """
    fwd = value_of_periodic(DigitSequence("lehner", (), tuple(period)))
    dual = value_of_periodic(DigitSequence("farey", (), dual_of_period(period)))
    return fwd, -dual


def closed_geodesic_test(period: Sequence[LehnerDigit]) -> tuple[bool, int]:
    """(closed, number of rho_bar steps that return the endpoint pair to itself)."""
    period = tuple(period)
    if not period:
        raise InvalidPeriod("empty period")
    if not _is_primitive(period):
        raise InvalidPeriod("period is a power of a shorter word")
    if all(d is LehnerDigit.D21 for d in period):
        raise InvalidPeriod("the period (2,-1) codes the cusp 1, not a geodesic")
    x, y = periodic_pair(period)
    if not in_S(x, y):
        raise InvalidPeriod(f"endpoint pair ({x}, {y}) is not in S")
    r = len(period)
    s = math.prod(-d.eps for d in period)
    p = (x, y)
    for _ in range(r):
        p = rho_bar(*p)
    if p != (s * x, s * y):
        raise InvalidPeriod("rho_bar^r does not scale the pair by the period sign")
    n = r if s == 1 else 2 * r
    for _ in range(n - r):
        p = rho_bar(*p)
    return p == (x, y), n


# -- Farey tessellation --------------------------------------------------------


def orbit_of_zero(pq) -> UnimodularMap:
    """M in PSL(2,Z) with M(0) = pq, built from Bezout coefficients."""
    pq = normalize(pq)
    if pq is INF:
        return UnimodularMap(1, 1, -1, 0)
    pq = Fraction(pq)
    p, q = pq.numerator, pq.denominator
    if p == 0:
        return UnimodularMap.identity()
    a = 1 if abs(p) == 1 else pow(q, -1, abs(p))
    c, rem = divmod(a * q - 1, p)
    assert rem == 0
    return UnimodularMap(a, p, c, q)
