"""Piecewise Mobius interval maps, transpose duals, and the F* expansion on (1/2, 1]."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from itertools import permutations

from .cf_core import DigitSequence, LehnerDigit, run_orbit
from .errors import DegenerateDenominator, DualVerificationFailed, OutOfDomain
from .numeric import INF, UnimodularMap, compare, mobius_apply, normalize, sides_agree

D21, D11 = LehnerDigit.D21, LehnerDigit.D11

Matrix = tuple[int, int, int, int]


@dataclass(frozen=True)
class Interval:
    lo: object
    hi: object
    lo_closed: bool = True
    hi_closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lo", normalize(self.lo))
        object.__setattr__(self, "hi", normalize(self.hi))

    def contains(self, x) -> bool:
        c_lo = compare(self.lo, x)
        c_hi = compare(x, self.hi)
        return (c_lo < 0 or c_lo == 0 and self.lo_closed) and (c_hi < 0 or c_hi == 0 and self.hi_closed)


@dataclass(frozen=True)
class Cell:
    interval: Interval
    matrix: Matrix

    @property
    def det(self) -> int:
        a, b, c, d = self.matrix
        return a * d - b * c

    def as_map(self) -> UnimodularMap:
        return UnimodularMap(*self.matrix)

    def transposed(self, interval: Interval) -> "Cell":
        a, b, c, d = self.matrix
        return Cell(interval, (a, c, b, d))


@dataclass(frozen=True)
class MobiusSystem:
    carrier: Interval
    cells: tuple[Cell, ...]

    def cell_of(self, x) -> int:
        for i, cell in enumerate(self.cells):
            if cell.interval.contains(x):
                return i
        raise OutOfDomain(f"{x} lies in no cell")

    def step(self, x):
        i = self.cell_of(x)
        return i, mobius_apply(self.cells[i].as_map(), x)


@dataclass
class VerifyReport:
    ok: bool
    defects: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _same(u, v) -> bool:
    return u is v if INF in (u, v) else compare(u, v) == 0


def verify_system(s: MobiusSystem) -> VerifyReport:
    """Partition, non-singular matrices and endpoint bijection of every branch.

    Endpoint inclusion flags are not checked: only closures are compared.
    """
    defects = []
    cells = sorted(s.cells, key=cmp_to_key(lambda p, q: compare(p.interval.lo, q.interval.lo)))
    if not cells:
        return VerifyReport(False, ["no cells"])
    if not _same(cells[0].interval.lo, s.carrier.lo):
        defects.append(f"first cell starts at {cells[0].interval.lo}, carrier at {s.carrier.lo}")
    if not _same(cells[-1].interval.hi, s.carrier.hi):
        defects.append(f"last cell ends at {cells[-1].interval.hi}, carrier at {s.carrier.hi}")
    for left, right in zip(cells, cells[1:]):
        a, b = left.interval.hi, right.interval.lo
        if _same(a, b):
            continue
        kind = "overlap" if a is INF or (b is not INF and compare(a, b) > 0) else "gap"
        defects.append(f"{kind} between {a} and {b}")
    ends = {s.carrier.lo, s.carrier.hi}
    for k, cell in enumerate(cells):
        if cell.det == 0:
            defects.append(f"cell {k}: singular matrix {cell.matrix}")
            continue
        a, b, c, d = cell.matrix
        lo, hi = cell.interval.lo, cell.interval.hi
        if c != 0:
            pole = Fraction(-d, c)
            if compare(lo, pole) < 0 and (hi is INF or compare(pole, hi) < 0):
                defects.append(f"cell {k}: pole {pole} inside the cell")
                continue
        m = cell.as_map()
        images = {mobius_apply(m, lo), mobius_apply(m, hi)}
        if len(images) != 2 or not all(any(_same(i, e) for e in ends) for i in images):
            defects.append(f"cell {k}: endpoints map to {sorted(map(str, images))}, not onto the carrier")
    return VerifyReport(not defects, defects)


def natural_dual(s: MobiusSystem, dual_carrier: Interval, dual_cells) -> MobiusSystem:
    """Transpose every branch matrix onto the supplied dual partition (matched by position)."""
    dual_cells = list(dual_cells)
    if len(dual_cells) != len(s.cells):
        raise DualVerificationFailed(f"{len(dual_cells)} dual cells for {len(s.cells)} cells")
    dual = MobiusSystem(dual_carrier, tuple(c.transposed(j) for c, j in zip(s.cells, dual_cells)))
    report = verify_system(dual)
    if not report:
        raise DualVerificationFailed("; ".join(report.defects))
    return dual


def find_dual_partition(s: MobiusSystem, dual_carrier: Interval) -> list[Interval]:
    """Dual cells, in the order of ``s.cells``, for which the transposed system verifies.

    Candidate split points are preimages of the carrier endpoints under the
    transposed branches; every assignment of the resulting cells is tried.
    """
    if len(s.cells) != 2:
        raise DualVerificationFailed("partition search supports two-cell systems only")
    lo, hi = dual_carrier.lo, dual_carrier.hi
    points = set()
    for cell in s.cells:
        a, b, c, d = cell.matrix
        inv = UnimodularMap(a, c, b, d).inverse()
        for e in (lo, hi):
            p = mobius_apply(inv, e)
            if p is not INF and compare(lo, p) < 0 and (hi is INF or compare(p, hi) < 0):
                points.add(p)
    for p in sorted(points):
        parts = [Interval(lo, p, dual_carrier.lo_closed, True), Interval(p, hi, False, dual_carrier.hi_closed)]
        for order in permutations(parts):
            try:
                natural_dual(s, dual_carrier, order)
            except DualVerificationFailed:
                continue
            return list(order)
    raise DualVerificationFailed("no split point makes the transposed system a Mobius system")


FAREY_SYSTEM = MobiusSystem(
    Interval(-1, INF, True, False),
    (
        Cell(Interval(-1, 0, True, False), (-2, -1, 1, 0)),
        Cell(Interval(0, INF, False, False), (-1, 1, 1, 0)),
    ),
)

LEHNER_SYSTEM = MobiusSystem(
    Interval(1, 2, True, False),
    (
        Cell(Interval(Fraction(3, 2), 2, True, False), (0, 1, 1, -1)),
        Cell(Interval(1, Fraction(3, 2), True, False), (0, 1, -1, 2)),
    ),
)

# transpose of FAREY_SYSTEM: 2 - 1/x on (2/3, 1], 1/x - 1 on (1/2, 2/3]
FSTAR_SYSTEM = MobiusSystem(
    Interval(Fraction(1, 2), 1, False, True),
    (
        Cell(Interval(Fraction(2, 3), 1, False, True), (-2, 1, -1, 0)),
        Cell(Interval(Fraction(1, 2), Fraction(2, 3), False, True), (-1, 1, 1, 0)),
    ),
)


def mutants() -> dict[str, MobiusSystem]:
    """Corrupted copies of the built-in systems, one per defining condition."""
    lc = LEHNER_SYSTEM.carrier
    return {
        "overlap": MobiusSystem(lc, (
            Cell(Interval(Fraction(4, 3), 2), (0, 1, 1, -1)),
            Cell(Interval(1, Fraction(3, 2)), (0, 1, -1, 2)),
        )),
        "gap": MobiusSystem(lc, (
            Cell(Interval(Fraction(8, 5), 2), (0, 1, 1, -1)),
            Cell(Interval(1, Fraction(3, 2)), (0, 1, -1, 2)),
        )),
        "singular": MobiusSystem(FAREY_SYSTEM.carrier, (
            FAREY_SYSTEM.cells[0],
            Cell(Interval(0, INF, False, False), (1, 1, 1, 1)),
        )),
        "non_surjective": MobiusSystem(lc, (
            Cell(Interval(Fraction(3, 2), 2), (0, 1, 1, -1)),
            Cell(Interval(1, Fraction(3, 2)), (0, 1, -1, 3)),
        )),
        "reversed_orientation": MobiusSystem(lc, (
            Cell(Interval(Fraction(3, 2), 2), (0, 1, 1, -1)),
            Cell(Interval(1, Fraction(3, 2)), (6, -8, 4, -5)),
        )),
    }


# -- the F* expansion ----------------------------------------------------------

HALF = Fraction(1, 2)
TWO_THIRDS = Fraction(2, 3)


def _check_fstar(x):
    x = normalize(x)
    if x is INF or compare(x, HALF) <= 0 or compare(x, 1) > 0:
        raise OutOfDomain(f"{x} is not in (1/2, 1]")
    return Fraction(x) if isinstance(x, int) else x


def fstar_step(x):
    """(1/2, 2/3] -> (1,+1), 1/x - 1;  (2/3, 1] -> (2,-1), 2 - 1/x."""
    x = _check_fstar(x)
    if compare(x, TWO_THIRDS) <= 0:
        return D11, 1 / x - 1
    return D21, 2 - 1 / x


def fstar_orbit(x, max_digits: int = 100_000) -> tuple[DigitSequence, bool]:
    """Digits of x and whether the orbit left the carrier through the edge 1/2.

    A rational orbit reaches 1/2 exactly, from 2/3 through (1,+1); as for
    Lehner words, that final digit is written (2,-1)(1,+1).
    """
    x = _check_fstar(x)

    def step(t):
        return None if t == HALF else fstar_step(t)

    seq, last = run_orbit(x, step, max_digits, "fstar")
    if last is None:
        return seq, False
    digits = seq.preperiod
    return DigitSequence("fstar", digits[:-1] + (D21, D11)), True


def fstar_expand(x, max_digits: int = 100_000) -> DigitSequence:
    return fstar_orbit(x, max_digits)[0]


def transfer_sides_Fstar(x):
    """Both sides of the transfer identity for the density 1/(t(1-t))."""
    x = normalize(x)
    if x is INF or compare(x, HALF) <= 0 or compare(x, 1) >= 0:
        raise OutOfDomain(f"{x} is not in (1/2, 1)")
    x = Fraction(x) if isinstance(x, int) else x

    def f(t):
        return 1 / (t * (1 - t))

    y1, y2 = 1 / (x + 1), 1 / (2 - x)
    return f(y1) / (x + 1) ** 2 + f(y2) / (2 - x) ** 2, f(x)


def transfer_check_Fstar(x) -> bool:
    lhs, rhs = transfer_sides_Fstar(x)
    return lhs == rhs


# -- dual natural extensions ---------------------------------------------------


def dual_natext_step(s: MobiusSystem, dual: MobiusSystem, p):
    """(M_k x, N_k^-1 y) where x lies in cell k of s and N_k is the k-th dual matrix."""
    x, y = (normalize(v) for v in p)
    k = s.cell_of(x)
    m = s.cells[k].as_map()
    n_inv = dual.cells[k].as_map().inverse()
    return mobius_apply(m, x), mobius_apply(n_inv, y)


def fbar(x, y):
    """The alternate natural extension of F*: (e0 (1/x - a0), e0/(a0 + y))."""
    d, x1 = fstar_step(x)
    y = Fraction(y) if isinstance(y, int) else y
    if y + d.a == 0:
        raise DegenerateDenominator(f"y = {-d.a}")
    return x1, d.eps / (d.a + y)


def _fbar_sides(x, y, a, e):
    x1, y1 = e * (1 / x - a), e / (a + y)
    jac = 1 / (x * x * (a + y) ** 2)
    return jac / (1 + x1 * y1) ** 2, 1 / (1 + x * y) ** 2


def invariance_sides_1pxy(x, y):
    """Both sides of the Fbar invariance identity, in exact arithmetic."""
    d, _ = fstar_step(x)
    x, y = (Fraction(v) if isinstance(v, int) else v for v in (normalize(x), normalize(y)))
    if 1 + x * y == 0:
        raise DegenerateDenominator("1 + xy = 0")
    return _fbar_sides(x, y, d.a, d.eps)


def _mixed(x, y) -> bool:
    return getattr(x, "d", None) is not None and getattr(y, "d", None) is not None and x.d != y.d


def invariance_check_1pxy(x, y) -> bool:
    """h(Fbar(x,y)) |Jac Fbar| = h(x,y) for h = 1/(1+xy)^2, |Jac| = x^-2 (a0+y)^-2."""
    d, _ = fstar_step(x)
    x, y = normalize(x), normalize(y)
    x = Fraction(x) if isinstance(x, int) else x
    y = Fraction(y) if isinstance(y, int) else y
    if not _mixed(x, y) and 1 + x * y == 0:
        raise DegenerateDenominator("1 + xy = 0")
    return sides_agree(lambda u, v: _fbar_sides(u, v, d.a, d.eps), x, y)
