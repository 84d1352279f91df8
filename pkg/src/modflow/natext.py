"""Natural extension of the Lehner map on [1,2) x [-1,oo), with an optional sign layer."""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .cf_core import FareyDigit, LehnerDigit
from .errors import DegenerateDenominator, DivisionByZero, NotInImage, OutOfDomain
from .farey_cf import farey_expand
from .lehner import lehner_step
from .numeric import INF, compare, normalize, sides_agree, sign

HALF3 = Fraction(3, 2)


@dataclass(frozen=True)
class OmegaPoint:
    x: object
    y: object
    eps: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "x", normalize(self.x))
        object.__setattr__(self, "y", normalize(self.y))
        if self.eps not in (None, 1, -1):
            raise ValueError("eps must be +1, -1 or None")

    def check(self) -> "OmegaPoint":
        if self.x is INF or compare(self.x, 1) < 0 or compare(self.x, 2) >= 0:
            raise OutOfDomain(f"x = {self.x} is not in [1, 2)")
        if self.y is INF or compare(self.y, -1) < 0:
            raise OutOfDomain(f"y = {self.y} is not in [-1, oo)")
        return self


def _as_fraction(v):
    return Fraction(v) if isinstance(v, int) else v


def natext_step(p: OmegaPoint) -> OmegaPoint:
    """(x, y) -> (e/(x - a), e/(y + a)) with (a, e) the Lehner digit of x."""
    p.check()
    d, x1 = lehner_step(p.x)
    y = _as_fraction(p.y)
    if y + d.a == 0:
        raise DivisionByZero(f"y = {y} on the {d.name} branch")
    y1 = d.eps / (y + d.a)
    eps = None if p.eps is None else -d.eps * p.eps
    return OmegaPoint(x1, y1, eps)


def natext_inverse(p: OmegaPoint) -> OmegaPoint:
    """Undo natext_step: the sign of y' picks the digit (y' < 0 for (2,-1))."""
    s = sign(p.y) if p.y is not INF else 1
    if s == 0:
        raise NotInImage("y' = 0 is not an image point")
    d = LehnerDigit.D21 if s < 0 else LehnerDigit.D11
    if p.x is INF or p.x == 0:
        raise NotInImage(f"x' = {p.x}")
    x = d.a + d.eps / _as_fraction(p.x)
    y = d.eps / _as_fraction(p.y) - d.a
    in_cell = compare(x, 1) >= 0 and compare(x, HALF3) < 0 if d is LehnerDigit.D21 else (
        compare(x, HALF3) >= 0 and compare(x, 2) < 0
    )
    if not in_cell or compare(y, -1) < 0:
        raise NotInImage(f"({p.x}, {p.y}) is not in the image")
    eps = None if p.eps is None else -d.eps * p.eps
    return OmegaPoint(x, y, eps)


def _prefix(seq, n):
    return list(seq.digits(n))


def _orbit_digits(x, n: int) -> list:
    """First n Lehner digits read off the orbit itself, stopping where it reaches 2.

    Unlike lehner_expand this keeps the last (1,+1) of a rational as it is.
    """
    out = []
    while len(out) < n and x != 2:
        d, x = lehner_step(x)
        out.append(d)
    return out


def shift_property_check(x, y, depth: int = 6) -> bool:
    """One step shifts the Lehner digits of x left and pushes (e0/a0) onto y's Farey digits."""
    p = OmegaPoint(x, y).check()
    q = natext_step(p)
    xs = _orbit_digits(p.x, depth + 1)
    ys = _prefix(farey_expand(p.y), depth)
    new_x = _orbit_digits(q.x, depth)
    new_y = _prefix(farey_expand(q.y), depth)
    return new_x == xs[1:depth + 1] and new_y == ([xs[0].to_farey()] + ys)[:depth]


def _jacobian_sides(x, y, a, e):
    x1, y1 = e / (x - a), e / (y + a)
    jac = 1 / ((x - a) ** 2 * (y + a) ** 2)
    return jac / (x1 + y1) ** 2, 1 / (x + y) ** 2


def _branch(p: OmegaPoint) -> LehnerDigit:
    p.check()
    if compare(p.x, -p.y) == 0:
        raise DegenerateDenominator("x + y = 0")
    d, _ = lehner_step(p.x)
    if compare(p.y, -d.a) == 0:
        raise DivisionByZero(f"y = {p.y} on the {d.name} branch")
    return d


def jacobian_sides_L(p: OmegaPoint):
    """h(L(x,y)) |Jac| and h(x,y) for h = 1/(x+y)^2."""
    d = _branch(p)
    return _jacobian_sides(_as_fraction(p.x), _as_fraction(p.y), d.a, d.eps)


def jacobian_invariance_check_L(p: OmegaPoint) -> bool:
    d = _branch(p)
    return sides_agree(lambda x, y: _jacobian_sides(x, y, d.a, d.eps), _as_fraction(p.x), _as_fraction(p.y))
