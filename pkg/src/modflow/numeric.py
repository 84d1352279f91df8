"""Exact arithmetic over Q and real quadratic fields Q(sqrt d).

Rationals are plain ``fractions.Fraction`` values, irrational quadratic
numbers are :class:`Surd` instances and the single projective infinity is
:data:`INF`.  Arithmetic between a ``Surd`` and a ``Fraction`` (or ``int``)
stays exact; arithmetic between surds of different fields raises
:class:`MixedFieldError`.
"""
from __future__ import annotations

import ast
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath

from .errors import InvalidNumber, MixedFieldError


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __neg__(self):
        return self

    def __hash__(self):
        return hash("modflow-infinity")

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return (f, m) with n == f*f*m and m squarefree."""
    if n > 10**12:
        from sympy import factorint

        f, m = 1, 1
        for prime, e in factorint(int(n)).items():
            prime, e = int(prime), int(e)
            f *= prime ** (e // 2)
            m *= prime ** (e % 2)
        return f, m
    f, m = 1, n
    k = 2
    while k * k <= m:
        while m % (k * k) == 0:
            m //= k * k
            f *= k
        k += 1
    return f, m


@dataclass(frozen=True)
class Surd:
    """The irrational number (p + q*sqrt(d)) / r in canonical form.

    Build instances through :func:`surd` unless the fields are already
    canonical; the constructor only validates.
    """

    p: int
    q: int
    d: int
    r: int

    def __post_init__(self):
        if self.r <= 0 or self.q == 0 or self.d <= 1:
            raise InvalidNumber(f"non-canonical surd {tuple(self)}")
        if math.gcd(math.gcd(self.p, self.q), self.r) != 1:
            raise InvalidNumber(f"non-canonical surd {tuple(self)}")
        f, _ = _squarefree_split(self.d)
        if f != 1:
            raise InvalidNumber(f"d={self.d} is not squarefree")

    def __iter__(self):
        return iter((self.p, self.q, self.d, self.r))

    @property
    def parts(self) -> tuple[Fraction, Fraction]:
        """(a, b) with value a + b*sqrt(d)."""
        return Fraction(self.p, self.r), Fraction(self.q, self.r)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Surd):
            if other.d != self.d:
                raise MixedFieldError(f"sqrt({self.d}) and sqrt({other.d}) do not mix")
            return other.parts
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.parts
        return from_parts(a + o[0], b + o[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.p, -self.q, self.d, self.r)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.parts
        return from_parts(a - o[0], b - o[1], self.d)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.parts
        c, e = o
        return from_parts(a * c + b * e * self.d, a * e + b * c, self.d)

    __rmul__ = __mul__

    def reciprocal(self):
        a, b = self.parts
        norm = a * a - b * b * self.d
        return from_parts(a / norm, -b / norm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o[1] == 0:
            if o[0] == 0:
                raise ZeroDivisionError("division of a surd by zero")
            a, b = self.parts
            return from_parts(a / o[0], b / o[0], self.d)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        if self._coerce(other) is None:
            return NotImplemented
        return self.reciprocal() * other

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.reciprocal()
        out = Fraction(1)
        for _ in range(abs(n)):
            out = base * out
        return out

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- order -------------------------------------------------------------

    def sign(self) -> int:
        p, q = self.p, self.q
        if p >= 0 and q > 0:
            return 1
        if p <= 0 and q < 0:
            return -1
        bigger_rational = p * p > q * q * self.d
        if p > 0:
            return 1 if bigger_rational else -1
        return -1 if bigger_rational else 1

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    def __float__(self):
        return to_float(self)

    def __floor__(self):
        return floor_exact(self)

    def __repr__(self):
        return f"Surd({format_exact(self)})"


ExactReal = Union[Fraction, Surd, _Infinity]


def from_parts(a: Fraction, b: Fraction, d: int):
    """Canonical value of a + b*sqrt(d) for squarefree d > 1."""
    if b == 0:
        return Fraction(a)
    r = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
    return Surd(int(a * r), int(b * r), d, r)


def surd(p: int, q: int, d: int, r: int = 1):
    """Normalise (p + q*sqrt(d)) / r; collapses to a Fraction when rational."""
    if r == 0:
        raise InvalidNumber("zero denominator")
    if d < 0:
        raise InvalidNumber("complex surds are not supported")
    if r < 0:
        p, q, r = -p, -q, -r
    f, m = _squarefree_split(d) if d > 0 else (0, 1)
    if m == 1 or q == 0:
        return Fraction(p + q * f, r)
    q *= f
    g = math.gcd(math.gcd(p, q), r)
    return Surd(p // g, q // g, m, r // g)


def sqrt_exact(x) -> Union[Fraction, Surd]:
    """Square root of a non-negative rational."""
    x = Fraction(x)
    if x < 0:
        raise InvalidNumber("square root of a negative number")
    return surd(0, 1, x.numerator * x.denominator, x.denominator)


def normalize(x) -> ExactReal:
    """Canonical form of an int, Fraction, Surd, INF or raw (p, q, d, r) tuple."""
    if x is INF:
        return INF
    if isinstance(x, tuple):
        return surd(*x)
    if isinstance(x, Surd):
        return surd(*x)
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise InvalidNumber(f"not an exact real: {x!r}")


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, Surd)) or x is INF


def conjugate(x):
    if x is INF:
        raise InvalidNumber("infinity has no conjugate")
    if isinstance(x, Surd):
        return Surd(x.p, -x.q, x.d, x.r)
    return Fraction(x)


def sign(x) -> int:
    if isinstance(x, Surd):
        return x.sign()
    if x is INF:
        raise InvalidNumber("infinity has no sign")
    return (x > 0) - (x < 0)


def _split(x):
    """(rational part, pure irrational part or 0)."""
    if isinstance(x, Surd):
        a, b = x.parts
        return a, from_parts(Fraction(0), b, x.d)
    return Fraction(x), Fraction(0)


def compare(x, y) -> int:
    """Exact three-way comparison; the single INF sits above every finite value."""
    if x is INF or y is INF:
        return (x is INF) - (y is INF)
    if not isinstance(x, Surd) and not isinstance(y, Surd):
        x, y = Fraction(x), Fraction(y)
        return (x > y) - (x < y)
    if isinstance(x, Surd) and isinstance(y, Surd) and x.d != y.d:
        # sign(u - v) with u = x - rat(y) in Q(sqrt dx) and v = irr(y)
        ry, iy = _split(y)
        u = x - ry
        su, sv = sign(u), sign(iy)
        if su != sv:
            return su if su != 0 else -sv
        diff = sign(u * u - iy * iy)
        return su if diff > 0 else -su
    return sign(x - y)


def floor_exact(x) -> int:
    if isinstance(x, Surd):
        n = x.q * x.q * x.d
        s = math.isqrt(n)
        k = x.p + s if x.q > 0 else x.p - s - 1
        return k // x.r
    return math.floor(Fraction(x))


def minimal_polynomial(x: Surd) -> tuple[int, int, int]:
    """(A, B, C) with A*x^2 + B*x + C = 0, gcd 1, A >= 1."""
    if not isinstance(x, Surd):
        raise InvalidNumber("minimal polynomial is only defined here for surds")
    p, q, d, r = x
    a, b, c = r * r, -2 * p * r, p * p - q * q * d
    g = math.gcd(math.gcd(a, b), c)
    return a // g, b // g, c // g


def discriminant(x) -> int:
    a, b, c = minimal_polynomial(x)
    return b * b - 4 * a * c


def to_mpf(x, prec: int = 128):
    """Value of ``x`` as an mpmath float carrying ``prec`` bits."""
    with mpmath.workprec(prec):
        if x is INF:
            return mpmath.inf
        if isinstance(x, mpmath.mpf):
            return +x
        if isinstance(x, Surd):
            return _surd_mpf(x, prec)
        x = Fraction(x)
        return mpmath.mpf(x.numerator) / x.denominator


def _surd_mpf(x: Surd, prec: int):
    # Scaled integer approximation of p + q*sqrt(d), refined until the
    # absolute error is negligible relative to the value.
    k = prec + 16
    while True:
        n = x.q * x.q * x.d << (2 * k)
        root = math.isqrt(n)
        approx = (x.p << k) + (root if x.q > 0 else -root)
        if abs(approx) > (1 << (prec + 8)):
            return mpmath.mpf(approx) / x.r / mpmath.mpf(2) ** k
        k += prec


def to_float(x, precision_bits: int = 53):
    """Binary approximation; a Python float at 53 bits, an ``mpf`` above."""
    if precision_bits < 53:
        raise ValueError("precision_bits must be at least 53")
    if x is INF:
        return math.inf
    v = to_mpf(x, precision_bits)
    return float(v) if precision_bits == 53 else v


# -- text syntax ---------------------------------------------------------


def _eval_node(node):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Fraction(node.value)
    if isinstance(node, ast.Name) and node.id in ("inf", "oo", "infinity"):
        return INF
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Add, ast.Sub, ast.Mult, ast.Div)):
        a, b = _eval_node(node.left), _eval_node(node.right)
        if a is INF or b is INF:
            raise InvalidNumber("infinity cannot take part in arithmetic")
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if b == 0:
            raise InvalidNumber("zero denominator")
        return a / b
    if (
        isinstance(node, ast.Call)
        and isinstance(node.func, ast.Name)
        and node.func.id == "sqrt"
        and len(node.args) == 1
    ):
        arg = _eval_node(node.args[0])
        if isinstance(arg, Surd) or arg is INF:
            raise InvalidNumber("sqrt takes a rational argument")
        if arg < 0:
            raise InvalidNumber("complex surds are not supported")
        return sqrt_exact(arg)
    raise InvalidNumber(f"unsupported syntax at column {getattr(node, 'col_offset', '?')}")


def parse_exact(text: str) -> ExactReal:
    """Parse "p/q", "(p+q*sqrt(d))/r", "sqrt(d)", integers or "inf"."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise InvalidNumber(f"cannot parse {text!r}: {exc.msg} at column {exc.offset}") from None
    return _eval_node(tree)


def format_exact(x) -> str:
    if x is INF:
        return "inf"
    if isinstance(x, Surd):
        p, q, d, r = x
        rad = f"sqrt({d})" if abs(q) == 1 else f"{abs(q)}*sqrt({d})"
        if p == 0:
            body = rad if q > 0 else f"-{rad}"
        else:
            body = f"{p}{'+' if q > 0 else '-'}{rad}"
        if r == 1:
            return body
        if p == 0 and q > 0 and abs(q) == 1:
            return f"{body}/{r}"
        return f"({body})/{r}"
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- projective integer matrices -------------------------------------------


@dataclass(frozen=True, init=False)
class UnimodularMap:
    """Integer 2x2 matrix up to sign, acting by Mobius transformations."""

    a: int
    b: int
    c: int
    d: int

    def __init__(self, a: int, b: int, c: int, d: int):
        if a * d - b * c == 0:
            raise InvalidNumber("singular matrix")
        g = math.gcd(math.gcd(a, b), math.gcd(c, d))
        entries = [a // g, b // g, c // g, d // g]
        first = next(e for e in entries if e != 0)
        if first < 0:
            entries = [-e for e in entries]
        for name, val in zip("abcd", entries):
            object.__setattr__(self, name, val)

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "UnimodularMap") -> "UnimodularMap":
        return UnimodularMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "UnimodularMap":
        return UnimodularMap(self.d, -self.b, -self.c, self.a)

    def transpose(self) -> "UnimodularMap":
        return UnimodularMap(self.a, self.c, self.b, self.d)

    def __pow__(self, n: int) -> "UnimodularMap":
        base = self if n >= 0 else self.inverse()
        out = UnimodularMap.identity()
        for _ in range(abs(n)):
            out = out @ base
        return out

    def __call__(self, x):
        return mobius_apply(self, x)

    def as_rows(self):
        return [[self.a, self.b], [self.c, self.d]]


def mobius_apply(m: UnimodularMap, x):
    """(a x + b) / (c x + d) with the projective conventions at INF."""
    if x is INF:
        return INF if m.c == 0 else Fraction(m.a, m.c)
    if isinstance(x, int):
        x = Fraction(x)
    den = m.c * x + m.d
    if den == 0:
        return INF
    return (m.a * x + m.b) / den


def sides_agree(sides, *args, prec: int = 128, tol_bits: int = 100) -> bool:
    """Evaluate ``sides(*args) -> (lhs, rhs)`` exactly and compare.

    Arguments from two different quadratic fields cannot be combined exactly,
    so those are re-evaluated with ``prec``-bit floats and compared to a
    relative tolerance of 2**-tol_bits.
    """
    try:
        lhs, rhs = sides(*args)
        return lhs == rhs
    except MixedFieldError:
        pass
    with mpmath.workprec(prec):
        lhs, rhs = sides(*[to_mpf(a, prec) for a in args])
        return abs(lhs - rhs) <= mpmath.mpf(2) ** -tol_bits * max(1, abs(rhs))
