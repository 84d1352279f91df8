"""Lehner expansions on [1, 2) with digits (2,-1) and (1,+1)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cf_core import (
    DigitSequence,
    FareyDigit,
    LehnerDigit,
    evaluate_word,
    lehner_word_terms,
    run_orbit,
    value_of_periodic,
)
from .errors import (
    NotQuadratic,
    OutOfDomain,
    TailPastTermination,
    UnsupportedHead,
)
from .numeric import INF, Surd, UnimodularMap, compare, conjugate, discriminant, normalize

D21, D11 = LehnerDigit.D21, LehnerDigit.D11
HALF3 = Fraction(3, 2)


@dataclass(frozen=True)
class SignedTail:
    sign: int
    value: object
    index: int

    @property
    def signed_value(self):
        return self.sign * self.value


def _check_unit_interval(x):
    x = normalize(x)
    if x is INF or compare(x, 1) < 0 or compare(x, 2) >= 0:
        raise OutOfDomain(f"{x} is not in [1, 2)")
    return x


def lehner_map(x):
    x = _check_unit_interval(x)
    return 1 / (2 - x) if compare(x, HALF3) < 0 else 1 / (x - 1)


def lehner_step(x):
    x = _check_unit_interval(x)
    if compare(x, HALF3) < 0:
        return D21, 1 / (2 - x)
    return D11, 1 / (x - 1)


def _orbit_step(t):
    if t == 2:
        return None
    return lehner_step(t)


def lehner_expand(x, max_digits: int = 100_000) -> DigitSequence:
    """Lehner digits of x; rationals end in the terminal form read with tail 1.

    A rational orbit reaches 2 exactly, always through the digit (1,+1) from 3/2.
    The final (1,+1) is then rewritten as (2,-1)(1,+1) so that
    ``evaluate_word(terms, tail=1)`` returns x.
    """
    x = _check_unit_interval(x)
    seq, last = run_orbit(x, _orbit_step, max_digits, "lehner")
    if last is None:
        return seq
    digits = seq.preperiod
    assert digits and digits[-1] is D11
    return DigitSequence("lehner", digits[:-1] + (D21, D11))


def lehner_value(seq: DigitSequence):
    """Value of a Lehner sequence; finite words use tail 1."""
    return value_of_periodic(seq)


def lehner_from_rcf(head: int, rcf: DigitSequence) -> DigitSequence:
    """Insertion: [1; n1, n2, ...] -> (2,-1)^(n1-1) (1,+1) (2,-1)^(n2-1) (1,+1) ..."""
    if head != 1:
        raise UnsupportedHead(f"head must be 1, got {head}")

    def block(ns):
        out = []
        for n in ns:
            out += [D21] * (n - 1) + [D11]
        return tuple(out)

    return DigitSequence("lehner", block(rcf.preperiod), block(rcf.period))


def _tail_steps(x):
    """Yield (digit, L^(k+1)(x)) along the orbit of x, stopping at 2."""
    while True:
        if x == 2:
            return
        d, x = lehner_step(x)
        yield d, x


def tail_map(digits: Sequence[LehnerDigit]) -> UnimodularMap:
    """The PSL(2,Z) map sending x to its signed tail after ``digits``.

    t_m = 1/(s_(m-1) a_m - t_(m-1)) where s is the running sign, t_(-1) = x.
    """
    m = UnimodularMap.identity()
    s = 1
    for d in digits:
        m = UnimodularMap(0, 1, -1, s * d.a) @ m
        s *= -d.eps
    return m


def lehner_tail(x, m: int) -> SignedTail:
    """t_m(x) = (-e0)...(-e_m) L^(m+1)(x)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    x = _check_unit_interval(x)
    s = 1
    for k, (d, v) in enumerate(_tail_steps(x)):
        s *= -d.eps
        if k == m:
            return SignedTail(s, v, m)
    raise TailPastTermination(f"expansion of {x} ends before digit {m + 1}")


def pure_periodicity_criterion(x) -> bool:
    x = normalize(x)
    if not isinstance(x, Surd):
        raise NotQuadratic(f"{x} is rational")
    return compare(x, 1) > 0 and compare(x, 2) < 0 and compare(conjugate(x), 1) < 0


def dual_of_period(period: Sequence[LehnerDigit]) -> tuple[FareyDigit, ...]:
    """Reverse the period and send (a, e) to (e/a)."""
    return tuple(d.to_farey() for d in reversed(period))


def psl2z_equivalent(x, y, max_digits: int = 100_000):
    """(equivalent, witness) where witness(x) == y when equivalent.

    Compares signed tails t_r(x), t_s(y) over one full period past the
    preperiods; the witness is tail_map(y digits)^-1 . tail_map(x digits).
    """
    x, y = normalize(x), normalize(y)
    for v in (x, y):
        if not isinstance(v, Surd):
            raise NotQuadratic(f"{v} is not a quadratic irrational")
    if x == y:
        return True, UnimodularMap.identity()
    if discriminant(x) != discriminant(y):
        return False, None
    sx, sy = lehner_expand(x, max_digits), lehner_expand(y, max_digits)

    def signed_tails(seq, v):
        start = max(0, len(seq.preperiod) - 1)
        n = start + len(seq.period)
        digits = list(seq.digits(n + 1))
        out = {}
        for r in range(start, n):
            t = lehner_tail(v, r)
            out.setdefault(t.signed_value, r)
        return digits, out

    dx, tx = signed_tails(sx, x)
    dy, ty = signed_tails(sy, y)
    for val, r in tx.items():
        if val in ty:
            s = ty[val]
            w = tail_map(dy[: s + 1]).inverse() @ tail_map(dx[: r + 1])
            return True, w
    return False, None


def transfer_sides_L(x):
    """Both sides of the transfer identity for the density 1/(t-1).

    Inverse branches 2 - 1/x and 1 + 1/x, each with |L'| = x^2.
    """
    x = normalize(x)
    if x is INF or compare(x, 1) <= 0 or compare(x, 2) >= 0:
        raise OutOfDomain(f"{x} is not in (1, 2)")
    x = Fraction(x) if isinstance(x, int) else x

    def f(t):
        return 1 / (t - 1)

    y1, y2 = 2 - 1 / x, 1 + 1 / x
    w = 1 / (x * x)
    return f(y1) * w + f(y2) * w, f(x)


def transfer_check_L(x) -> bool:
    lhs, rhs = transfer_sides_L(x)
    return lhs == rhs


def word_value(digits: Sequence[LehnerDigit], tail=1):
    return evaluate_word(lehner_word_terms(digits), tail)
