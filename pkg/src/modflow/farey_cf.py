"""Farey expansions on [-1, oo) with digits (-1/2) and (+1/1), and conversion from RCF."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .cf_core import DigitSequence, FareyDigit, Term, evaluate_word, farey_word_terms, rcf_expand, run_orbit
from .errors import OutOfDomain, PositionOutOfRange, TailPastTermination
from .lehner import SignedTail
from .numeric import INF, compare, normalize, sign

Dm12, Dp11 = FareyDigit.Dm12, FareyDigit.Dp11


def _check_domain(x):
    x = normalize(x)
    if x is INF or compare(x, -1) < 0:
        raise OutOfDomain(f"{x} is not in [-1, oo)")
    return Fraction(x) if isinstance(x, int) else x


def farey_step(x):
    """(digit, F(x)), or None when x == 0 (the orbit terminates)."""
    x = _check_domain(x)
    if x == 0:
        return None
    if sign(x) < 0:
        return Dm12, -1 / x - 2
    return Dp11, 1 / x - 1


def farey_expand(x, max_digits: int = 100_000) -> DigitSequence:
    x = _check_domain(x)
    seq, _ = run_orbit(x, farey_step, max_digits, "farey")
    return seq


def farey_value(digits: Sequence[FareyDigit]):
    """<<(f1/b1)...(fk/bk)>> of a finite Farey word."""
    return evaluate_word(farey_word_terms(digits))


def farey_tail(x, m: int) -> SignedTail:
    """tau_m(x) = (-f1)...(-f_m) F^m(x)."""
    if m < 1:
        raise ValueError("m must be at least 1")
    x = _check_domain(x)
    s = 1
    for k in range(m):
        out = farey_step(x)
        if out is None:
            raise TailPastTermination(f"expansion ends after {k} digits")
        d, x = out
        s *= -d.f
    return SignedTail(s, x, m)


# -- insertion identities ------------------------------------------------------


def _pair(word: Sequence[Term], position: int):
    if not 0 <= position < len(word) - 1:
        raise PositionOutOfRange(f"position {position} in a word of length {len(word)}")
    return word[position], word[position + 1]


def insertion_rewrite(word: Sequence[Term], position: int) -> list[Term]:
    """A + e/(B + xi) = (A + e) - e/(1 + 1/(B - 1 + xi))."""
    (a, e), (b, eb) = _pair(word, position)
    return [*word[:position], (a + e, -e), (1, 1), (b - 1, eb), *word[position + 2:]]


def alt_insertion_rewrite(word: Sequence[Term], position: int) -> list[Term]:
    """A + e/(B + xi) = (A - e) + e/(1 - 1/(B + 1 + xi))."""
    (a, e), (b, eb) = _pair(word, position)
    return [*word[:position], (a - e, e), (1, -1), (b + 1, eb), *word[position + 2:]]


# -- RCF -> Farey --------------------------------------------------------------


def _block(n: int) -> tuple:
    return (Dp11,) + (Dm12,) * n


def _emit(m0: int, rest: DigitSequence) -> DigitSequence:
    """Farey word of [m0; rest] where m0 >= 0 (value m0 + [0; rest])."""
    if rest.finite:
        ds = list(rest.digits())
        out: list = []
        m = m0
        while ds:
            out += _block(m)
            m, ds = ds[0] - 1, ds[1:]
        if m > 0:
            out += _block(m - 1)
        return DigitSequence("farey", tuple(out))
    pre = list(_block(m0))
    for n in rest.preperiod:
        pre += _block(n - 1)
    per: list = []
    for n in rest.period:
        per += _block(n - 1)
    return DigitSequence("farey", tuple(pre), tuple(per))


def _canonical_rcf(rcf: DigitSequence) -> DigitSequence:
    # [..., n, 1] -> [..., n + 1]
    pre = rcf.preperiod
    if rcf.finite and len(pre) >= 2 and pre[-1] == 1:
        pre = pre[:-2] + (pre[-2] + 1,)
    return DigitSequence("rcf", pre, rcf.period, rcf.head)


def farey_from_rcf(sgn: int, head: int, rcf: DigitSequence) -> DigitSequence:
    """Farey expansion of y = sgn * [head; rcf digits] built blockwise.

    y > 0:       (1/1)(-1/2)^n0 (1/1)(-1/2)^(n1-1) ...
    -1 < y < 0:  n1 >= 2: (-1/2)(1/1)(-1/2)^(n1-2) (1/1)(-1/2)^(n2-1) ...
                 n1 == 1: (-1/2)^(n2+1) (1/1)(-1/2)^(n3-1) ...
    A finite RCF word ends with (1/1)(-1/2)^(n_last-2), or nothing when
    n_last is 1.
    """
    rcf = _canonical_rcf(DigitSequence("rcf", rcf.preperiod, rcf.period))
    if sgn > 0:
        if head < 0 or (head == 0 and rcf.finite and not rcf.preperiod):
            raise OutOfDomain("y must be positive in the sgn=+1 case")
        return _emit(head, rcf)
    if head != 0 or (rcf.finite and not rcf.preperiod):
        raise OutOfDomain("negative y must lie in (-1, 0)")
    n1 = next(rcf.digits(1))
    rest = rcf.drop(1)
    if n1 >= 2:
        tail = _emit(n1 - 2, rest)
        return DigitSequence("farey", (Dm12,) + tail.preperiod, tail.period)
    if rest.finite and not rest.preperiod:
        raise OutOfDomain("y = -1 is not in (-1, 0)")
    n2 = next(rest.digits(1))
    rest = rest.drop(1)
    lead = (Dm12,) * n2
    if rest.finite and not rest.preperiod:
        return DigitSequence("farey", lead)
    tail = _emit(next(rest.digits(1)) - 1, rest.drop(1))
    return DigitSequence("farey", (Dm12,) + lead + tail.preperiod, tail.period)


def farey_from_value(y) -> DigitSequence:
    """farey_from_rcf applied to the RCF expansion of |y|."""
    y = normalize(y)
    if y is INF or compare(y, -1) <= 0 or y == 0:
        raise OutOfDomain(f"{y} is not in (-1, 0) or (0, oo)")
    s = sign(y)
    r = rcf_expand(y if s > 0 else -y)
    return farey_from_rcf(s, r.head, r)


def transfer_sides_F(x):
    """Both sides of the transfer identity for the density 1/((t+1)(t+2))."""
    x = normalize(x)
    if x is INF or compare(x, -1) <= 0:
        raise OutOfDomain(f"{x} is not in (-1, oo)")
    x = Fraction(x) if isinstance(x, int) else x

    def f(t):
        return 1 / ((t + 1) * (t + 2))

    y1, y2 = -1 / (x + 2), 1 / (x + 1)
    return f(y1) / (x + 2) ** 2 + f(y2) / (x + 1) ** 2, f(x)


def transfer_check_F(x) -> bool:
    lhs, rhs = transfer_sides_F(x)
    return lhs == rhs
