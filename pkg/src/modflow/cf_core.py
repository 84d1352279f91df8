"""Regular continued fractions and the shared word / digit-sequence machinery.

Every expansion system in the package reads a digit as a Mobius map acting on
the tail value:

* rcf digit n:         t -> n + 1/t
* Lehner digit (a, e): t -> a + e/t
* Farey digit (f/b):   t -> f/(b + t)

so the value of an eventually periodic word is the image, under the product
of the preperiod maps, of the fixed point of the period map.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .errors import BudgetExceeded, DivisionByZero, NoRootInRange, OutOfDomain
from .numeric import INF, UnimodularMap, compare, floor_exact, mobius_apply, surd

Term = tuple[int, int]


class LehnerDigit(enum.Enum):
    D21 = (2, -1)
    D11 = (1, 1)

    @property
    def a(self) -> int:
        return self.value[0]

    @property
    def eps(self) -> int:
        return self.value[1]

    @property
    def code(self) -> str:
        return "2-" if self is LehnerDigit.D21 else "1+"

    def matrix(self) -> UnimodularMap:
        return UnimodularMap(self.a, self.eps, 1, 0)

    def to_farey(self) -> "FareyDigit":
        """(a, e) -> (e/a)."""
        return FareyDigit.Dm12 if self is LehnerDigit.D21 else FareyDigit.Dp11

    def __repr__(self):
        return self.name


class FareyDigit(enum.Enum):
    Dm12 = (-1, 2)
    Dp11 = (1, 1)

    @property
    def f(self) -> int:
        return self.value[0]

    @property
    def b(self) -> int:
        return self.value[1]

    @property
    def code(self) -> str:
        return "2-" if self is FareyDigit.Dm12 else "1+"

    def matrix(self) -> UnimodularMap:
        return UnimodularMap(0, self.f, 1, self.b)

    def to_lehner(self) -> LehnerDigit:
        return LehnerDigit.D21 if self is FareyDigit.Dm12 else LehnerDigit.D11

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class Alphabet:
    name: str
    digit_matrix: Callable
    # value substituted for the tail of a finite word
    terminal: object
    # closed interval containing every purely periodic tail value
    tail_interval: tuple
    decode: Callable
    encode: Callable
    outer: UnimodularMap = UnimodularMap.identity()


def _decode_lehner(code):
    return {"2-": LehnerDigit.D21, "1+": LehnerDigit.D11}[code]


def _decode_farey(code):
    return {"2-": FareyDigit.Dm12, "1+": FareyDigit.Dp11}[code]


ALPHABETS = {
    "rcf": Alphabet(
        "rcf", lambda n: UnimodularMap(n, 1, 1, 0), INF, (Fraction(1), INF), int, int
    ),
    "lehner": Alphabet(
        "lehner", LehnerDigit.matrix, Fraction(1), (Fraction(1), Fraction(2)),
        _decode_lehner, lambda d: d.code,
    ),
    "farey": Alphabet(
        "farey", FareyDigit.matrix, Fraction(0), (Fraction(-1), INF),
        _decode_farey, lambda d: d.code,
    ),
    "fstar": Alphabet(
        "fstar", LehnerDigit.matrix, Fraction(1), (Fraction(1), Fraction(2)),
        _decode_lehner, lambda d: d.code, UnimodularMap(0, 1, 1, 0),
    ),
}


def _primitive_root(word: tuple) -> tuple:
    n = len(word)
    for k in range(1, n + 1):
        if n % k == 0 and word[:k] * (n // k) == word:
            return word[:k]
    return word


@dataclass(frozen=True)
class DigitSequence:
    """Eventually periodic digit word; an empty period means a finite word.

    ``head`` is the integer part for rcf sequences and ``None`` otherwise.
    The constructor reduces the period to its primitive root and pulls as
    much of the preperiod into the period as possible.
    """

    alphabet: str
    preperiod: tuple = ()
    period: tuple = ()
    head: int | None = None

    def __post_init__(self):
        pre, per = tuple(self.preperiod), _primitive_root(tuple(self.period))
        while pre and per and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = per[-1:] + per[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @property
    def finite(self) -> bool:
        return not self.period

    def digits(self, n: int | None = None) -> Iterator:
        """First ``n`` digits (all of them when finite and n is None)."""
        i = 0
        for d in self.preperiod:
            if n is not None and i >= n:
                return
            yield d
            i += 1
        if not self.period:
            return
        if n is None:
            raise ValueError("an infinite sequence needs an explicit length")
        while i < n:
            for d in self.period:
                if i >= n:
                    return
                yield d
                i += 1

    def drop(self, k: int) -> "DigitSequence":
        """The sequence with its first ``k`` digits removed (head kept)."""
        pre, per = self.preperiod, self.period
        if k <= len(pre):
            return DigitSequence(self.alphabet, pre[k:], per, self.head)
        if not per:
            return DigitSequence(self.alphabet, (), (), self.head)
        k = (k - len(pre)) % len(per)
        return DigitSequence(self.alphabet, (), per[k:] + per[:k], self.head)

    def value(self):
        return value_of_periodic(self)

    def to_json(self) -> dict:
        enc = ALPHABETS[self.alphabet].encode
        return {
            "alphabet": self.alphabet,
            "head": self.head,
            "preperiod": [enc(d) for d in self.preperiod],
            "period": [enc(d) for d in self.period],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "DigitSequence":
        dec = ALPHABETS[doc["alphabet"]].decode
        return cls(
            doc["alphabet"],
            tuple(dec(d) for d in doc["preperiod"]),
            tuple(dec(d) for d in doc["period"]),
            doc.get("head"),
        )


def prepend(digits: Sequence, seq: DigitSequence) -> DigitSequence:
    return DigitSequence(seq.alphabet, tuple(digits) + seq.preperiod, seq.period, seq.head)


# -- general signed words ------------------------------------------------------


def evaluate_word(word: Sequence[Term], tail=None):
    """a0 + e0/(a1 + e1/(... a_k [+ e_k/tail])) evaluated exactly, bottom up.

    With ``tail`` None the last sign is ignored; ``INF`` behaves the same way.
    """
    if not word:
        if tail is None:
            raise ValueError("empty word without a tail")
        return tail
    a_last, e_last = word[-1]
    v = Fraction(a_last)
    if tail is not None and tail is not INF:
        if tail == 0:
            raise DivisionByZero("tail is zero")
        v = a_last + e_last / Fraction(tail) if not hasattr(tail, "d") else a_last + e_last / tail
    for a, e in reversed(word[:-1]):
        if v == 0:
            raise DivisionByZero("intermediate denominator vanished")
        v = a + e / v
    return v


def lehner_word_terms(digits) -> list[Term]:
    return [d.value for d in digits]


def farey_word_terms(digits) -> list[Term]:
    """<<(f0/b0)(f1/b1)...>> as the signed word (0, f0)(b0, f1)(b1, f2)..."""
    digits = list(digits)
    if not digits:
        return [(0, 1)]
    terms = [(0, digits[0].f)]
    for cur, nxt in zip(digits, digits[1:]):
        terms.append((cur.b, nxt.f))
    terms.append((digits[-1].b, 1))
    return terms


def word_matrix(seq_digits, alphabet: str) -> UnimodularMap:
    m = UnimodularMap.identity()
    mat = ALPHABETS[alphabet].digit_matrix
    for d in seq_digits:
        m = m @ mat(d)
    return m


def periodic_fixed_point(m: UnimodularMap, interval: tuple):
    """The fixed point of ``m`` lying in the closed ``interval``."""
    a, b, c, d = m.a, m.b, m.c, m.d
    if c == 0:
        roots = [INF] if a == d else [INF, Fraction(b, d - a)]
    else:
        # c t^2 + (d - a) t - b = 0
        disc = (d - a) ** 2 + 4 * b * c
        if disc < 0:
            raise NoRootInRange("elliptic period map has no real fixed point")
        roots = [surd(a - d, s, disc, 2 * c) for s in (1, -1)]
    lo, hi = interval
    inside = [t for t in dict.fromkeys(roots) if compare(lo, t) <= 0 and compare(t, hi) <= 0]
    if len(inside) != 1:
        raise NoRootInRange(f"fixed points {roots} vs interval {interval}")
    return inside[0]


def value_of_periodic(seq: DigitSequence):
    """Exact value of an eventually periodic (or finite) digit sequence."""
    alph = ALPHABETS[seq.alphabet]
    if seq.period:
        tail = periodic_fixed_point(word_matrix(seq.period, seq.alphabet), alph.tail_interval)
    else:
        tail = alph.terminal
    v = mobius_apply(word_matrix(seq.preperiod, seq.alphabet), tail)
    if seq.head is not None:
        v = mobius_apply(UnimodularMap(seq.head, 1, 1, 0), v)
    return mobius_apply(alph.outer, v)


# -- orbit machinery -----------------------------------------------------------


def run_orbit(x, step, max_digits: int, alphabet: str, stop=None) -> tuple[DigitSequence, object]:
    """Iterate ``step`` from ``x`` with exact cycle detection.

    ``step`` returns (digit, next_state) or None when the orbit terminates.
    Returns the digit sequence and the final state (None for cycles).
    """
    seen: dict = {}
    digits: list = []
    state = x
    while True:
        if state in seen:
            i = seen[state]
            return DigitSequence(alphabet, tuple(digits[:i]), tuple(digits[i:])), None
        if len(digits) >= max_digits:
            raise BudgetExceeded(f"no cycle or termination within {max_digits} digits")
        seen[state] = len(digits)
        out = step(state)
        if out is None:
            return DigitSequence(alphabet, tuple(digits)), state
        d, state = out
        digits.append(d)


def rcf_expand(x, max_digits: int = 100_000) -> DigitSequence:
    """Regular continued fraction [n0; n1, n2, ...] of a finite exact real."""
    if x is INF:
        raise OutOfDomain("rcf expansion of infinity")
    x = Fraction(x) if isinstance(x, int) else x
    n0 = floor_exact(x)

    def step(t):
        n = floor_exact(t)
        frac = t - n
        if frac == 0:
            return None
        return n, 1 / frac

    frac = x - n0
    if frac == 0:
        return DigitSequence("rcf", head=n0)
    seq, last = run_orbit(1 / frac, step, max_digits, "rcf")
    if last is not None:
        seq = DigitSequence("rcf", seq.preperiod + (floor_exact(last),))
    return DigitSequence("rcf", seq.preperiod, seq.period, n0)


def rcf_terms(seq: DigitSequence) -> list[Term]:
    """Finite rcf sequence as a signed word."""
    return [(seq.head, 1)] + [(n, 1) for n in seq.digits()]
