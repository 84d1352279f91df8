"""Seeded property sweeps shared by the CLI, the scripts and the acceptance tests."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .cf_core import LehnerDigit
from .dual_mobius import invariance_check_1pxy, transfer_check_Fstar
from .errors import UnknownSuite
from .farey_cf import transfer_check_F
from .geodesics import (
    CuttingSequence,
    closed_geodesic_test,
    commute_check,
    cutting_sequence_backward,
    cutting_sequence_geometric,
    decoded_geodesic,
    expected_letters,
    periodic_pair,
    rho_bar,
)
from .lehner import transfer_check_L
from .natext import OmegaPoint, jacobian_invariance_check_L, natext_inverse, natext_step
from .numeric import compare, surd

SUITES = ("transfer", "natext", "commute", "theorem1", "closed")


@dataclass(frozen=True)
class SweepConfig:
    suite: str
    samples: int = 1000
    seed: int = 0
    max_denominator: int = 1000


@dataclass
class SweepResult:
    suite: str
    passed: int = 0
    total: int = 0
    counterexample: str | None = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.passed == self.total and self.total > 0

    def record(self, ok: bool, witness) -> None:
        self.total += 1
        if ok:
            self.passed += 1
        elif self.counterexample is None:
            self.counterexample = str(witness)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "total": self.total,
            "counterexample": self.counterexample,
            "details": self.details,
        }


def random_rational(rng: random.Random, lo, hi, max_den: int, open_lo=True, open_hi=True) -> Fraction:
    """Uniform-ish rational in the interval with denominator at most ``max_den``."""
    lo, hi = Fraction(lo), Fraction(hi)
    while True:
        q = rng.randint(1, max_den)
        p = rng.randint(math.ceil(lo * q), math.floor(hi * q))
        x = Fraction(p, q)
        if (x > lo or not open_lo and x == lo) and (x < hi or not open_hi and x == hi):
            return x


def _safe(check: Callable, *args) -> bool:
    try:
        return bool(check(*args))
    except ArithmeticError:
        return False


def _transfer(cfg: SweepConfig) -> SweepResult:
    rng = random.Random(cfg.seed)
    res = SweepResult("transfer")
    per_map = {"L": 0, "F": 0, "Fstar": 0}
    for _ in range(cfg.samples):
        x = random_rational(rng, 1, 2, cfg.max_denominator)
        ok = _safe(transfer_check_L, x)
        per_map["L"] += ok
        res.record(ok, ("L", x))
        x = random_rational(rng, -1, 10, cfg.max_denominator)
        ok = _safe(transfer_check_F, x)
        per_map["F"] += ok
        res.record(ok, ("F", x))
        x = random_rational(rng, Fraction(1, 2), 1, cfg.max_denominator)
        ok = _safe(transfer_check_Fstar, x)
        per_map["Fstar"] += ok
        res.record(ok, ("Fstar", x))
    res.details = {"passed_per_map": per_map}
    return res


def _natext(cfg: SweepConfig) -> SweepResult:
    rng = random.Random(cfg.seed)
    res = SweepResult("natext")
    for _ in range(cfg.samples):
        x = random_rational(rng, 1, 2, cfg.max_denominator, open_lo=False)
        y = random_rational(rng, -1, 10, cfg.max_denominator)
        p = OmegaPoint(x, y, 1)
        res.record(_safe(lambda: natext_inverse(natext_step(p)) == p), ("inverse", x, y))
        if x + y != 0:
            res.record(_safe(jacobian_invariance_check_L, p), ("jacobian", x, y))
        u = random_rational(rng, Fraction(1, 2), 1, cfg.max_denominator, open_hi=False)
        v = random_rational(rng, -1, 10, cfg.max_denominator)
        if 1 + u * v != 0:
            res.record(_safe(invariance_check_1pxy, u, v), ("fbar", u, v))
    return res


def random_spoint(rng: random.Random, max_den: int) -> tuple[Fraction, Fraction]:
    """A rational point of S away from x = +-3/2, whose image is a corner of S."""
    while True:
        if rng.random() < 0.5:
            x, y = random_rational(rng, 1, 2, max_den), random_rational(rng, -10, 1, max_den)
        else:
            x, y = random_rational(rng, -2, -1, max_den), random_rational(rng, -1, 10, max_den)
        if abs(x) != Fraction(3, 2):
            return x, y


def surd_spoints() -> list:
    r2 = surd(0, 1, 2)
    return [(r2, -r2), (-r2, r2), (1 + r2 / 2, 1 - r2 / 2), (-(1 + r2 / 2), r2 - 1)]


def _commute(cfg: SweepConfig) -> SweepResult:
    rng = random.Random(cfg.seed)
    res = SweepResult("commute")
    points = [random_spoint(rng, cfg.max_denominator) for _ in range(cfg.samples)] + surd_spoints()
    for x, y in points:
        res.record(_safe(commute_check, x, y), (x, y))
    return res


def primitive_words(alphabet: Iterable, max_len: int) -> list[tuple]:
    out = []
    alphabet = list(alphabet)
    for n in range(1, max_len + 1):
        for w in itertools.product(alphabet, repeat=n):
            if all(w[:k] * (n // k) != w for k in range(1, n) if n % k == 0):
                out.append(w)
    return out


def theorem1_census(max_run: int = 4, max_period: int = 3) -> list[tuple[int, ...]]:
    return primitive_words(range(1, max_run + 1), max_period)


def theorem1_round_trip(word, letters: int = 50) -> bool:
    cs = CuttingSequence.periodic(word)
    g = decoded_geodesic(cs)
    fwd, bwd = expected_letters(cs, letters)
    return cutting_sequence_geometric(g, letters) == fwd and cutting_sequence_backward(g, letters) == bwd


def _theorem1(cfg: SweepConfig) -> SweepResult:
    res = SweepResult("theorem1")
    census = theorem1_census()
    for word in census[: cfg.samples]:
        res.record(_safe(theorem1_round_trip, word), word)
    res.details = {"census_size": len(census)}
    return res


def lehner_periods(max_len: int = 4) -> list[tuple[LehnerDigit, ...]]:
    """Primitive Lehner periods except the cusp word (2,-1)."""
    words = primitive_words((LehnerDigit.D21, LehnerDigit.D11), max_len)
    return [w for w in words if any(d is LehnerDigit.D11 for d in w)]


def rho_periodicity(period) -> bool:
    x, y = periodic_pair(period)
    s = math.prod(-d.eps for d in period)
    p = (x, y)
    for _ in range(len(period)):
        p = rho_bar(*p)
    if p != (s * x, s * y):
        return False
    for _ in range(len(period)):
        p = rho_bar(*p)
    return p == (x, y)


def quadratic_census(bound: int = 20, lo=1, hi=2) -> list:
    """Irrational roots in (lo, hi) of A x^2 + B x + C with 1 <= A <= bound, |B|, |C| <= bound, gcd 1."""
    out = set()
    for a in range(1, bound + 1):
        for b in range(-bound, bound + 1):
            for c in range(-bound, bound + 1):
                if math.gcd(math.gcd(a, b), c) != 1:
                    continue
                disc = b * b - 4 * a * c
                if disc <= 0 or math.isqrt(disc) ** 2 == disc:
                    continue
                for s in (1, -1):
                    x = surd(-b, s, disc, 2 * a)
                    if compare(x, lo) > 0 and compare(x, hi) < 0:
                        out.add(x)
    return sorted(out, key=lambda v: (v.d, v.r, v.p, v.q))


def _closed(cfg: SweepConfig) -> SweepResult:
    res = SweepResult("closed")
    for period in lehner_periods()[: cfg.samples]:
        name = "".join(d.code for d in period)
        res.record(_safe(lambda: rho_periodicity(period) and closed_geodesic_test(period)[0]), name)
    return res


_RUNNERS = {
    "transfer": _transfer,
    "natext": _natext,
    "commute": _commute,
    "theorem1": _theorem1,
    "closed": _closed,
}


def run_suite(cfg: SweepConfig) -> SweepResult:
    if cfg.suite not in _RUNNERS:
        raise UnknownSuite(f"unknown suite {cfg.suite!r}; choose from {', '.join(SUITES)}")
    return _RUNNERS[cfg.suite](cfg)
