from fractions import Fraction

import mpmath
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from modflow.numeric import surd

settings.register_profile("default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SQRT2 = surd(0, 1, 2)
SQRT5 = surd(0, 1, 5)
PHI = surd(1, 1, 5, 2)


def rationals(lo, hi, max_den=500, closed_lo=False, closed_hi=False):
    """Fractions strictly (or not) inside (lo, hi)."""
    lo, hi = Fraction(lo), Fraction(hi)

    def ok(x):
        return (x > lo or closed_lo and x == lo) and (x < hi or closed_hi and x == hi)

    return st.fractions(min_value=lo, max_value=hi, max_denominator=max_den).filter(ok)


def squarefree(n: int) -> bool:
    return n > 1 and all(n % (k * k) for k in range(2, int(n ** 0.5) + 1))


def surds(d_max=30, coef=12):
    """Irrational (p + q sqrt d)/r with small coefficients."""
    return st.builds(
        surd,
        st.integers(-coef, coef),
        st.integers(-coef, coef).filter(bool),
        st.integers(2, d_max).filter(squarefree),
        st.integers(1, coef),
    )


def mp(x, prec=200):
    """Independent float evaluation of an exact value (used only as an oracle)."""
    from modflow.numeric import Surd

    with mpmath.workprec(prec):
        if isinstance(x, Surd):
            return (mpmath.mpf(x.p) + x.q * mpmath.sqrt(x.d)) / x.r
        return mpmath.mpf(Fraction(x).numerator) / Fraction(x).denominator
