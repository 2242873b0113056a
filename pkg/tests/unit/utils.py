from fractions import Fraction

from freeness_bounds.intervals import DyadicInterval
from freeness_bounds.suites import SuiteLimits

QUICK_LIMITS = SuiteLimits(
    table_n_max=6,
    monotone_n_max=4,
    oracle_n_max=4,
    oracle_r_max=2,
    dominance_n_max=4,
    random_chains=20,
    random_n_max=4,
    term_n_max=6,
    upper_n_max=6,
    bound_r_values=(1, 2),
    construction_n_values=(110,),
)


def around(interval: DyadicInterval, lo: str, hi: str) -> bool:
    """Whether ``interval`` lies inside the decimal window ``(lo, hi)``."""
    return Fraction(lo) < interval.lo and interval.hi < Fraction(hi)
