# Copyright 2024 freeness-bounds contributors.
# See LICENSE file for licensing details.
"""Exact evaluation of the chain functionals f and g and of their bounding expressions."""
import math
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from freeness_bounds.certified_reals import (
    ZERO,
    Ordering,
    RadicalSum,
    canonicalize_term,
    compare,
    radsum_add,
    radsum_scale,
)
from freeness_bounds.chains import (
    Chain,
    SixfoldProfile,
    binom_cap,
    validate_chain,
    validate_profile,
)
from freeness_bounds.errors import DomainError, InvalidChainError

BValue = Union[int, Fraction]


def term_value(b: BValue, d: int, n: int, r: int) -> RadicalSum:
    """``[r * binom(n - ceil(b), n - d)]^(1/d)`` as a canonical radical."""
    b = Fraction(b)
    if b <= 0 or d < 1 or r < 1:
        raise DomainError(f"term needs b > 0, d >= 1 and r >= 1, got b={b}, d={d}, r={r}")
    if math.ceil(b) > n or d > n:
        raise DomainError(f"term needs ceil(b) <= n and d <= n, got b={b}, d={d}, n={n}")
    return RadicalSum([canonicalize_term(1, r * binom_cap(n, b, d), d)])


def _require_valid_chain(c: Chain):
    violations = validate_chain(c)
    if violations:
        raise InvalidChainError(
            f"invalid chain {c}: " + "; ".join(str(v) for v in violations), violations
        )


def f_eval(c: Chain, r: int) -> RadicalSum:
    """``sum_i (b_i - b_{i+1}) [r binom(n - ceil(b_i), n - d_i)]^(1/d_i)``."""
    _require_valid_chain(c)
    total = ZERO
    for i, (b, d) in enumerate(c.pairs):
        total = radsum_add(total, radsum_scale(b - c.b_next(i), term_value(b, d, c.n, r)))
    return total


def g_eval(p: SixfoldProfile) -> RadicalSum:
    """``sum_i (b_i - b_{i+1}) m_i^(1/d_i)`` with ``m_0 = 1``."""
    violations = validate_profile(p)
    if violations:
        raise InvalidChainError(
            f"invalid profile {p}: " + "; ".join(str(v) for v in violations), violations
        )
    chain = p.chain
    terms = [
        canonicalize_term(b - chain.b_next(i), m, d)
        for i, ((b, d), m) in enumerate(zip(p.pairs, p.multiplicities))
    ]
    return RadicalSum(terms)


def g_bound_nonintegral(n: int, prefix: Sequence[Tuple[BValue, int]], m_i: int) -> RadicalSum:
    """Bound on g over profiles whose first non-integral entry ``b_i = 2/m_i`` sits at ``d_i = 2``.

    ``prefix`` holds the integral pairs ``(b_0, d_0) ... (b_{i-1}, d_{i-1})``. The value is

        sum_{j <= i-2} (b_j - b_{j+1}) binom_j^(1/d_j)
            + (b_{i-1} - 2/m_i) binom_{i-1}^(1/d_{i-1}) + 2 / m_i^(1/2)

    where ``binom_j = binom(n - ceil(b_j), n - d_j)``.
    """
    chain = Chain(n, tuple(prefix))
    _require_valid_chain(chain)
    if not chain.is_integral:
        raise DomainError(f"prefix must be integral, got {chain}")
    if m_i < 3:
        raise DomainError(f"the distinguished multiplicity must be at least 3, got {m_i}")
    b_last, d_last = chain.pairs[-1]
    if b_last < 1:
        raise DomainError(f"b_(i-1) must be at least 1, got {b_last}")
    if d_last <= 2:
        raise DomainError(f"d_(i-1) must exceed 2, got {d_last}")
    b_i = Fraction(2, m_i)
    terms = []
    for j, (b, d) in enumerate(chain.pairs):
        step = (b - chain.b_next(j)) if j < chain.s else (b - b_i)
        terms.append(canonicalize_term(step, binom_cap(n, b, d), d))
    # 2 / sqrt(m) = (2/m) * m^(1/2)
    terms.append(canonicalize_term(b_i, m_i, 2))
    return RadicalSum(terms)


def sumbound_profile(n: int, r: int) -> List[Tuple[int, int, RadicalSum]]:
    """For every b in 1..n, the smallest maximizing ``d(b)`` and its term value."""
    if n < 1 or r < 1:
        raise DomainError(f"sumbound needs n, r >= 1, got n={n}, r={r}")
    out = []
    for b in range(1, n + 1):
        best_d, best = b, term_value(b, b, n, r)
        for d in range(b + 1, n + 1):
            value = term_value(b, d, n, r)
            if compare(value, best) is Ordering.greater:
                best_d, best = d, value
        out.append((b, best_d, best))
    return out


def sumbound_upper(n: int, r: int) -> RadicalSum:
    """``sum_{b=1}^n max_{b <= d <= n} [r binom(n - b, n - d)]^(1/d)``."""
    total = ZERO
    for _, _, value in sumbound_profile(n, r):
        total = radsum_add(total, value)
    return total


def identity_sum(n: int, r: int) -> RadicalSum:
    """``sum_{b=1}^n r^(1/b)``: the value of f on the chain ``b = d = (n, n-1, ..., 1)``."""
    return RadicalSum([canonicalize_term(1, r, b) for b in range(1, n + 1)])
