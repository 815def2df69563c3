"""Load threshold for k-choice allocation.

For k >= 3 there is a critical density c* such that m = floor(c * n) items
with k random choices over n unit-capacity locations admit a full
allocation with probability tending to 1 when c < c* and 0 when c > c*.
The threshold comes from the root xi* of

    k = xi * (1 - exp(-xi)) / (1 - exp(-xi) - xi * exp(-xi))

via c* = xi* / (k * (1 - exp(-xi*)) ** (k - 1)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

_MAX_BISECT = 200


@dataclass(frozen=True)
class ThresholdResult:
    k: int
    xi_star: float
    c_star: float


def _ratio(xi: float) -> float:
    """Left-hand side ratio as a function of xi; monotone increasing on
    (0, inf) with limit 2 at 0+."""
    if xi < 1e-8:
        # Two-term series around 0 avoids the 0/0 cancellation.
        return 2.0 + xi / 3.0
    one_minus_exp = -math.expm1(-xi)  # 1 - e^-xi, accurate for small xi
    return xi * one_minus_exp / (one_minus_exp - xi * math.exp(-xi))


def c_star_at(k: int, xi: float) -> float:
    """Threshold density for a given k at root candidate xi."""
    return xi / (k * (-math.expm1(-xi)) ** (k - 1))


def solve_threshold(k: int, tol: float = 1e-12) -> ThresholdResult:
    """Solve the ratio equation for xi* by bracketing bisection and
    evaluate the threshold density.

    Rejects k < 3: the ratio tends to 2 at 0+ and exceeds xi everywhere,
    so no positive root exists for k <= 2 under this bracketing.
    """
    if k < 3:
        raise ValueError(f"threshold defined for k >= 3, got k={k}")
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    lo, hi = 1e-9, float(max(k, 4))
    # ratio(lo) ~ 2 < k and ratio(hi) > hi >= k, so the root is bracketed.
    for _ in range(_MAX_BISECT):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if _ratio(mid) < k:
            lo = mid
        else:
            hi = mid
    xi = 0.5 * (lo + hi)
    return ThresholdResult(k=k, xi_star=xi, c_star=c_star_at(k, xi))
