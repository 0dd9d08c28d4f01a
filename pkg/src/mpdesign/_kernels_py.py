"""Pure-NumPy fallback for the Monte Carlo hot loop.

Must stay bit-identical to the compiled version in ``_kernels.pyx``: both
evaluate, per predictive count draw, the same sequence of double-precision
operations (budget-implied q, floor to the categorized count, expected
composition variance ratio).
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def l2_star_batch(counts, budget_area, total_area, count_ratio, categorize_ratio, gamma_total):
    """Expected composition variance ratio per predictive count draw.

    For each count n: q = clip((1/c - (mA + n*r1)) / (r2*n), 0, 1) with the
    n = 0 convention q = 1; n_bar = floor(n*q); value is
    (g0 + 1 - n_bar/(g0 + n_bar)) / (g0 + 1 + n_bar).
    """
    n = np.asarray(counts, dtype=np.float64)
    safe = np.maximum(n, 1.0)
    q = (budget_area - (total_area + n * count_ratio)) / (categorize_ratio * safe)
    q = np.minimum(np.maximum(q, 0.0), 1.0)
    n_bar = np.floor(n * q)
    out = (gamma_total + 1.0 - n_bar / (gamma_total + n_bar)) / (
        gamma_total + 1.0 + n_bar
    )
    return np.where(n > 0.0, out, 1.0)
