"""Variance-reduction losses for abundance and composition.

Each loss is the ratio of posterior to prior variance (trace of the
covariance for the composition vector), so smaller means more informative.
The ``*_expected`` forms are closed-form prior expectations over the not yet
observed data; the ``mc_oracle_*`` routines verify them by brute-force
simulation and are kept deliberately independent of the closed forms.

Expected losses always lie in (0, 1]; realized losses can exceed 1 for
extreme data and are not clamped.
"""

from __future__ import annotations

import numpy as np

from .distributions import DirichletParams, GammaParams, predictive_total_count
from .rng import RandomStream

__all__ = [
    "l1_realized",
    "l1_expected",
    "l2_realized",
    "l2_expected",
    "mc_oracle_l1",
    "mc_oracle_l2",
]


def l1_realized(m: int, total_count: int, prior: GammaParams, quadrant_area: float) -> float:
    """Posterior/prior variance ratio for the abundance rate given n counts.

    (rate^2/shape) * (shape + n) / (rate + m*A)^2.
    """
    if m < 0 or total_count < 0 or quadrant_area <= 0:
        raise ValueError("invalid inputs")
    a, b = prior.shape, prior.rate
    return (b**2 / a) * (a + total_count) / (b + m * quadrant_area) ** 2


def l1_expected(m: int, prior: GammaParams, quadrant_area: float) -> float:
    """Prior-expected abundance variance reduction: 1 / (1 + m*A/rate)."""
    if m < 0 or quadrant_area <= 0:
        raise ValueError("invalid inputs")
    return 1.0 / (1.0 + m * quadrant_area / prior.rate)


def l2_realized(class_counts, prior: DirichletParams, n_bar: int | None = None) -> float:
    """Posterior/prior covariance-trace ratio for the class proportions.

    Closed form: ((1+g0) / (D*(1+g0+n_bar))) * (1 - sum(((g_i+s_i)/(g0+n_bar))^2))
    with D = 1 - sum((g_i/g0)^2).
    """
    s = np.asarray(class_counts, dtype=float)
    if s.shape != (prior.k,):
        raise ValueError(f"expected {prior.k} class counts, got shape {s.shape}")
    if np.any(s < 0):
        raise ValueError("class counts must be nonnegative")
    if n_bar is not None and n_bar != s.sum():
        raise ValueError(f"class counts sum to {int(s.sum())}, expected n_bar={n_bar}")
    gamma = prior.as_array()
    g0 = prior.total
    n_bar = s.sum()
    d = 1.0 - np.sum((gamma / g0) ** 2)
    if d <= 0:
        raise ValueError("degenerate prior: zero prior covariance trace")
    post = (gamma + s) / (g0 + n_bar)
    return float((1.0 + g0) / (d * (1.0 + g0 + n_bar)) * (1.0 - np.sum(post**2)))


def l2_expected(n_bar, prior: DirichletParams):
    """Prior-expected composition variance reduction (depends on gamma only
    through its total g0):

    (g0 + 1 - n_bar/(g0 + n_bar)) / (g0 + 1 + n_bar).

    For g0 = 1 this reduces to 1/(1 + n_bar).
    """
    nb = np.asarray(n_bar, dtype=float)
    if np.any(nb < 0):
        raise ValueError("n_bar must be nonnegative")
    g0 = prior.total
    out = (g0 + 1.0 - nb / (g0 + nb)) / (g0 + 1.0 + nb)
    return float(out) if np.ndim(n_bar) == 0 else out


def mc_oracle_l1(m: int, prior: GammaParams, quadrant_area: float, draws: int, stream: RandomStream):
    """Monte Carlo estimate (value, se) of the expected abundance loss.

    Averages the realized loss over predictive total-count draws; independent
    check of the closed form in :func:`l1_expected`.
    """
    if draws < 1000:
        raise ValueError("draws must be at least 1000")
    if m == 0:
        return 1.0, 0.0
    counts = predictive_total_count(prior, m * quadrant_area, stream, size=draws)
    a, b = prior.shape, prior.rate
    vals = (b**2 / a) * (a + counts) / (b + m * quadrant_area) ** 2
    return float(vals.mean()), float(vals.std(ddof=1) / np.sqrt(draws))


def mc_oracle_l2(n_bar: int, prior: DirichletParams, draws: int, stream: RandomStream):
    """Monte Carlo estimate (value, se) of the expected composition loss.

    Simulates p ~ Dirichlet(prior), s ~ Multinomial(n_bar, p) and averages the
    realized trace ratio; independent check of :func:`l2_expected`.
    """
    if draws < 1000:
        raise ValueError("draws must be at least 1000")
    if n_bar < 0:
        raise ValueError("n_bar must be nonnegative")
    if n_bar == 0:
        return 1.0, 0.0
    g = stream.generator()
    probs = g.dirichlet(prior.as_array(), size=draws)
    counts = g.multinomial(n_bar, probs)
    gamma = prior.as_array()
    g0 = prior.total
    d = 1.0 - np.sum((gamma / g0) ** 2)
    post = (gamma + counts) / (g0 + n_bar)
    vals = (1.0 + g0) / (d * (1.0 + g0 + n_bar)) * (1.0 - np.sum(post**2, axis=1))
    return float(vals.mean()), float(vals.std(ddof=1) / np.sqrt(draws))
