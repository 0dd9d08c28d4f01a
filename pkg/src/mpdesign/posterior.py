"""Conjugate posterior inference for abundance and polymer composition.

Abundance: Gamma(shape, rate) prior, Poisson counts over the sampled area,
so the posterior is Gamma(shape + n, rate + m*A). Composition: Dirichlet
prior, Multinomial categorized counts, posterior Dirichlet(gamma + s).
Also provides the naive count-per-area estimator used in current practice,
HPD intervals, density grids for plotting, and a synthetic-data generator
that turns a hypothetical "true" abundance/composition into the expected
observations for a given design.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize, stats

from .cost import CostModel, categorization_fraction
from .distributions import DirichletParams, GammaParams

__all__ = [
    "FieldObservations",
    "CategorizationCounts",
    "PosteriorPair",
    "update_abundance",
    "update_composition",
    "naive_abundance_estimate",
    "hpd_interval",
    "density_grid",
    "apportion_counts",
    "synthesize_expected_data",
]


@dataclass(frozen=True)
class FieldObservations:
    """Suspected-particle counts from m sampled quadrants of equal area (m^2)."""

    quadrant_area: float
    counts: tuple[int, ...]

    def __post_init__(self):
        if self.quadrant_area <= 0:
            raise ValueError("quadrant_area must be positive")
        counts = tuple(int(c) for c in self.counts)
        if len(counts) < 1:
            raise ValueError("need at least one quadrant")
        if any(c < 0 for c in counts):
            raise ValueError("counts must be nonnegative")
        object.__setattr__(self, "counts", counts)

    @property
    def m(self) -> int:
        return len(self.counts)

    @property
    def total_count(self) -> int:
        return sum(self.counts)

    @property
    def total_area(self) -> float:
        return self.m * self.quadrant_area


@dataclass(frozen=True)
class CategorizationCounts:
    """Spectroscopy results: categorized particles per polymer class."""

    class_counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.class_counts)
        if any(c < 0 for c in counts):
            raise ValueError("class counts must be nonnegative")
        object.__setattr__(self, "class_counts", counts)

    @property
    def categorized_total(self) -> int:
        return sum(self.class_counts)


@dataclass(frozen=True)
class PosteriorPair:
    abundance: GammaParams
    composition: DirichletParams


def update_abundance(prior: GammaParams, obs: FieldObservations) -> GammaParams:
    """Conjugate update: Gamma(shape + n, rate + m*A).

    Depends on the observations only through the total count and total area.
    """
    return GammaParams(prior.shape + obs.total_count, prior.rate + obs.total_area)


def update_composition(prior: DirichletParams, cats: CategorizationCounts) -> DirichletParams:
    """Conjugate update: concentration + class counts, componentwise."""
    if len(cats.class_counts) != prior.k:
        raise ValueError(
            f"got {len(cats.class_counts)} class counts for {prior.k} classes"
        )
    return DirichletParams(
        tuple(g + s for g, s in zip(prior.concentration, cats.class_counts))
    )


def naive_abundance_estimate(obs: FieldObservations) -> float:
    """Current-practice point estimate: total count / total sampled area."""
    return obs.total_count / obs.total_area


def hpd_interval(params: GammaParams, mass: float, *, tol: float = 1e-8, max_iter: int = 200):
    """Highest-posterior-density interval of a Gamma distribution.

    Returns (lower, upper) with lower >= 0. For shape <= 1 the density is
    monotone decreasing, so the interval is left-anchored at 0. Otherwise the
    density level is found by bisection, with the endpoints at each level
    obtained by root finding on either side of the mode; convergence is to
    ``tol`` in probability mass.
    """
    if not 0.0 < mass < 1.0:
        raise ValueError("mass must be in (0, 1)")
    dist = stats.gamma(params.shape, scale=1.0 / params.rate)
    if params.shape <= 1.0:
        return 0.0, float(dist.ppf(mass))

    mode = params.mode()
    f_mode = dist.pdf(mode)
    upper_cap = float(dist.isf(min(1e-15, (1.0 - mass) / 10)))

    def interval_at_level(level):
        lower = optimize.brentq(
            lambda x: dist.pdf(x) - level, 0.0, mode, xtol=1e-14, rtol=1e-14
        )
        upper = optimize.brentq(
            lambda x: dist.pdf(x) - level, mode, upper_cap, xtol=1e-14, rtol=1e-14
        )
        return lower, upper

    lo_level, hi_level = 0.0, f_mode
    for _ in range(max_iter):
        level = 0.5 * (lo_level + hi_level)
        lower, upper = interval_at_level(level)
        contained = dist.cdf(upper) - dist.cdf(lower)
        if abs(contained - mass) < tol:
            return float(lower), float(upper)
        if contained > mass:
            lo_level = level
        else:
            hi_level = level
    raise RuntimeError(
        f"HPD search did not converge for Gamma(shape={params.shape}, "
        f"rate={params.rate}) at mass {mass}: level bracket "
        f"[{lo_level}, {hi_level}], last mass {contained}"
    )


def density_grid(params, grid, component: int | None = None) -> np.ndarray:
    """Pointwise densities on a grid, for plotting posterior curves.

    With ``GammaParams``: the Gamma density; grid points must be >= 0. With
    ``DirichletParams`` and a ``component`` index i: the marginal density of
    proportion i, which is Beta(gamma_i, gamma_0 - gamma_i); grid points must
    lie in [0, 1].
    """
    grid = np.asarray(grid, dtype=float)
    if isinstance(params, GammaParams):
        bad = grid[grid < 0]
        if bad.size:
            raise ValueError(f"grid point {bad[0]} outside support [0, inf)")
        return stats.gamma.pdf(grid, params.shape, scale=1.0 / params.rate)
    if isinstance(params, DirichletParams):
        if component is None:
            raise ValueError("component index required for Dirichlet marginals")
        if not 0 <= component < params.k:
            raise ValueError(f"component {component} out of range for k={params.k}")
        bad = grid[(grid < 0) | (grid > 1)]
        if bad.size:
            raise ValueError(f"grid point {bad[0]} outside support [0, 1]")
        gi = params.concentration[component]
        return stats.beta.pdf(grid, gi, params.total - gi)
    raise TypeError(f"unsupported parameter type {type(params).__name__}")


def apportion_counts(total: int, proportions) -> tuple[int, ...]:
    """Integer split of ``total`` proportional to ``proportions``.

    Largest-remainder rounding; the result always sums to ``total`` exactly.
    """
    p = np.asarray(proportions, dtype=float)
    if total < 0:
        raise ValueError("total must be nonnegative")
    raw = total * p / p.sum()
    base = np.floor(raw).astype(int)
    short = total - int(base.sum())
    if short:
        order = np.argsort(-(raw - base), kind="stable")
        base[order[:short]] += 1
    return tuple(int(x) for x in base)


def synthesize_expected_data(
    true_abundance: float,
    true_proportions,
    m: int,
    quadrant_area: float,
    cost: CostModel,
    total_count: int | None = None,
):
    """Expected observations for a design under assumed true parameter values.

    The total count is floor(m * A * true_abundance) (only the total enters
    the posterior), spread as evenly as possible across quadrants. The
    categorized count follows the budget rule n_bar = floor(n * q(m*A, n)),
    split across classes by largest-remainder rounding of the true
    proportions. ``total_count`` overrides the derived n when a scenario
    specifies the observed total directly.
    """
    p = np.asarray(true_proportions, dtype=float)
    if abs(p.sum() - 1.0) > 1e-9 or np.any(p < 0):
        raise ValueError("true_proportions must be a probability vector")
    if true_abundance <= 0 or m < 1:
        raise ValueError("invalid scenario")
    n = math.floor(m * quadrant_area * true_abundance) if total_count is None else int(total_count)
    base, extra = divmod(n, m)
    quadrant_counts = tuple(base + 1 if j < extra else base for j in range(m))
    obs = FieldObservations(quadrant_area, quadrant_counts)
    q = categorization_fraction(cost, m * quadrant_area, n)
    n_bar = math.floor(n * q)
    cats = CategorizationCounts(apportion_counts(n_bar, p))
    return obs, cats
