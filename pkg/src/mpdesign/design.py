"""Two-stage design optimizer.

Stage one chooses the number of quadrants m by minimizing the composite
expected loss

    L*(m) = w * L1*(m) + (1 - w) * E_N[L2*(n_bar(q(m*A, N)))],

where the expectation runs over the Poisson-Gamma predictive of the total
count N and q is the budget-implied categorization fraction. Stage two is the
deterministic rule q(m*A, n) applied once the count n is in hand. The weight
w defaults to 1/2 (both components then keep L* in [0, 1]); other weights are
experimental.

Each m is evaluated on its own random substream (label m), so design points
are independent and adding/removing one never perturbs the others; reruns
with the same seed are bit-identical.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from . import kernels
from .cost import CostModel, categorization_fraction, feasible_designs, normalized_cost
from .distributions import DirichletParams, GammaParams
from .loss import l1_expected, l2_expected
from .rng import RandomStream

__all__ = [
    "DesignConfig",
    "DesignCurveRow",
    "DesignCurve",
    "DesignResult",
    "PerformanceRow",
    "PerformanceCurve",
    "SweepRow",
    "expected_total_loss",
    "optimize_design",
    "performance_curve",
    "default_abundance_grid",
    "sensitivity_sweep",
    "SWEEP_AXES",
]

SWEEP_AXES = ("r2", "budget", "prior-mode")


@dataclass(frozen=True)
class DesignConfig:
    abundance_prior: GammaParams
    composition_prior: DirichletParams
    cost: CostModel
    mc_draws: int = 10_000
    seed: int = 0
    l1_weight: float = 0.5  # experimental; 0.5 keeps L* in [0, 1]

    def __post_init__(self):
        if self.mc_draws < 1000:
            raise ValueError("mc_draws must be at least 1000")
        if self.mc_draws < 10_000:
            warnings.warn("mc_draws below 10000 gives noisy design curves", stacklevel=2)
        if not 0.0 <= self.l1_weight <= 1.0:
            raise ValueError("l1_weight must be in [0, 1]")

    def stream(self) -> RandomStream:
        return RandomStream(self.seed)


@dataclass(frozen=True)
class DesignCurveRow:
    m: int
    area: float
    l1_star: float
    e_l2_star: float
    e_l2_se: float
    l_star: float
    l_star_se: float
    median_count: int  # predictive-median total count, used for "typical" summaries


@dataclass(frozen=True)
class DesignCurve:
    rows: tuple[DesignCurveRow, ...]

    def column(self, name: str) -> np.ndarray:
        return np.asarray([getattr(r, name) for r in self.rows])


@dataclass(frozen=True)
class DesignResult:
    m_star: int
    curve: DesignCurve
    q_policy_note: str = field(default="")

    @property
    def optimal_row(self) -> DesignCurveRow:
        return next(r for r in self.curve.rows if r.m == self.m_star)


@dataclass(frozen=True)
class PerformanceRow:
    true_abundance: float
    n: int
    q: float
    n_bar: int
    l2_star: float


@dataclass(frozen=True)
class PerformanceCurve:
    m: int
    rows: tuple[PerformanceRow, ...]

    def column(self, name: str) -> np.ndarray:
        return np.asarray([getattr(r, name) for r in self.rows])


@dataclass(frozen=True)
class SweepRow:
    axis: str
    value: float
    m_star: int
    typical_n_bar: int
    budget_slack: float


def _evaluate_m(m: int, config: DesignConfig, stream: RandomStream):
    """One design point: (l1, e_l2, e_l2_se, median predictive count)."""
    prior = config.abundance_prior
    cost = config.cost
    area = m * cost.quadrant_area
    if m == 0:
        return 1.0, 1.0, 0.0, 0
    g = stream.generator()
    lam = g.gamma(prior.shape, 1.0 / prior.rate, size=config.mc_draws)
    counts = g.poisson(area * lam)
    vals = kernels.l2_star_batch(
        counts,
        cost.budget_area,
        area,
        cost.count_ratio,
        cost.categorize_ratio,
        config.composition_prior.total,
    )
    e_l2 = float(vals.mean())
    se = float(vals.std(ddof=1) / math.sqrt(config.mc_draws))
    l1 = l1_expected(m, prior, cost.quadrant_area)
    return l1, e_l2, se, int(np.median(counts))


def expected_total_loss(m: int, config: DesignConfig, stream: RandomStream | None = None):
    """Composite expected loss (value, se) for sampling m quadrants.

    The L1 component is exact; the Monte Carlo standard error of the L2
    expectation propagates with its weight.
    """
    if m not in feasible_designs(config.cost):
        raise ValueError(f"m={m} outside the feasible set {feasible_designs(config.cost)}")
    stream = config.stream().child(m) if stream is None else stream
    l1, e_l2, se, _ = _evaluate_m(m, config, stream)
    w = config.l1_weight
    return w * l1 + (1.0 - w) * e_l2, (1.0 - w) * se


def _build_curve(config: DesignConfig, base_stream: RandomStream) -> DesignCurve:
    rows = []
    w = config.l1_weight
    for m in feasible_designs(config.cost):
        l1, e_l2, se, med = _evaluate_m(m, config, base_stream.child(m))
        rows.append(
            DesignCurveRow(
                m=m,
                area=m * config.cost.quadrant_area,
                l1_star=l1,
                e_l2_star=e_l2,
                e_l2_se=se,
                l_star=w * l1 + (1.0 - w) * e_l2,
                l_star_se=(1.0 - w) * se,
                median_count=med,
            )
        )
    return DesignCurve(tuple(rows))


def optimize_design(config: DesignConfig, stream: RandomStream | None = None) -> DesignResult:
    """Minimize the composite expected loss over the feasible quadrant counts.

    Ties break toward smaller m (the cheaper field campaign).
    """
    feasible = feasible_designs(config.cost)
    if len(feasible) == 0:
        raise ValueError("empty feasible design set")
    curve = _build_curve(config, config.stream() if stream is None else stream)
    losses = curve.column("l_star")
    m_star = int(curve.rows[int(np.argmin(losses))].m)
    note = (
        f"after counting n particles over {m_star} quadrants, categorize "
        f"n_bar = floor(n * q) with q = q({m_star}*A, n) from the budget rule"
    )
    return DesignResult(m_star=m_star, curve=curve, q_policy_note=note)


def performance_curve(m: int, abundance_grid, config: DesignConfig) -> PerformanceCurve:
    """Deterministic second-stage behavior across hypothetical true abundances.

    For each grid abundance: expected count n = floor(m*A*abundance), the
    budget-implied q, the categorized count n_bar, and the resulting expected
    composition loss.
    """
    if m not in feasible_designs(config.cost):
        raise ValueError(f"m={m} outside the feasible set")
    area = m * config.cost.quadrant_area
    g0 = config.composition_prior.total
    rows = []
    for lam in np.asarray(abundance_grid, dtype=float):
        if lam < 0:
            raise ValueError("abundance grid must be nonnegative")
        n = math.floor(area * lam)
        q = categorization_fraction(config.cost, area, n)
        n_bar = math.floor(n * q)
        l2 = (g0 + 1.0 - n_bar / (g0 + n_bar)) / (g0 + 1.0 + n_bar) if n_bar else 1.0
        rows.append(PerformanceRow(float(lam), n, q, n_bar, l2))
    return PerformanceCurve(m=m, rows=tuple(rows))


def default_abundance_grid(config: DesignConfig, points: int = 200) -> np.ndarray:
    """Evenly spaced true-abundance grid over (0, 4 * prior mode]."""
    prior = config.abundance_prior
    top = 4.0 * (prior.mode() if prior.shape > 1 else prior.mean())
    return np.linspace(top / points, top, points)


def _typical_summary(result: DesignResult, config: DesignConfig):
    """Categorized count and budget slack at the predictive-median total count."""
    row = result.optimal_row
    area = result.m_star * config.cost.quadrant_area
    n_med = row.median_count
    q = categorization_fraction(config.cost, area, n_med)
    n_bar = math.floor(n_med * q)
    slack = 1.0 - normalized_cost(config.cost, area, n_med, q)
    return n_bar, slack


def sensitivity_sweep(base: DesignConfig, axis: str, values) -> list[SweepRow]:
    """Re-optimize the design along one input axis.

    Axes: ``r2`` (categorize-ratio multipliers), ``budget`` (quadrant
    equivalents), ``prior-mode`` (abundance prior modes, shape fixed). Each
    value gets its own substream of the base seed, indexed by position, so
    the sweep is reproducible and order-insensitive in distribution.
    """
    if axis not in SWEEP_AXES:
        raise ValueError(f"unknown axis {axis!r}; expected one of {SWEEP_AXES}")
    values = list(values)
    if not values:
        raise ValueError("values must be nonempty")
    rows = []
    for idx, value in enumerate(values):
        cfg = _apply_axis(base, axis, float(value))
        result = optimize_design(cfg, stream=base.stream().child(idx))
        n_bar, slack = _typical_summary(result, cfg)
        rows.append(SweepRow(axis, float(value), result.m_star, n_bar, slack))
    return rows


def _apply_axis(base: DesignConfig, axis: str, value: float) -> DesignConfig:
    cost = base.cost
    if axis == "r2":
        new_cost = replace(cost, categorize_ratio=cost.categorize_ratio * value)
    elif axis == "budget":
        new_cost = CostModel.from_budget_quadrants(
            cost.quadrant_area, value, cost.count_ratio, cost.categorize_ratio
        )
    else:  # prior-mode
        prior = GammaParams.from_mode(base.abundance_prior.shape, value)
        return replace(base, abundance_prior=prior)
    return replace(base, cost=new_cost)
