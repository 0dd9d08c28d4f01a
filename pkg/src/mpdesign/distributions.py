"""Distributions underlying the abundance/composition model.

Gamma parameters use the shape/RATE convention everywhere: the rate has units
of area (m^2) and adds to the sampled area in the conjugate update. Mixing up
rate and scale is the classic bug here, so every function that touches a
``GammaParams`` documents the convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rng import RandomStream

__all__ = [
    "GammaParams",
    "DirichletParams",
    "gamma_sample",
    "poisson_sample",
    "predictive_total_count",
    "dirichlet_sample",
    "dirichlet_cov_trace",
    "dirichlet_multinomial_moments",
]


@dataclass(frozen=True)
class GammaParams:
    """Gamma(shape, rate) parameters for the abundance rate (MP m^-2).

    ``rate`` is the *rate* (inverse scale), in m^2.
    """

    shape: float
    rate: float

    def __post_init__(self):
        if not (self.shape > 0 and np.isfinite(self.shape)):
            raise ValueError(f"shape must be positive and finite, got {self.shape}")
        if not (self.rate > 0 and np.isfinite(self.rate)):
            raise ValueError(f"rate must be positive and finite, got {self.rate}")

    def mean(self) -> float:
        return self.shape / self.rate

    def variance(self) -> float:
        return self.shape / self.rate**2

    def mode(self) -> float:
        """Density mode; defined only for shape >= 1."""
        if self.shape < 1:
            raise ValueError("mode undefined for shape < 1")
        return (self.shape - 1.0) / self.rate

    @classmethod
    def from_mode(cls, shape: float, mode: float) -> "GammaParams":
        """Build from (shape, mode); requires shape > 1, rate = (shape-1)/mode."""
        if shape <= 1:
            raise ValueError("mode parametrization requires shape > 1")
        if mode <= 0:
            raise ValueError("mode must be positive")
        return cls(shape, (shape - 1.0) / mode)


@dataclass(frozen=True)
class DirichletParams:
    """Dirichlet concentration vector for the k polymer-class proportions."""

    concentration: tuple[float, ...]

    def __post_init__(self):
        conc = tuple(float(g) for g in np.atleast_1d(self.concentration))
        if len(conc) < 2:
            raise ValueError("need at least two classes")
        if not all(g > 0 and np.isfinite(g) for g in conc):
            raise ValueError("all concentration parameters must be positive and finite")
        object.__setattr__(self, "concentration", conc)

    @property
    def k(self) -> int:
        return len(self.concentration)

    @property
    def total(self) -> float:
        return float(np.sum(self.concentration))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.concentration, dtype=float)

    def mean(self) -> np.ndarray:
        return self.as_array() / self.total

    @classmethod
    def symmetric(cls, k: int, value: float = 1.0) -> "DirichletParams":
        return cls((float(value),) * int(k))


def gamma_sample(params: GammaParams, stream: RandomStream, size=None):
    """Draw from Gamma(shape, rate) (rate parametrization)."""
    g = stream.generator()
    return g.gamma(params.shape, 1.0 / params.rate, size=size)


def poisson_sample(mean, stream: RandomStream, size=None):
    """Draw from Poisson(mean); mean = 0 yields 0."""
    if np.any(np.asarray(mean) < 0):
        raise ValueError("Poisson mean must be nonnegative")
    g = stream.generator()
    return g.poisson(mean, size=size)


def predictive_total_count(prior: GammaParams, total_area: float, stream: RandomStream, size=None):
    """Total-count draw(s) from the Poisson-Gamma (negative binomial) predictive.

    Compound sampling: lambda ~ Gamma(prior), then N ~ Poisson(total_area * lambda).
    ``total_area`` is the whole sampled area m*A in m^2.
    """
    if total_area < 0:
        raise ValueError("total_area must be nonnegative")
    g = stream.generator()
    lam = g.gamma(prior.shape, 1.0 / prior.rate, size=size)
    return g.poisson(total_area * lam)


def dirichlet_sample(params: DirichletParams, stream: RandomStream, size=None):
    """Draw proportion vector(s) from the Dirichlet; rows sum to 1."""
    g = stream.generator()
    return g.dirichlet(params.as_array(), size=size)


def dirichlet_cov_trace(params: DirichletParams) -> float:
    """Trace of the Dirichlet covariance matrix: (1 - sum theta_i^2)/(1 + gamma0)."""
    theta = params.mean()
    return float((1.0 - np.sum(theta**2)) / (1.0 + params.total))


def dirichlet_multinomial_moments(params: DirichletParams, n: int):
    """Per-class (mean, variance) of Dirichlet-Multinomial class counts.

    mean_i = n * theta_i,
    var_i  = n * theta_i * (1 - theta_i) * (n + gamma0) / (1 + gamma0).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    theta = params.mean()
    g0 = params.total
    mean = n * theta
    var = n * theta * (1.0 - theta) * (n + g0) / (1.0 + g0)
    return mean, var
