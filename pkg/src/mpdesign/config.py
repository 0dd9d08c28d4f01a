"""JSON configuration files for the CLI.

Schema (all sections required unless noted):

    {
      "abundance_prior":   {"shape": 3, "rate": 0.01}      # or {"shape": 3, "mode": 200}
      "composition_prior": {"gamma": [1, 1, ...]}          # or {"classes": 10, "symmetric_gamma": 1.0}
      "cost": {
        "quadrant_area": 0.0625,
        "budget_quadrant_equivalents": 12,
        "count_ratio": 5e-5,
        "categorize_ratio": 3e-3
      },
      "mc": {"draws": 100000, "seed": 20260825}            # optional, defaults below
      "class_names": ["PE", ...]                           # optional, length k
    }

Unknown keys anywhere are rejected with an error naming the key; priors given
as (shape, mode) require shape > 1 and convert via rate = (shape - 1)/mode.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .cost import CostModel
from .design import DesignConfig
from .distributions import DirichletParams, GammaParams

__all__ = ["ConfigError", "LoadedConfig", "load_config", "parse_config", "config_to_json"]

DEFAULT_CLASS_NAMES = ("PE", "PP", "PET", "PS", "PA", "PVC", "PU", "AC", "PES", "NPP")
DEFAULT_DRAWS = 10_000
DEFAULT_SEED = 0


class ConfigError(ValueError):
    """Invalid or malformed configuration file."""


@dataclass(frozen=True)
class LoadedConfig:
    design: DesignConfig
    class_names: tuple[str, ...]
    budget_quadrant_equivalents: float

    def to_mapping(self) -> dict:
        cost = self.design.cost
        return {
            "abundance_prior": {
                "shape": self.design.abundance_prior.shape,
                "rate": self.design.abundance_prior.rate,
            },
            "composition_prior": {
                "gamma": list(self.design.composition_prior.concentration)
            },
            "cost": {
                "quadrant_area": cost.quadrant_area,
                "budget_quadrant_equivalents": self.budget_quadrant_equivalents,
                "count_ratio": cost.count_ratio,
                "categorize_ratio": cost.categorize_ratio,
            },
            "mc": {"draws": self.design.mc_draws, "seed": self.design.seed},
            "class_names": list(self.class_names),
        }


def _require_keys(obj: dict, section: str, allowed: set[str], required: set[str]):
    if not isinstance(obj, dict):
        raise ConfigError(f"section {section!r} must be an object")
    for key in obj:
        if key not in allowed:
            raise ConfigError(f"unknown key {key!r} in section {section!r}")
    for key in required:
        if key not in obj:
            raise ConfigError(f"missing key {key!r} in section {section!r}")


def _finite_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigError(f"{where} must be a finite number, got {value!r}")
    return float(value)


def _parse_abundance(obj) -> GammaParams:
    _require_keys(obj, "abundance_prior", {"shape", "rate", "mode"}, {"shape"})
    has_rate, has_mode = "rate" in obj, "mode" in obj
    if has_rate == has_mode:
        raise ConfigError("abundance_prior needs exactly one of 'rate' or 'mode'")
    shape = _finite_number(obj["shape"], "abundance_prior.shape")
    try:
        if has_rate:
            return GammaParams(shape, _finite_number(obj["rate"], "abundance_prior.rate"))
        return GammaParams.from_mode(shape, _finite_number(obj["mode"], "abundance_prior.mode"))
    except ValueError as exc:
        raise ConfigError(f"abundance_prior: {exc}") from exc


def _parse_composition(obj) -> DirichletParams:
    _require_keys(obj, "composition_prior", {"gamma", "classes", "symmetric_gamma"}, set())
    has_vector = "gamma" in obj
    has_symmetric = "classes" in obj or "symmetric_gamma" in obj
    if has_vector == has_symmetric:
        raise ConfigError(
            "composition_prior needs either 'gamma' or ('classes', 'symmetric_gamma')"
        )
    try:
        if has_vector:
            gamma = obj["gamma"]
            if not isinstance(gamma, list) or len(gamma) < 2:
                raise ConfigError("composition_prior.gamma must be a list of k >= 2 numbers")
            return DirichletParams(
                tuple(_finite_number(g, "composition_prior.gamma[i]") for g in gamma)
            )
        _require_keys(obj, "composition_prior", {"classes", "symmetric_gamma"},
                      {"classes", "symmetric_gamma"})
        k = obj["classes"]
        if not isinstance(k, int) or k < 2:
            raise ConfigError("composition_prior.classes must be an integer >= 2")
        return DirichletParams.symmetric(
            k, _finite_number(obj["symmetric_gamma"], "composition_prior.symmetric_gamma")
        )
    except ValueError as exc:
        raise ConfigError(f"composition_prior: {exc}") from exc


def _parse_cost(obj) -> tuple[CostModel, float]:
    fields = {"quadrant_area", "budget_quadrant_equivalents", "count_ratio", "categorize_ratio"}
    _require_keys(obj, "cost", fields, fields)
    area = _finite_number(obj["quadrant_area"], "cost.quadrant_area")
    budget = _finite_number(obj["budget_quadrant_equivalents"], "cost.budget_quadrant_equivalents")
    r1 = _finite_number(obj["count_ratio"], "cost.count_ratio")
    r2 = _finite_number(obj["categorize_ratio"], "cost.categorize_ratio")
    try:
        return CostModel.from_budget_quadrants(area, budget, r1, r2), budget
    except ValueError as exc:
        raise ConfigError(f"cost: {exc}") from exc


def parse_config(doc: dict, *, seed_override=None, draws_override=None) -> LoadedConfig:
    _require_keys(
        doc,
        "<root>",
        {"abundance_prior", "composition_prior", "cost", "mc", "class_names"},
        {"abundance_prior", "composition_prior", "cost"},
    )
    abundance = _parse_abundance(doc["abundance_prior"])
    composition = _parse_composition(doc["composition_prior"])
    cost, budget = _parse_cost(doc["cost"])

    mc = doc.get("mc", {})
    _require_keys(mc, "mc", {"draws", "seed"}, set())
    draws = mc.get("draws", DEFAULT_DRAWS)
    seed = mc.get("seed", DEFAULT_SEED)
    if not isinstance(draws, int) or draws < 1:
        raise ConfigError("mc.draws must be a positive integer")
    if not isinstance(seed, int) or not 0 <= seed < 2**64:
        raise ConfigError("mc.seed must be a 64-bit unsigned integer")
    if draws_override is not None:
        draws = int(draws_override)
    if seed_override is not None:
        seed = int(seed_override)

    names = doc.get("class_names")
    if names is None:
        names = (
            DEFAULT_CLASS_NAMES
            if composition.k == len(DEFAULT_CLASS_NAMES)
            else tuple(f"class{i + 1}" for i in range(composition.k))
        )
    else:
        if (
            not isinstance(names, list)
            or len(names) != composition.k
            or len(set(names)) != len(names)
            or not all(isinstance(s, str) and s for s in names)
        ):
            raise ConfigError(
                f"class_names must be {composition.k} distinct nonempty strings"
            )
        names = tuple(names)

    try:
        design = DesignConfig(
            abundance_prior=abundance,
            composition_prior=composition,
            cost=cost,
            mc_draws=draws,
            seed=seed,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return LoadedConfig(design=design, class_names=names, budget_quadrant_equivalents=budget)


def load_config(path, *, seed_override=None, draws_override=None) -> LoadedConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config root must be a JSON object")
    return parse_config(doc, seed_override=seed_override, draws_override=draws_override)


def config_to_json(config: LoadedConfig) -> str:
    return json.dumps(config.to_mapping(), indent=2, sort_keys=True) + "\n"
