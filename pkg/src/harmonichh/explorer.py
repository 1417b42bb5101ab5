"""Randomized slack mining over family-parameter and domain space.

Sweeps feasible configurations, scores each one by the signed slack of a
chosen theorem checker, and reports the minimum-slack configuration; a
negative slack beyond tolerance is a counterexample and can be written
out as a replayable verify-mode config document.

Sampling is Latin-hypercube followed by a derivative-free coordinate
descent around the best sample (3 rounds of shrinking steps).  Results
are deterministic given (space, budget, seed); ties are broken by
lexicographic config ordering.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .aumann import QuadratureSpec
from .hh_check import (
    DEFAULT_TOL,
    THEOREM_IDS,
    ConvexityGrid,
    check_hh,
    check_lemma_shift,
    check_nikodem,
    check_prop31,
    check_strongly_harmonic_convex,
    check_strongly_harmonic_midconvex,
    check_cor34,
    check_cor36,
    check_thm33,
    check_thm35,
)
from .svf import (
    DiscFn,
    FeasibilityError,
    HarmonicDomain,
    QuadraticIntervalFn,
    FamilyCertificate,
    reciprocal_transform,
)

DEFAULT_SEARCH_GRID = ConvexityGrid(pair_count=64)


@dataclass(frozen=True)
class SearchSpace:
    """Parameter ranges, each as (min, max).  The a-range must lie strictly
    below the b-range so every sampled domain satisfies 0 < a < b."""

    family: str = "quadratic-interval"
    alpha: Tuple[float, float] = (0.5, 3.0)
    beta: Tuple[float, float] = (0.5, 3.0)
    K: Tuple[float, float] = (5.0, 20.0)
    v: Tuple[Tuple[float, float], Tuple[float, float]] = ((-1.0, 1.0), (-1.0, 1.0))
    w: Tuple[Tuple[float, float], Tuple[float, float]] = ((-1.0, 1.0), (-1.0, 1.0))
    a: Tuple[float, float] = (0.5, 1.5)
    b: Tuple[float, float] = (1.6, 3.0)
    c: Tuple[float, float] = (0.25, 1.0)
    certified_only: bool = True

    def __post_init__(self) -> None:
        if self.family not in ("quadratic-interval", "disc"):
            raise FeasibilityError(f"unsearchable family kind: {self.family!r}")
        for name in ("alpha", "beta", "K", "a", "b", "c"):
            lo, hi = getattr(self, name)
            if not (lo <= hi):
                raise FeasibilityError(f"empty range for {name}: ({lo}, {hi})")
        if not (0.0 < self.a[0] and self.a[1] < self.b[0]):
            raise FeasibilityError(
                "feasible space needs 0 < a-range strictly below b-range")
        if self.c[0] <= 0.0 and self.certified_only:
            raise FeasibilityError("certified-only search needs c > 0")

    def dimension_ranges(self):
        if self.family == "quadratic-interval":
            return [("alpha", self.alpha), ("beta", self.beta), ("K", self.K),
                    ("a", self.a), ("b", self.b), ("c", self.c)]
        return [("v0", self.v[0]), ("v1", self.v[1]),
                ("w0", self.w[0]), ("w1", self.w[1]),
                ("K", self.K), ("beta", self.beta),
                ("a", self.a), ("b", self.b), ("c", self.c)]


@dataclass(frozen=True)
class SearchResult:
    best_config: dict
    best_slack: float
    theorem_id: str
    evaluations: int
    seed: int
    violation_found: bool
    context: dict = field(default_factory=dict)


def _repair(space: SearchSpace, raw: dict) -> dict:
    """Project a raw sample onto the feasible set (spec invariants)."""
    cfg = dict(raw)
    cfg["family"] = space.family
    # clamp strictly above the boundary: at K = need the width at x = a is
    # exactly zero and float rounding can invert the interval endpoints
    if space.family == "quadratic-interval":
        need = (cfg["alpha"] + cfg["beta"]) / cfg["a"] ** 2
        cfg["K"] = max(cfg["K"], need * (1.0 + 1e-12))
        modulus = min(cfg["alpha"], cfg["beta"])
    else:
        need = cfg["beta"] / cfg["a"] ** 2
        cfg["K"] = max(cfg["K"], need * (1.0 + 1e-12))
        modulus = cfg["beta"]
    if space.certified_only:
        cfg["c"] = min(cfg["c"], modulus)
        cfg["c"] = max(cfg["c"], min(space.c[0], modulus))
    return cfg


def build_function(cfg: dict):
    """Instantiate the set-valued function described by a search config."""
    dom = HarmonicDomain(cfg["a"], cfg["b"])
    if cfg["family"] == "quadratic-interval":
        cert = FamilyCertificate(min(cfg["alpha"], cfg["beta"]), "search sample")
        return QuadraticIntervalFn(cfg["alpha"], cfg["beta"], cfg["K"], dom,
                                   certificate=cert)
    cert = FamilyCertificate(cfg["beta"], "search sample")
    return DiscFn((cfg["v0"], cfg["v1"]), (cfg["w0"], cfg["w1"]),
                  cfg["K"], cfg["beta"], dom, certificate=cert)


def evaluate_config(cfg: dict, theorem_id: str,
                    grid: ConvexityGrid = DEFAULT_SEARCH_GRID,
                    quad: Optional[QuadratureSpec] = None,
                    tol: float = DEFAULT_TOL):
    """Slack and verdict of the given theorem checker on one configuration."""
    quad = quad or QuadratureSpec()
    f = build_function(cfg)
    c = cfg["c"]
    dom = f.domain
    if theorem_id == "def_shc":
        rep = check_strongly_harmonic_convex(f, c, grid, tol)
    elif theorem_id == "def_mid":
        rep = check_strongly_harmonic_midconvex(f, c, grid, tol)
    elif theorem_id == "lemma_i":
        rep = check_lemma_shift(f, c, grid, tol, direction="forward")
    elif theorem_id == "lemma_ii":
        rep = check_lemma_shift(f, c, grid, tol, direction="forward", midconvex=True)
    elif theorem_id == "prop_31":
        rep = check_prop31(f, c, grid, tol)
    elif theorem_id in ("hh_left", "hh_right"):
        left, right = check_hh(f, c, dom, quad, tol)
        rep = left if theorem_id == "hh_left" else right
    elif theorem_id in ("nikodem_left", "nikodem_right"):
        left, right = check_nikodem(reciprocal_transform(f), c, quad, tol)
        rep = left if theorem_id == "nikodem_left" else right
    elif theorem_id == "thm33":
        rep = check_thm33(f, f, c, dom, quad, tol)
    elif theorem_id == "cor34":
        rep = check_cor34(f, c, dom, quad, tol)
    elif theorem_id == "thm35":
        rep = check_thm35(f, f, c, dom, quad, tol)
    elif theorem_id == "cor36":
        rep = check_cor36(f, c, dom, quad, tol)
    else:
        raise ValueError(f"unknown theorem id: {theorem_id!r}")
    return rep


def _config_key(cfg: dict):
    return tuple(cfg[k] for k in sorted(cfg) if k != "family")


def min_slack_search(space: SearchSpace, theorem_id: str, budget: int, seed: int,
                     grid: ConvexityGrid = DEFAULT_SEARCH_GRID,
                     quad: Optional[QuadratureSpec] = None,
                     tol: float = DEFAULT_TOL) -> SearchResult:
    """Minimum-slack configuration for one theorem checker."""
    if theorem_id not in THEOREM_IDS:
        raise ValueError(f"unknown theorem id: {theorem_id!r}")
    if budget < 1:
        raise ValueError("search budget must be >= 1")
    quad = quad or QuadratureSpec()
    dims = space.dimension_ranges()
    rng = np.random.default_rng(seed)

    # Latin hypercube: one permuted stratum per dimension per sample
    unit = np.empty((budget, len(dims)))
    for j in range(len(dims)):
        unit[:, j] = (rng.permutation(budget) + rng.uniform(size=budget)) / budget

    evaluations = 0
    best = None  # (slack, key, cfg, holds)

    def consider(cfg: dict):
        nonlocal evaluations, best
        rep = evaluate_config(cfg, theorem_id, grid, quad, tol)
        evaluations += 1
        entry = (rep.verdict.slack, _config_key(cfg), cfg, rep.holds)
        if best is None or (entry[0], entry[1]) < (best[0], best[1]):
            best = entry

    for i in range(budget):
        raw = {name: lo + unit[i, j] * (hi - lo)
               for j, (name, (lo, hi)) in enumerate(dims)}
        consider(_repair(space, raw))

    # coordinate descent around the best sample, 3 rounds of shrinking steps
    step_frac = 0.25
    for _ in range(3):
        base = dict(best[2])
        for name, (lo, hi) in dims:
            span = hi - lo
            if span == 0.0:
                continue
            for delta in (-step_frac * span, step_frac * span):
                trial = dict(base)
                trial[name] = min(max(trial[name] + delta, lo), hi)
                consider(_repair(space, trial))
        step_frac *= 0.5

    slack, _, cfg, holds = best
    return SearchResult(
        best_config=cfg,
        best_slack=float(slack),
        theorem_id=theorem_id,
        evaluations=evaluations,
        seed=seed,
        violation_found=not holds,
        context={
            "grid": {"pair_count": grid.pair_count, "t_values": list(grid.t_values),
                     "sampling": grid.sampling, "seed": grid.seed},
            "quadrature": {"rule": quad.rule, "order": quad.order_or_panels,
                           "substitution": quad.substitution},
            "tolerance": tol,
        },
    )


def emit_counterexample(result: SearchResult, path: str) -> None:
    """Write a self-contained verify-mode config reproducing the violation."""
    if not result.violation_found:
        raise ValueError("no violation in this search result")
    cfg = result.best_config
    if cfg["family"] == "quadratic-interval":
        family = {"family": "quadratic-interval", "alpha": cfg["alpha"],
                  "beta": cfg["beta"], "K": cfg["K"], "a": cfg["a"], "b": cfg["b"]}
    else:
        family = {"family": "disc", "v": [cfg["v0"], cfg["v1"]],
                  "w": [cfg["w0"], cfg["w1"]], "K": cfg["K"], "beta": cfg["beta"],
                  "a": cfg["a"], "b": cfg["b"]}
    doc = {
        "mode": "verify",
        "families": [family],
        "c": cfg["c"],
        "grid": result.context.get("grid", {}),
        "quadrature": result.context.get("quadrature", {}),
        "theorems": [result.theorem_id],
        "tolerance": result.context.get("tolerance", DEFAULT_TOL),
        "seed": result.seed,
        "expected_slack": result.best_slack,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
