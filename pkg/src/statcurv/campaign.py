"""Verification campaigns: seeded batches of randomized inequality checks.

A campaign draws scenarios deterministically from a base seed, runs the
requested checkers on each generated point, and aggregates the slacks.
Per-trial seeds come from a documented mixing function of the base seed
and the trial index, so results are independent of scheduling and of the
worker count.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, asdict

import numpy as np

from .scengen import CLASSES, Scenario, generate, mix_seed
from .tolerances import Tolerances
from .verifier import check_casorati, check_casorati_hat, check_chen_ricci

WHICH_CHOICES = ("casorati", "casorati_hat", "chen_ricci", "equality", "all")


class ConfigError(ValueError):
    pass


@dataclass
class CampaignConfig:
    """Campaign parameters.

    m and p are drawn uniformly from their ranges per trial; the ambient
    frame requires m + p to be odd, so p is bumped by one when the draw
    comes out even (and adjusted further for the class constraints:
    legendrian forces p = m + 1, invariant forces even m, anti-invariant
    forces p >= m - 1).
    """

    base_seed: int = 0
    trials: int = 100
    m_min: int = 2
    m_max: int = 5
    p_min: int = 1
    p_max: int = 4
    profiles: tuple = ("exp", "cosh", "const", "linear")
    cbars: tuple = (-4.0, 0.0, 4.0)
    classes: tuple = ("generic",)
    magnitude: float = 1.0
    which: str = "all"
    tol: float = 1e-8
    out: str | None = None
    jobs: int = 1

    def validate(self) -> None:
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not (2 <= self.m_min <= self.m_max):
            raise ConfigError("need 2 <= m_min <= m_max")
        if not (1 <= self.p_min <= self.p_max):
            raise ConfigError("need 1 <= p_min <= p_max")
        if not self.profiles or not self.cbars or not self.classes:
            raise ConfigError("profiles, cbars and classes must be non-empty")
        for k in self.classes:
            if k not in CLASSES:
                raise ConfigError("unknown class %r" % (k,))
        if self.which not in WHICH_CHOICES:
            raise ConfigError("which must be one of %s" % (WHICH_CHOICES,))
        if not self.tol > 0.0:
            raise ConfigError("tol must be positive")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        if self.magnitude <= 0.0:
            raise ConfigError("magnitude must be positive")


def _resolve_dims(rng, cfg: CampaignConfig, klass: str):
    m = int(rng.integers(cfg.m_min, cfg.m_max + 1))
    p = int(rng.integers(cfg.p_min, cfg.p_max + 1))
    if klass == "invariant":
        m = max(2, m - (m % 2))
    if klass == "legendrian":
        p = m + 1
    elif klass == "anti_invariant":
        p = max(p, m - 1)
    if (m + p) % 2 == 0:
        p += 1
    n = (m + p - 1) // 2
    return m, p, n


def _scenario_for_trial(cfg: CampaignConfig, index: int) -> tuple[Scenario, np.ndarray]:
    seed = mix_seed(cfg.base_seed, index)
    rng = np.random.default_rng(np.random.SeedSequence((cfg.base_seed, index, 0xC0FFEE)))
    klass = str(cfg.classes[int(rng.integers(len(cfg.classes)))])
    m, p, n = _resolve_dims(rng, cfg, klass)
    kind = str(cfg.profiles[int(rng.integers(len(cfg.profiles)))])
    z = float(rng.uniform(-0.5, 0.5))
    cbar = float(cfg.cbars[int(rng.integers(len(cfg.cbars)))])
    scenario = Scenario(
        seed=seed, m=m, p=p, n=n, profile_kind=kind, z=z, cbar=cbar, klass=klass,
        magnitude=cfg.magnitude,
    )
    E = rng.standard_normal(m)
    E /= np.linalg.norm(E)
    return scenario, E


def run_trial(cfg: CampaignConfig, index: int) -> list[dict]:
    """All findings records of one trial, in a deterministic order."""
    scenario, E = _scenario_for_trial(cfg, index)
    d = generate(scenario)
    tols = Tolerances(slack=cfg.tol)
    reports = []
    if cfg.which in ("casorati", "equality", "all"):
        rep = check_casorati(d, tols)
        if cfg.which == "equality":
            rep.name = "equality"
            rep.details["slack_zero"] = bool(abs(rep.slack_proof) <= cfg.tol)
        reports.append(rep)
    if cfg.which in ("casorati_hat", "all"):
        reports.append(check_casorati_hat(d, tols))
    if cfg.which in ("chen_ricci", "all"):
        reports.append(check_chen_ricci(d, E, tols))
    records = []
    for rep in reports:
        rec = rep.to_dict()
        rec["trial"] = index
        rec["seed"] = scenario.seed
        if rep.witness is not None:
            rec["witness"] = dict(rec["witness"])
            rec["witness"]["scenario"] = scenario.to_dict()
        records.append(rec)
    return records


def _run_trial_star(args) -> list[dict]:
    cfg_dict, index = args
    return run_trial(CampaignConfig(**cfg_dict), index)


@dataclass
class CampaignSummary:
    trials: int
    per_check: dict
    violations: int
    wall_time: float

    def to_dict(self) -> dict:
        return asdict(self)


def run_verify(cfg: CampaignConfig):
    """Run a campaign; returns (summary, findings records, exit code)."""
    cfg.validate()
    t0 = time.perf_counter()
    if cfg.jobs == 1:
        batches = [run_trial(cfg, i) for i in range(cfg.trials)]
    else:
        cfg_dict = asdict(cfg)
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            batches = list(
                pool.map(
                    _run_trial_star,
                    ((cfg_dict, i) for i in range(cfg.trials)),
                    chunksize=max(1, cfg.trials // (4 * cfg.jobs)),
                )
            )
    findings = [rec for batch in batches for rec in batch]
    per_check: dict = {}
    violations = 0
    for rec in findings:
        stats = per_check.setdefault(
            rec["name"],
            {
                "pass": 0,
                "fail": 0,
                "min_slack_proof": float("inf"),
                "min_slack_stated": float("inf"),
                "counterexamples": 0,
            },
        )
        ok = rec["slack_proof"] >= -cfg.tol
        stats["pass" if ok else "fail"] += 1
        if not ok:
            violations += 1
            stats["counterexamples"] += 1
        stats["min_slack_proof"] = min(stats["min_slack_proof"], rec["slack_proof"])
        stats["min_slack_stated"] = min(stats["min_slack_stated"], rec["slack_stated"])
    summary = CampaignSummary(
        trials=cfg.trials,
        per_check=per_check,
        violations=violations,
        wall_time=time.perf_counter() - t0,
    )
    return summary, findings, (1 if violations else 0)
