"""Criterion-versus-oracle sweeps over whole parameter spaces.

A sweep is split into tasks, one per ``(field, family, n, m)``.  Each task
runs the closed-form criterion on every parameter tuple and the batched
brute-force oracle on the corresponding polynomials.  Tasks run in
processes when ``threads > 1``; results are merged in task order, so the
report does not depend on the worker count.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field as dc_field
from typing import Optional

import numpy as np

from . import families
from .families import FAMILIES, FamilyParams
from .field import DEFAULT_MAX_ELEMS, GF, FieldError, build_field
from .oracle import permutes_fq2_batch
from .poly import Poly

SCHEMA = "permfam/1"
STRATEGIES = ("a-normalized", "exhaustive", "sampled")

# Cells (rows x field size) of the oracle value matrix per numpy batch.
_BATCH_CELLS = 1 << 22


@dataclass
class SweepConfig:
    fields: list = dc_field(default_factory=list)
    families: tuple = FAMILIES
    n_max: Optional[int] = None  # None: n runs over 1..q+1
    ms: tuple = (0, 1)
    strategy: str = "a-normalized"
    samples: int = 32
    seed: int = 0
    oracle: bool = True
    threads: int = 1
    max_elems: int = DEFAULT_MAX_ELEMS
    keep_rows: bool = False

    def __post_init__(self):
        self.fields = [tuple(int(x) for x in pk) for pk in self.fields]
        self.families = tuple(self.families)
        self.ms = tuple(int(m) for m in self.ms)
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}; expected one of {STRATEGIES}")
        if any(f not in FAMILIES for f in self.families):
            raise ValueError(f"families must be drawn from {FAMILIES}")
        if self.n_max is not None and self.n_max < 1:
            raise ValueError("n_max must be positive")
        if self.samples < 1 or self.threads < 1:
            raise ValueError("samples and threads must be positive")
        for p, k in self.fields:
            if p ** (2 * k) > self.max_elems:
                raise FieldError(f"GF({p}^{2 * k}) exceeds the size bound {self.max_elems}")

    def to_dict(self) -> dict:
        out = asdict(self)
        out["fields"] = [f"{p}^{k}" for p, k in self.fields]
        out["families"] = list(self.families)
        out["ms"] = list(self.ms)
        for key in ("threads", "keep_rows"):
            out.pop(key)
        if self.strategy != "sampled":
            out.pop("samples")
        return out


def _tasks(config: SweepConfig):
    for p, k in config.fields:
        q = p**k
        n_max = config.n_max if config.n_max is not None else q + 1
        for family in config.families:
            for n in range(1, n_max + 1):
                for m in config.ms:
                    if n + m * (q + 1) >= 1:
                        yield (p, k, family, n, m)


def _ab_rows(F: GF, config: SweepConfig, rng_key: tuple) -> tuple[np.ndarray, np.ndarray]:
    nonzero = np.arange(1, F.order, dtype=np.int64)
    if config.strategy == "a-normalized":
        return np.ones_like(nonzero), nonzero
    if config.strategy == "exhaustive":
        a, b = np.meshgrid(nonzero, nonzero, indexing="ij")
        return a.ravel(), b.ravel()
    rng = np.random.default_rng([config.seed, *rng_key])
    return (rng.integers(1, F.order, size=config.samples, dtype=np.int64),
            rng.integers(1, F.order, size=config.samples, dtype=np.int64))


def _slots(F: GF, family: str):
    """(u, v) choices: ordered distinct pairs in mu for thm1, v off mu for thm2."""
    if family == "thm1":
        return [(u, v) for u, v in itertools.permutations(F.mu, 2)]
    mu = set(F.mu)
    return [(None, v) for v in F.nonzero() if v not in mu]


def coefficient_rows(F: GF, family: str, n: int, u, v: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Coefficients of B for many (a, b) at once, one row per pair."""
    left_root = u if family == "thm1" else F.inv(F.frob(v))
    left = np.array((Poly.linear(F, left_root) ** n).coeffs, dtype=np.int64)
    right = np.array((Poly.linear(F, v) ** n).coeffs, dtype=np.int64)
    return F.add_vec(F.mul_vec(a[:, None], left[None, :]), F.mul_vec(b[:, None], right[None, :]))


def run_task(task: tuple, config: SweepConfig) -> dict:
    p, k, family, n, m = task
    F = build_field(p, k, config.max_elems)
    q = F.q
    r = n + m * (q + 1)
    exponents = [r + i * (q - 1) for i in range(n + 1)]
    family_index = FAMILIES.index(family)
    out = {"tuples": 0, "criterion_true": 0, "oracle_true": 0, "disagreements": [], "rows": []}
    chunk = max(1, _BATCH_CELLS // F.order)
    for slot_index, (u, v) in enumerate(_slots(F, family)):
        a_all, b_all = _ab_rows(F, config, (p, k, family_index, n, m, slot_index))
        for start in range(0, len(a_all), chunk):
            a, b = a_all[start:start + chunk], b_all[start:start + chunk]
            verdicts = None
            if config.oracle:
                verdicts = permutes_fq2_batch(F, exponents, coefficient_rows(F, family, n, u, v, a, b))
            for i, (ai, bi) in enumerate(zip(a.tolist(), b.tolist())):
                params = FamilyParams(F, family, r, n, v=v, a=ai, b=bi, u=u)
                crit = families.criterion(params)
                out["tuples"] += 1
                out["criterion_true"] += crit
                orc = None
                if verdicts is not None:
                    orc = verdicts[i].is_permutation
                    out["oracle_true"] += orc
                    if orc != crit:
                        out["disagreements"].append(disagreement_record(params, crit, verdicts[i]))
                if config.keep_rows:
                    out["rows"].append(_row(params, crit, orc))
    return out


def disagreement_record(params: FamilyParams, crit: bool, verdict) -> dict:
    return {
        "status": "DISAGREEMENT",
        "params": params.to_dict(),
        "text": params.to_text(),
        "criterion": crit,
        "oracle": verdict.is_permutation,
        "witness": list(verdict.witness) if verdict.witness is not None else None,
    }


CSV_COLUMNS = ("family", "field", "r", "n", "u", "v", "a", "b", "criterion", "oracle")


def _row(params: FamilyParams, crit: bool, orc) -> tuple:
    return (params.family, params.field.spec, params.r, params.n,
            "" if params.u is None else params.u, params.v, params.a, params.b,
            int(crit), "" if orc is None else int(orc))


def run_sweep(config: SweepConfig, timings: bool = False) -> dict:
    """Run every task and return the JSON-ready sweep report.

    The report omits wall time unless ``timings`` is set, which keeps
    repeated runs byte-identical.
    """
    started = time.perf_counter()
    tasks = list(_tasks(config))
    if config.threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.threads) as pool:
            results = list(pool.map(run_task, tasks, itertools.repeat(config), chunksize=1))
    else:
        results = [run_task(t, config) for t in tasks]

    per_field: dict = {}
    totals = {"tuples": 0, "criterion_true": 0, "criterion_false": 0, "oracle_true": 0, "disagreements": 0}
    disagreements, rows = [], []
    for (p, k, family, _, _), res in zip(tasks, results):
        key = (f"{p}^{k}", family)
        entry = per_field.setdefault(key, {"field": key[0], "family": family, "tuples": 0,
                                            "criterion_true": 0, "oracle_true": 0, "disagreements": 0})
        entry["tuples"] += res["tuples"]
        entry["criterion_true"] += res["criterion_true"]
        entry["oracle_true"] += res["oracle_true"]
        entry["disagreements"] += len(res["disagreements"])
        disagreements.extend(res["disagreements"])
        rows.extend(res["rows"])
    for entry in per_field.values():
        totals["tuples"] += entry["tuples"]
        totals["criterion_true"] += entry["criterion_true"]
        totals["oracle_true"] += entry["oracle_true"]
    totals["criterion_false"] = totals["tuples"] - totals["criterion_true"]
    totals["disagreements"] = len(disagreements)
    if not config.oracle:
        totals.pop("oracle_true")
        for entry in per_field.values():
            entry.pop("oracle_true")

    report = {
        "schema": SCHEMA,
        "command": "sweep",
        "config": config.to_dict(),
        "counts": totals,
        "per_field": list(per_field.values()),
        "disagreements": disagreements,
        "status": "DISAGREEMENT" if disagreements else "OK",
    }
    if timings:
        report["wall_time_s"] = round(time.perf_counter() - started, 6)
    if config.keep_rows:
        report["_rows"] = rows
    return report
