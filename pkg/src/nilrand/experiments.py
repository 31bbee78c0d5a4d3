"""Seeded Monte Carlo campaigns over random relator quotients.

Four campaign kinds: rank heatmaps of abelianized quotients, the seven-bucket
classification table for Heisenberg quotients at long lengths, the order
census of finite nonabelian quotients at short lengths, and the (d^2/D, d)
census of one-relator quotients.  Each is a pure function of its config
(seed included); trial t always reads stream (seed, row-tag, t), so results
do not depend on scheduling or chunking.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

import numpy as np

from . import predict
from ._mc import batch_relator_codes, codes_to_triples, codes_to_weights
from .heiscalc import MalcevTriple
from .quotients import (build_finite_quotient, classify_one_relator,
                        heis_quotient_order, identify_small_group)

RANK_HEATMAP = "RANK_HEATMAP"
HEIS_TABLE = "HEIS_TABLE"
BALANCED_ORDERS = "BALANCED_ORDERS"
DD_CENSUS = "DD_CENSUS"

HEIS_BUCKETS = (
    "trivial",
    "cyclic_finite",
    "cyclic_infinite",
    "abelian_noncyclic_finite",
    "abelian_noncyclic_infinite",
    "nonabelian_finite",
    "nonabelian_infinite",
)

_CHUNK_LETTERS = 4_000_000  # rows x length budget per batch


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    m: int
    r_min: int
    r_max: int
    length: int
    trials: int
    seed: int
    s: int = 2

    def __post_init__(self):
        if self.trials < 1 or self.length < 2:
            raise ValueError("need trials >= 1 and length >= 2")
        if self.kind in (HEIS_TABLE, BALANCED_ORDERS, DD_CENSUS):
            if self.m != 2 or self.s != 2:
                raise ValueError(f"{self.kind} requires m = 2, s = 2")


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    # one counts row per r value (heatmap/table); single-row kinds use r_min
    cells: dict[int, dict[str, int]]
    largest_finite_order: Optional[int] = None
    extra: dict = field(default_factory=dict)

    def frequencies(self, r: int) -> dict[str, float]:
        row = self.cells[r]
        return {k: v / self.config.trials for k, v in row.items()}


def _chunked(trials: int, length: int, per_trial: int):
    chunk = max(1, _CHUNK_LETTERS // max(length * per_trial, 1))
    for start in range(0, trials, chunk):
        yield range(start, min(start + chunk, trials))


def _trial_triples(cfg: ExperimentConfig, r: int):
    """Yields (trials_in_chunk, A, B, C) arrays shaped (chunk, r)."""
    for ids in _chunked(cfg.trials, cfg.length, r):
        codes, lens = batch_relator_codes(
            2, cfg.length, (cfg.seed, r), ids, relators_per_trial=r)
        a, b, c = codes_to_triples(codes, lens)
        n = len(ids)
        yield n, a.reshape(n, r), b.reshape(n, r), c.reshape(n, r)


def _minor_gcds(w: np.ndarray, m: int, r: int) -> list[np.ndarray]:
    """Per trial, gcd of all k x k minors for k = 1..min(m, r); w has shape
    (trials, m, r), entries small enough that minors fit in int64."""
    out = [np.gcd.reduce(np.abs(w).reshape(w.shape[0], -1), axis=1)]
    if min(m, r) >= 2:
        g2 = np.zeros(w.shape[0], dtype=np.int64)
        for rows in combinations(range(m), 2):
            for cols in combinations(range(r), 2):
                minor = (w[:, rows[0], cols[0]] * w[:, rows[1], cols[1]]
                         - w[:, rows[0], cols[1]] * w[:, rows[1], cols[0]])
                g2 = np.gcd(g2, np.abs(minor))
        out.append(g2)
    if min(m, r) >= 3:
        g3 = np.zeros(w.shape[0], dtype=np.int64)
        for rows in combinations(range(m), 3):
            for cols in combinations(range(r), 3):
                s = w[:, rows][:, :, cols]
                minor = (s[:, 0, 0] * (s[:, 1, 1] * s[:, 2, 2] - s[:, 1, 2] * s[:, 2, 1])
                         - s[:, 0, 1] * (s[:, 1, 0] * s[:, 2, 2] - s[:, 1, 2] * s[:, 2, 0])
                         + s[:, 0, 2] * (s[:, 1, 0] * s[:, 2, 1] - s[:, 1, 1] * s[:, 2, 0]))
                g3 = np.gcd(g3, np.abs(minor))
        out.append(g3)
    if min(m, r) > 3:
        raise ValueError("minor shortcut implemented for min(m, r) <= 3")
    return out


def _ranks_via_minors(w: np.ndarray, m: int, r: int) -> np.ndarray:
    """Rank of Z^m / column span per trial, using d_1...d_k = gcd of k x k
    minors (the invariant-factor product identity)."""
    gs = _minor_gcds(w, m, r)
    trials = w.shape[0]
    ones = np.zeros(trials, dtype=np.int64)
    prev = np.ones(trials, dtype=np.int64)
    for g in gs:
        ones += (g != 0) & (g == prev)
        prev = g
    return m - ones


def run_rank_heatmap(cfg: ExperimentConfig) -> ExperimentReport:
    """Rank frequencies of Z^m / (r relator weight columns), per r."""
    if cfg.kind != RANK_HEATMAP:
        raise ValueError("config kind mismatch")
    cells: dict[int, dict[str, int]] = {}
    for r in range(cfg.r_min, cfg.r_max + 1):
        counts = np.zeros(cfg.m + 1, dtype=np.int64)
        for ids in _chunked(cfg.trials, cfg.length, r):
            codes, lens = batch_relator_codes(
                cfg.m, cfg.length, (cfg.seed, r), ids, relators_per_trial=r)
            w = codes_to_weights(codes, lens, cfg.m)
            n = len(ids)
            w = w.reshape(n, r, cfg.m).transpose(0, 2, 1)  # (trials, m, r)
            ranks = _ranks_via_minors(w, cfg.m, r)
            counts += np.bincount(ranks, minlength=cfg.m + 1)
        cells[r] = {f"rank_{k}": int(counts[k]) for k in range(cfg.m + 1)}
    return ExperimentReport(config=cfg, cells=cells)


def _classify_bucket(qo) -> str:
    if qo.order == 1:
        return "trivial"
    if qo.gamma != 1:
        return "nonabelian_finite" if qo.is_finite else "nonabelian_infinite"
    # abelian: G = Z^2 / weight lattice, whose first invariant factor is the
    # entry gcd d; cyclic iff that factor is 1
    if qo.d == 1:
        return "cyclic_finite" if qo.is_finite else "cyclic_infinite"
    return "abelian_noncyclic_finite" if qo.is_finite else "abelian_noncyclic_infinite"


def run_heis_table(cfg: ExperimentConfig) -> ExperimentReport:
    """Seven-bucket classification of H(Z) quotients, one row per relator
    count."""
    if cfg.kind != HEIS_TABLE:
        raise ValueError("config kind mismatch")
    cells: dict[int, dict[str, int]] = {}
    largest: Optional[int] = None
    for r in range(cfg.r_min, cfg.r_max + 1):
        row = {b: 0 for b in HEIS_BUCKETS}
        for n, a, b, c in _trial_triples(cfg, r):
            for t in range(n):
                rel = [MalcevTriple(int(a[t, i]), int(b[t, i]), int(c[t, i]))
                       for i in range(r)]
                qo = heis_quotient_order(rel)
                row[_classify_bucket(qo)] += 1
                if qo.is_finite and (largest is None or qo.order > largest):
                    largest = qo.order
        cells[r] = row
    return ExperimentReport(config=cfg, cells=cells, largest_finite_order=largest)


def run_balanced_orders(cfg: ExperimentConfig) -> ExperimentReport:
    """Finite nonabelian census at short lengths: order counts, d^3 | order
    check, and the Q8/D4 split at order 8."""
    if cfg.kind != BALANCED_ORDERS or (cfg.r_min, cfg.r_max) != (2, 2):
        raise ValueError("config must have kind BALANCED_ORDERS and r = 2")
    order_counts: dict[int, int] = {}
    names_at_8 = {"Q8": 0, "D4": 0}
    d3_violations = 0
    finite_nonabelian = 0
    largest: Optional[int] = None
    for n, a, b, c in _trial_triples(cfg, 2):
        for t in range(n):
            rel = [MalcevTriple(int(a[t, i]), int(b[t, i]), int(c[t, i]))
                   for i in range(2)]
            qo = heis_quotient_order(rel)
            if qo.gamma == 1 or not qo.is_finite:
                continue
            finite_nonabelian += 1
            order_counts[qo.order] = order_counts.get(qo.order, 0) + 1
            if qo.order % qo.d ** 3 != 0:
                d3_violations += 1
            if qo.order == 8:
                names_at_8[identify_small_group(build_finite_quotient(rel))] += 1
            if largest is None or qo.order > largest:
                largest = qo.order
    cells = {2: {"finite_nonabelian": finite_nonabelian,
                 "other": cfg.trials - finite_nonabelian}}
    return ExperimentReport(
        config=cfg, cells=cells, largest_finite_order=largest,
        extra={"order_counts": dict(sorted(order_counts.items())),
               "names_at_8": names_at_8, "d3_violations": d3_violations})


def run_dd_census(cfg: ExperimentConfig) -> ExperimentReport:
    """One-relator classification census: counts of (d^2/D, d) pairs plus
    the Z / BS-type / central tallies."""
    if cfg.kind != DD_CENSUS or (cfg.r_min, cfg.r_max) != (1, 1):
        raise ValueError("config must have kind DD_CENSUS and r = 1")
    pair_counts: dict[tuple[int, int], int] = {}
    tallies = {"z": 0, "bs_type": 0, "central": 0, "degenerate": 0}
    for n, a, b, c in _trial_triples(cfg, 1):
        for t in range(n):
            triple = MalcevTriple(int(a[t, 0]), int(b[t, 0]), int(c[t, 0]))
            if triple == (0, 0, 0):
                tallies["degenerate"] += 1
                continue
            desc = classify_one_relator(triple)
            if desc.kind == "CENTRAL_RELATOR":
                tallies["central"] += 1
                continue
            pair = (desc.torsion_pair[0], desc.d)
            pair_counts[pair] = pair_counts.get(pair, 0) + 1
            if desc.is_cyclic_Z:
                tallies["z"] += 1
            if desc.is_bs_type:
                tallies["bs_type"] += 1
    cells = {1: dict(tallies,
                     generic=cfg.trials - tallies["central"] - tallies["degenerate"])}
    return ExperimentReport(
        config=cfg, cells=cells,
        extra={"pair_counts": {f"{a},{d}": cnt
                               for (a, d), cnt in sorted(pair_counts.items())},
               "distinct_pairs": len(pair_counts)})


def run(cfg: ExperimentConfig) -> ExperimentReport:
    runner = {RANK_HEATMAP: run_rank_heatmap, HEIS_TABLE: run_heis_table,
              BALANCED_ORDERS: run_balanced_orders, DD_CENSUS: run_dd_census}
    return runner[cfg.kind](cfg)


def compare_with_predictions(report: ExperimentReport) -> dict:
    """Attach closed-form predictions and z-scores where a formula exists."""
    cfg = report.config
    out: dict = {"kind": cfg.kind, "rows": []}
    for r, row in sorted(report.cells.items()):
        entries = []
        if cfg.kind == RANK_HEATMAP:
            pred = predict.prob_rank_drop(cfg.m, r)
            drop = sum(v for k, v in row.items() if k != f"rank_{cfg.m}")
            entries.append(("rank_drop", drop, pred))
        elif cfg.kind == HEIS_TABLE:
            pred = predict.prob_trivial(cfg.m, r)
            entries.append(("trivial", row["trivial"], pred))
            if r in (cfg.m - 1, cfg.m):
                predc = predict.prob_cyclic(cfg.m, r)
                cyc = row["cyclic_finite"] + row["cyclic_infinite"] + row["trivial"]
                entries.append(("cyclic_or_trivial", cyc, predc))
        for label, count, pred in entries:
            freq = count / cfg.trials
            var = pred.value * (1 - pred.value) / cfg.trials
            z = (freq - pred.value) / math.sqrt(var) if var > 0 else 0.0
            out["rows"].append({
                "r": r, "label": label, "empirical": freq,
                "predicted": pred.value, "z": z, "flagged": abs(z) > 4})
    return out


def write_csv(report: ExperimentReport, path: str) -> None:
    """Deterministic CSV: bucket-label header then one row per r value; the
    pair census instead emits (d2_over_D, d, count) rows."""
    cfg = report.config
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        if cfg.kind == DD_CENSUS:
            writer.writerow(["d2_over_D", "d", "count"])
            pairs = report.extra["pair_counts"]
            for key in sorted(pairs, key=lambda s: tuple(map(int, s.split(",")))):
                a, d = key.split(",")
                writer.writerow([a, d, pairs[key]])
            return
        labels = sorted({k for row in report.cells.values() for k in row})
        if cfg.kind == RANK_HEATMAP:
            labels = [f"rank_{k}" for k in range(cfg.m + 1)]
        elif cfg.kind == HEIS_TABLE:
            labels = list(HEIS_BUCKETS)
        writer.writerow(["r"] + labels)
        for r in sorted(report.cells):
            writer.writerow([r] + [report.cells[r].get(lbl, 0) for lbl in labels])


def write_json(report: ExperimentReport, path: str) -> None:
    from . import __version__
    cfg = report.config
    payload = {
        "version": __version__,
        "config": {"kind": cfg.kind, "m": cfg.m, "s": cfg.s,
                   "r_min": cfg.r_min, "r_max": cfg.r_max,
                   "length": cfg.length, "trials": cfg.trials,
                   "seed": cfg.seed},
        "cells": {str(r): row for r, row in sorted(report.cells.items())},
        "largest_finite_order": report.largest_finite_order,
        "extra": report.extra,
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
