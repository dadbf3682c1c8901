"""Job orchestration and JSON reporting.

``run`` takes a parsed job and produces a ``Report``: one row per curve
class (or one classification row), every row stamped with the config
hash it was computed from and the conventions version of the engine.
Failures are isolated per row — a degenerate substitution for one curve
class does not abort the rest of a sweep.

Two serializations: ``to_json`` is the full document, ``canonical_json``
strips the volatile fields (timestamp, runtimes) so that reruns of the
same job compare byte-identical.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import json

from gwloc import cache
from gwloc.classify import scan
from gwloc.config import JobConfig
from gwloc.engine import (NotPolynomial, SpecializationDegenerate,
                          compute_invariant, contribution_trace,
                          graph_contribution)
from gwloc.exact import frac_str
from gwloc.trees import DegreeNotRepresentable, enumerate_graphs
from gwloc.oracles import NotConvex, convex_invariant
from gwloc.targets import (ChainStructure, Specialization,
                           chain_specialization, random_specialization)
from gwloc.vertex import DEFAULT_CONVENTIONS


@dataclass
class Report:
    inputs: dict
    config_hash: str
    conventions: str
    mode: str
    rows: list
    volatile: dict

    def _doc(self, with_volatile: bool) -> dict:
        doc = {
            "inputs": self.inputs,
            "config_hash": self.config_hash,
            "conventions": self.conventions,
            "mode": self.mode,
            "rows": self.rows,
        }
        if with_volatile:
            doc["volatile"] = self.volatile
        else:
            doc["rows"] = [{k: v for k, v in row.items() if k != "runtime_s"}
                           for row in self.rows]
        return doc

    def to_json(self) -> str:
        return json.dumps(self._doc(True), indent=2, sort_keys=True)

    def canonical_json(self) -> str:
        """Byte-identical across reruns of the same job."""
        return json.dumps(self._doc(False), indent=2, sort_keys=True)


def _resolve_spec(config: JobConfig) -> Specialization:
    if config.specialization is not None:
        return Specialization.make(config.specialization, "override")
    if config.chain is not None:
        return chain_specialization(
            ChainStructure(config.space, config.chain, config.degree))
    # ambient-space job with no override: draw a generic substitution,
    # seeded by the config hash so reruns are identical
    return random_specialization(config.space, random.Random(config.hash()))


def _compute_row(config: JobConfig, spec: Specialization, beta) -> dict:
    row = {"beta": frac_str(Fraction(beta)), "config_hash": config.hash(),
           "value": None, "error": None, "cache": "off"}
    t0 = time.time()
    space, conv = config.space, DEFAULT_CONVENTIONS
    try:
        key = cache.cache_key(space, spec, config.degree, beta,
                              config.insertions, conv)
        res = None
        if cache.cache_dir() is not None and not config.dump_graphs:
            res = cache.load(key, space, spec, config.degree,
                             config.insertions, conv)
            row["cache"] = "hit" if res is not None else "miss"
        if res is None:
            res = compute_invariant(space, beta, config.degree,
                                    config.insertions, spec, conv,
                                    keep_contributions=True)
            if cache.store(key, res):
                row["cache"] = "stored"
        row["value"] = frac_str(res.invariant)
        row["n_graphs"] = res.n_graphs
        row["statuses"] = dict(sorted(res.statuses.items()))
        if config.check_polynomiality:
            row["polynomiality"] = "pass"
        if config.dump_graphs and res.contributions is not None:
            row["graphs"] = [
                {"labels": list(c.graph.labels),
                 "edges": [list(e) for e in c.graph.edges],
                 "marks": [list(m) for m in c.graph.marks],
                 "status": c.status,
                 "value": {str(k): frac_str(v) for k, v in c.value.items()}}
                for c in res.contributions]
    except NotPolynomial as ex:
        if config.check_polynomiality:
            row["polynomiality"] = "fail"
        row["error"] = str(ex)
    except (SpecializationDegenerate, cache.CacheMismatch, ValueError) as ex:
        row["error"] = f"{type(ex).__name__}: {ex}"
    row["runtime_s"] = round(time.time() - t0, 3)
    return row


def _oracle_row(config: JobConfig, beta) -> dict:
    row = {"beta": frac_str(Fraction(beta)), "config_hash": config.hash(),
           "oracle": "convex", "value": None, "error": None}
    t0 = time.time()
    try:
        val = convex_invariant(config.space, config.degree, beta,
                               config.insertions, n_specs=3)
        row["value"] = frac_str(val)
    except (NotConvex, SpecializationDegenerate, ValueError) as ex:
        row["error"] = f"{type(ex).__name__}: {ex}"
    row["runtime_s"] = round(time.time() - t0, 3)
    return row


def _classify_rows(config: JobConfig) -> list:
    (sr,) = scan([(config.weights, config.degree)])
    return [{
        "weights": list(sr.weights),
        "degree": sr.degree,
        "gorenstein": sr.gorenstein,
        "chain": sr.chain,
        "has_loop_block": sr.has_loop_block,
        "invertible": sr.invertible,
        "decompositions": sr.decompositions,
        "error": sr.error or None,
        "config_hash": config.hash(),
    }]


def _laurent_as_ratfunc(value: dict) -> dict:
    """{t-degree: Fraction} -> {"num": [...], "den": [...]} coeff lists."""
    if not value:
        return {"num": ["0"], "den": ["1"]}
    lo = min(min(value), 0)
    hi = max(value)
    num = [frac_str(value.get(k, Fraction(0))) for k in range(lo, hi + 1)]
    den = ["0"] * (-lo) + ["1"]
    return {"num": num, "den": den}


def trace_records(config: JobConfig):
    """One JSON-able record per graph, the --trace payload."""
    spec = _resolve_spec(config)
    space = config.space
    for beta in config.beta:
        try:
            graphs = enumerate_graphs(space, beta, len(config.insertions))
        except DegreeNotRepresentable:
            continue
        for g in graphs:
            c = graph_contribution(space, g, spec, config.degree,
                                   config.insertions)
            rec = {"beta": frac_str(Fraction(beta)), "status": c.status,
                   "aut_order": c.aut.total,
                   "value": _laurent_as_ratfunc(c.value)}
            try:
                rec.update(contribution_trace(space, g, spec, config.degree))
            except ValueError:
                rec.update({"labels": list(g.labels),
                            "edges": [list(e) for e in g.edges],
                            "detail": c.detail})
            yield rec


def run(config: JobConfig) -> Report:
    """Execute a job; rows evaluate concurrently, assemble in input order."""
    t0 = time.time()
    if config.mode == "classify":
        rows = _classify_rows(config)
    else:
        if config.mode == "compute":
            spec = _resolve_spec(config)
            work = [(beta,) for beta in config.beta]
            fn = lambda beta: _compute_row(config, spec, beta)  # noqa: E731
        else:
            fn = lambda beta: _oracle_row(config, beta)  # noqa: E731
            work = [(beta,) for beta in config.beta]
        if len(work) > 1:
            with ThreadPoolExecutor(max_workers=min(4, len(work))) as pool:
                rows = list(pool.map(lambda args: fn(*args), work))
        else:
            rows = [fn(*args) for args in work]

    inputs = {k: v for k, v in (
        line.split(" = ", 1) for line in config.serialize().splitlines())}
    return Report(
        inputs=inputs,
        config_hash=config.hash(),
        conventions=DEFAULT_CONVENTIONS.version_string(),
        mode=config.mode,
        rows=rows,
        volatile={"timestamp": time.strftime("%Y-%m-%dT%H:%M:%S"),
                  "total_runtime_s": round(time.time() - t0, 3)},
    )
