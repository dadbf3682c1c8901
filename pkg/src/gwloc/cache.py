"""Disk cache for graph-sum results, with paranoid cache hits.

Caching is off unless the ``GWLOC_CACHE_DIR`` environment variable
points somewhere.  Keys are content hashes of everything that can
change a value — weights, substitution vector, bundle degree, curve
class, insertions, and the conventions version string — so a code
change that alters conventions invalidates old entries by itself.

A cache hit is never trusted blindly: one randomly chosen graph from
the stored per-graph breakdown is recomputed from scratch and compared
exactly.  A disagreement raises ``CacheMismatch`` instead of quietly
returning stale numbers.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import tempfile
from collections import Counter
from fractions import Fraction
from pathlib import Path
from typing import Optional

from gwloc.engine import InvariantResult, graph_contribution
from gwloc.targets import Specialization, WeightedProjSpace
from gwloc.trees import LocGraph
from gwloc.vertex import Conventions

ENV_VAR = "GWLOC_CACHE_DIR"


class CacheMismatch(RuntimeError):
    """A cached per-graph value disagrees with a fresh recomputation."""


def cache_dir() -> Optional[Path]:
    path = os.environ.get(ENV_VAR)
    return Path(path) if path else None


def cache_key(space: WeightedProjSpace, spec: Specialization, degree: int,
              beta, insertions, conv: Conventions) -> str:
    payload = repr((tuple(space.weights), tuple(str(x) for x in spec.p),
                    degree, str(Fraction(beta)), tuple(insertions),
                    conv.version_string()))
    return hashlib.sha256(payload.encode()).hexdigest()[:32]


def _frac(s: str) -> Fraction:
    return Fraction(s)


def store(key: str, result: InvariantResult) -> bool:
    """Persist a result that kept its per-graph contributions.

    Returns True when something was written; no-ops (False) when the
    cache is disabled or the breakdown is missing.
    """
    base = cache_dir()
    if base is None or result.contributions is None:
        return False
    base.mkdir(parents=True, exist_ok=True)
    doc = {
        "invariant": str(result.invariant),
        "buckets": {str(k): str(v) for k, v in result.buckets.items()},
        "n_graphs": result.n_graphs,
        "statuses": dict(result.statuses),
        "graphs": [
            {
                "labels": list(c.graph.labels),
                "edges": [list(e) for e in c.graph.edges],
                "marks": [list(m) for m in c.graph.marks],
                "status": c.status,
                "value": {str(k): str(v) for k, v in c.value.items()},
            }
            for c in result.contributions
        ],
    }
    # atomic publish so a concurrent reader never sees a half-written file
    fd, tmp = tempfile.mkstemp(dir=base, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(doc, fh)
    os.replace(tmp, base / f"{key}.json")
    return True


def load(key: str, space: WeightedProjSpace, spec: Specialization,
         degree: int, insertions, conv: Conventions) -> Optional[InvariantResult]:
    """Fetch and spot-check a cached result; None on miss or disabled."""
    base = cache_dir()
    if base is None:
        return None
    path = base / f"{key}.json"
    if not path.exists():
        return None
    doc = json.loads(path.read_text())

    records = doc["graphs"]
    if records:
        pick = random.Random(key).choice(records)
        g = LocGraph(tuple(pick["labels"]),
                     tuple(tuple(e) for e in pick["edges"]),
                     tuple(tuple(m) for m in pick["marks"]))
        fresh = graph_contribution(space, g, spec, degree, insertions, conv)
        stored = {int(k): _frac(v) for k, v in pick["value"].items()}
        if fresh.status != pick["status"] or fresh.value != stored:
            raise CacheMismatch(
                f"cache entry {key} fails its spot-check on graph "
                f"{g.labels}/{g.edges}: stored {pick['status']}/{stored}, "
                f"recomputed {fresh.status}/{fresh.value}")

    return InvariantResult(
        invariant=_frac(doc["invariant"]),
        buckets={int(k): _frac(v) for k, v in doc["buckets"].items()},
        n_graphs=doc["n_graphs"],
        statuses=Counter(doc["statuses"]),
        spec=spec,
        conventions=conv,
        contributions=None,
    )
