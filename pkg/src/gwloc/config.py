"""Job-file parsing and canonical serialization.

The job grammar is deliberately small: ``key = value`` lines, ``#``
comments, lists in square brackets, rationals written ``a/b``.  Parsing
collects *every* error with a (line, column) position before raising,
so a config with three typos reports three messages.  A parsed config
re-serializes to one canonical text form — the canonical form of a
canonical form is itself, byte for byte — and the job hash used in
reports is the hash of that canonical text.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from gwloc.exact import frac_str
from gwloc.targets import WeightedProjSpace, find_chain_structures

MODES = ("compute", "classify", "oracle")

# key -> kind used by both the parser and the canonical writer
_SCHEMA = {
    "weights": "int_list",
    "degree": "int",
    "chain": "int_list",
    "beta": "rat_list",
    "insertions": "int_list",
    "mode": "mode",
    "specialization": "rat_list",
    "dump_graphs": "bool",
    "check_polynomiality": "bool",
}


class ParseError(ValueError):
    """All problems found in one pass, each as (line, column, message)."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("\n".join(
            f"line {ln}, col {col}: {msg}" for ln, col, msg in self.errors))


@dataclass(frozen=True)
class JobConfig:
    weights: tuple[int, ...]
    degree: int
    chain: Optional[tuple[int, ...]] = None
    beta: tuple[Fraction, ...] = ()
    insertions: tuple[int, ...] = ()
    mode: str = "compute"
    specialization: Optional[tuple[Fraction, ...]] = None
    dump_graphs: bool = False
    check_polynomiality: bool = True

    @property
    def space(self) -> WeightedProjSpace:
        return WeightedProjSpace(self.weights)

    def serialize(self) -> str:
        """Canonical text form; ``parse_config`` inverts it exactly."""
        lines = []
        for key in _SCHEMA:
            val = getattr(self, key)
            if val is None:
                continue
            lines.append(f"{key} = {_write_value(_SCHEMA[key], val)}")
        return "\n".join(lines) + "\n"

    def hash(self) -> str:
        return hashlib.sha256(self.serialize().encode()).hexdigest()[:16]


def _write_value(kind: str, val) -> str:
    if kind == "int":
        return str(val)
    if kind == "bool":
        return "true" if val else "false"
    if kind == "mode":
        return val
    if kind == "int_list":
        return "[" + ", ".join(str(x) for x in val) + "]"
    if kind == "rat_list":
        return "[" + ", ".join(frac_str(x) for x in val) + "]"
    raise AssertionError(kind)


_LINE_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*?)\s*$")
_ITEM_RE = re.compile(r"[^,\s][^,]*?(?=\s*(?:,|$))")


def _parse_rat(text: str) -> Fraction:
    if not re.fullmatch(r"-?\d+(/\d+)?", text):
        raise ValueError
    return Fraction(text)


def _parse_scalar(kind: str, text: str):
    if kind == "int":
        if not re.fullmatch(r"-?\d+", text):
            raise ValueError(f"expected an integer, got {text!r}")
        return int(text)
    if kind == "bool":
        if text not in ("true", "false"):
            raise ValueError(f"expected true or false, got {text!r}")
        return text == "true"
    if kind == "mode":
        if text not in MODES:
            raise ValueError(f"mode must be one of {'/'.join(MODES)}, got {text!r}")
        return text
    raise AssertionError(kind)


def _parse_value(kind: str, text: str, lineno: int, col: int, errors):
    """Parse one value; on failure append positioned errors, return None."""
    if kind.endswith("_list"):
        if not (text.startswith("[") and text.endswith("]")):
            errors.append((lineno, col, "expected a bracketed list [..]"))
            return None
        inner, base = text[1:-1], col + 1
        items, ok = [], True
        for m in _ITEM_RE.finditer(inner):
            raw = m.group(0).strip()
            try:
                if kind == "int_list":
                    if not re.fullmatch(r"-?\d+", raw):
                        raise ValueError
                    items.append(int(raw))
                else:
                    items.append(_parse_rat(raw))
            except ValueError:
                what = "integer" if kind == "int_list" else "rational a/b"
                errors.append((lineno, base + m.start(), f"expected {what}, got {raw!r}"))
                ok = False
        return tuple(items) if ok else None
    try:
        return _parse_scalar(kind, text)
    except ValueError as e:
        errors.append((lineno, col, str(e)))
        return None


def parse_config(text: str) -> JobConfig:
    """Parse a job file; raise ParseError listing every problem found."""
    errors: list = []
    seen: dict = {}
    appeared: set = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _LINE_RE.match(line)
        if not m:
            col = len(line) - len(line.lstrip()) + 1
            errors.append((lineno, col, "expected 'key = value'"))
            continue
        key = m.group(1)
        kcol = m.start(1) + 1
        vcol = m.start(2) + 1
        if key not in _SCHEMA:
            errors.append((lineno, kcol, f"unknown key {key!r}"))
            continue
        if key in appeared:
            errors.append((lineno, kcol, f"duplicate key {key!r}"))
            continue
        appeared.add(key)
        val = _parse_value(_SCHEMA[key], m.group(2), lineno, vcol, errors)
        if val is not None:
            seen[key] = val

    _validate(seen, appeared, errors)
    if errors:
        raise ParseError(sorted(errors))
    return JobConfig(**seen)


def _validate(seen: dict, appeared: set, errors: list) -> None:
    """Cross-field checks and chain auto-search; appends to ``errors``."""
    for req in ("weights", "degree"):
        if req not in appeared:
            errors.append((0, 0, f"missing required key {req!r}"))
    if errors or "weights" not in seen or "degree" not in seen:
        return

    weights, degree = seen["weights"], seen["degree"]
    if len(weights) < 2 or any(w < 1 for w in weights):
        errors.append((0, 0, "weights must be >= 2 integers, all >= 1"))
        return
    space = WeightedProjSpace(weights)

    spec = seen.get("specialization")
    if spec is not None and len(spec) != len(weights):
        errors.append((0, 0, "specialization must list one value per weight"))

    chain = seen.get("chain")
    if chain is not None:
        found = {c.exponents for c in find_chain_structures(space, degree)}
        if tuple(chain) not in found:
            errors.append((0, 0,
                           f"chain {list(chain)} does not present degree "
                           f"{degree} over weights {list(weights)}"))
    elif degree > 0:
        hits = find_chain_structures(space, degree)
        if hits:
            seen["chain"] = hits[0].exponents
        elif spec is None and seen.get("mode", "compute") == "compute":
            errors.append((0, 0,
                           "no chain presentation exists for this degree; "
                           "give chain = [..] or specialization = [..]"))

    if seen.get("mode", "compute") in ("compute", "oracle") and not seen.get("beta"):
        errors.append((0, 0, "compute/oracle jobs need a nonempty beta list"))
