"""Command-line entry points.

    gw compute -c job.cfg [--dump-graphs] [--trace graphs.jsonl]
    gw classify -i rows.txt
    gw oracle wdvv --dmax 5
    gw oracle convex -c job.cfg

Reports go to stdout as JSON; the trace file is JSON-lines, one graph
per line.  Classify rows are ``w1,w2,...,wN;d`` with ``#`` comments.
"""

from __future__ import annotations

import dataclasses
import json
import sys
from pathlib import Path

import click

from gwloc.classify import scan
from gwloc.config import ParseError, parse_config
from gwloc.exact import frac_str
from gwloc.oracles import wdvv_p2
from gwloc.report import run, trace_records


def _load_config(path: str, **overrides):
    try:
        cfg = parse_config(Path(path).read_text())
    except ParseError as ex:
        for ln, col, msg in ex.errors:
            click.echo(f"{path}:{ln}:{col}: {msg}", err=True)
        sys.exit(2)
    return dataclasses.replace(cfg, **overrides) if overrides else cfg


@click.group()
def main():
    """Exact Gromov-Witten invariants by torus localization."""


@main.command()
@click.option("-c", "--config", "config_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--dump-graphs", is_flag=True,
              help="Include per-graph values in the report rows.")
@click.option("--trace", "trace_path", type=click.Path(dir_okay=False),
              help="Write a JSON-lines factor breakdown per graph.")
def compute(config_path, dump_graphs, trace_path):
    """Run the localization sum for each curve class in the job file."""
    overrides = {"mode": "compute"}
    if dump_graphs:
        overrides["dump_graphs"] = True
    cfg = _load_config(config_path, **overrides)
    report = run(cfg)
    click.echo(report.to_json())
    if trace_path:
        with open(trace_path, "w") as fh:
            for rec in trace_records(cfg):
                fh.write(json.dumps(rec, sort_keys=True) + "\n")


@main.command()
@click.option("-i", "--input", "rows_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
def classify(rows_path):
    """Classify weight-system rows: chain / loop blocks / invertibility."""
    rows = []
    for lineno, raw in enumerate(Path(rows_path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            wpart, dpart = line.split(";")
            rows.append(([int(w) for w in wpart.split(",")], int(dpart)))
        except ValueError:
            click.echo(f"{rows_path}:{lineno}: expected 'w1,..,wN;d', "
                       f"got {line!r}", err=True)
            sys.exit(2)
    out = [dataclasses.asdict(r) for r in scan(rows)]
    click.echo(json.dumps(out, indent=2, sort_keys=True))


@main.group()
def oracle():
    """Independent cross-check computations."""


@oracle.command("wdvv")
@click.option("--dmax", type=int, required=True)
def oracle_wdvv(dmax):
    """Rational plane-curve counts N_1 .. N_dmax by the WDVV recursion."""
    table = wdvv_p2(dmax)
    click.echo(json.dumps(
        {str(d): frac_str(table[d]) for d in range(1, dmax + 1)}, indent=2))


@oracle.command("convex")
@click.option("-c", "--config", "config_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
def oracle_convex(config_path):
    """Convex/Gorenstein direct path, cross-checked over random specs."""
    cfg = _load_config(config_path, mode="oracle")
    click.echo(run(cfg).to_json())


if __name__ == "__main__":
    main()
