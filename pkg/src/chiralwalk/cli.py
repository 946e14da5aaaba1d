"""Command-line front end: heatmap data, half-line sweeps, verification."""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path

import click

from . import ensemble as ens
from . import heatmaps, verify
from .walk import CoinParams


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        click.echo(text, nl=False)
    else:
        Path(path).write_text(text)


@click.group()
def main() -> None:
    """Chirality dynamics of the walk on the line: data for every figure."""


@main.command("heatmap")
@click.argument("which", type=click.Choice(heatmaps.KINDS))
@click.option("--grid", default=201, show_default=True, help="points per axis")
@click.option("--m", default=None, type=int, help="measurement count (closed-form maps)")
@click.option("--r", default=0.3, show_default=True, help="link break probability")
@click.option("--theta", default=math.pi / 4, show_default="pi/4", help="coin bias")
@click.option("--steps", default=3000, show_default=True)
@click.option("--trajectories", default=100, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", default=None, help="output path (default stdout)")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
              show_default=True)
def cmd_heatmap(which, grid, m, r, theta, steps, trajectories, seed, out, fmt):
    """Emit an (alpha, beta, value) grid plus a JSON sidecar of zone thresholds."""
    if grid < 2:
        raise click.UsageError("--grid must be at least 2")
    try:
        if which == heatmaps.HALFLINE:
            hm = heatmaps.halfline_heatmap(
                n=grid, r=r, steps=steps, trajectories=trajectories,
                master_seed=seed, coin=CoinParams(theta),
            )
        else:
            hm = heatmaps.strategy_heatmap(which, n=grid, m=m)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    if fmt == "json":
        _write(out, hm.to_json() + "\n")
    else:
        _write(out, hm.csv_text())
        if out is not None and out != "-":
            sidecar = Path(out).with_suffix(".zones.json")
            sidecar.write_text(json.dumps(hm.sidecar(), indent=2) + "\n")


@main.command("sweep-r")
@click.option("--r", "rs", multiple=True, type=float,
              help="break probabilities (repeatable); default 0.05..0.95 step 0.1")
@click.option("--theta", default=math.pi / 4, show_default="pi/4")
@click.option("--alpha", default=math.pi / 4, show_default="pi/4")
@click.option("--beta", default=0.0, show_default=True)
@click.option("--steps", default=2000, show_default=True)
@click.option("--trajectories", default=100, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", default=None, help="output path (default stdout)")
def cmd_sweep_r(rs, theta, alpha, beta, steps, trajectories, seed, out):
    """Half-line decoherence: asymptotic Pi_L as a function of r."""
    from .walk import BlochAngles

    if not rs:
        rs = tuple(0.05 + 0.1 * i for i in range(10))
    if any(not 0.0 <= r <= 1.0 for r in rs):
        raise click.UsageError("every r must lie in [0, 1]")
    try:
        rows = ens.halfline_r_sweep(
            rs,
            coin=CoinParams(theta),
            angles=BlochAngles(alpha, beta),
            steps=steps,
            trajectories=trajectories,
            master_seed=seed,
        )
    except ValueError as exc:
        raise click.UsageError(str(exc))
    lines = ["r,Pi_L,ReQ0,stderr"]
    for row in rows:
        lines.append(
            f"{row.r:.17g},{row.pi_left:.17g},{row.re_q0:.17g},{row.stderr:.17g}"
        )
    _write(out, "\n".join(lines) + "\n")


@main.command("verify")
@click.argument("suite")
@click.option("--out", default=None, help="output path (default stdout)")
def cmd_verify(suite, out):
    """Run a named verification suite; exit 1 on failure."""
    try:
        report = verify.run_suite(suite)
    except KeyError:
        raise click.UsageError(
            f"unknown suite {suite!r}; available: {', '.join(sorted(verify.SUITES))}"
        )
    _write(out, json.dumps(report, indent=2) + "\n")
    if not report["passed"]:
        sys.exit(1)


if __name__ == "__main__":
    main()
