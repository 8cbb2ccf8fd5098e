"""
CLI demo module: sequences showing where BV^A compactness breaks down
"""
import json
from typing import List, Optional

import typer

from core.errors import PairingCalcError
from tvmin import compactness_failure_demo

app = typer.Typer(help="Demonstrations on explicit sequences")


@app.command()
def compactness(
    dimension: int = typer.Option(2, "--dimension", "-n", help="Space dimension (at least 2)"),
    profile: Optional[str] = typer.Option(None, "--profile", help="Profile f as JSON, or a number"),
    indices: List[int] = typer.Option([1, 10, 100, 1000, 100000], "--index", "-k", help="Sequence indices"),
):
    """Masses ‖u_k‖_{L¹(|A|)} stay away from 0 while every pairing vanishes"""
    try:
        spec = None if profile is None else json.loads(profile)
        report = compactness_failure_demo(dimension, spec, indices)
    except ValueError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(2)
    except PairingCalcError as e:
        typer.echo(f"Error: {type(e).__name__}: {e}", err=True)
        raise typer.Exit(1)

    typer.echo(f"{'k':>8}  {'mass':>22}  {'pairing':>22}")
    values = report.pairing_values or [float("nan")] * len(report.indices)
    for k, mass, value in zip(report.indices, report.masses, values):
        typer.echo(f"{k:>8}  {mass:>22.17g}  {value:>22.17g}")
    typer.echo(f"limit mass: {report.limit_mass:.17g}")
    typer.echo(f"seminorm bound: {report.seminorm_bound:.17g}")
    typer.echo(f"failure confirmed: {report.failure_confirmed}")
