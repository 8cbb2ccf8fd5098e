import logging

import typer

from cli import catalog, compute, demo, suite
from core.config import get_settings

app = typer.Typer(help="Divergence-measure fields, λ-pairings and their identities")


@app.callback()
def main(
    verbose: int = typer.Option(0, "--verbose", "-v", count=True, help="-v for info, -vv for debug logs"),
):
    """Configure logging before any command runs"""
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, get_settings().log_level.upper(), logging.WARNING)
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


app.command("run")(suite.run)
app.command("pair1d")(compute.pair1d)
app.command("perimeter")(compute.perimeter)
app.command("denoise")(compute.denoise)
app.command("list-fields")(catalog.list_fields_command)
app.command("list-checks")(catalog.list_checks_command)

# Add other subcommands
app.add_typer(suite.app, name="verify")
app.add_typer(demo.app, name="demo")


if __name__ == "__main__":
    app()
