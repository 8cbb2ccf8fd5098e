"""
CLI catalog module: list the registered fields and checks
"""
from typing import Optional

import typer

from checks import get_check_info, list_checks, search_checks
from fields import get_field_info, list_fields, search_fields


def list_fields_command(tag: Optional[str] = typer.Option(None, "--tag", "-t", help="Only entries with this tag")):
    """List the catalog fields"""
    names = search_fields(tag) if tag else list_fields()
    typer.echo(f"Available fields ({len(names)}):")
    for name in names:
        info = get_field_info(name)
        typer.echo(f"  {name}{info.signature or ''}: {info.description}")
        if info.tags:
            typer.echo(f"    tags: {', '.join(info.tags)}")


def list_checks_command(tag: Optional[str] = typer.Option(None, "--tag", "-t", help="Only checks with this tag")):
    """List the registered checks with their default tolerances"""
    names = search_checks(tag) if tag else list_checks()
    typer.echo(f"Available checks ({len(names)}):")
    for name in names:
        info = get_check_info(name)
        typer.echo(f"  {name} (tol {info.tolerance:g}): {info.description}")
