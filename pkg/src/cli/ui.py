"""
linkforge CLI UI Helpers
Rich console on stderr (stdout carries JSON), styled messages and the mapping from
library errors to exit codes.
"""

import sys
from pathlib import Path
from typing import NoReturn, Optional

import typer
from rich.console import Console
from rich.table import Table
from rich.theme import Theme

from utils.error_handling import LinkforgeError

custom_theme = Theme(
    {
        "info": "cyan",
        "warning": "yellow",
        "error": "bold red",
        "success": "bold green",
        "title": "bold magenta",
        "dim": "dim white",
    }
)

console = Console(theme=custom_theme, stderr=True)


def print_success(message: str):
    """Print a success message with green checkmark."""
    console.print(f"✅ [success]{message}[/success]")


def print_error(message: str):
    """Print an error message with red cross."""
    console.print(f"❌ [error]{message}[/error]")


def print_warning(message: str):
    console.print(f"⚠️  [warning]{message}[/warning]")


def create_table(columns: list[str], title: Optional[str] = None) -> Table:
    """Create a standard styled table."""
    table = Table(
        title=title,
        title_style="bold magenta",
        header_style="bold cyan",
        box=None,
    )
    for col in columns:
        table.add_column(col)
    return table


def fail(error: LinkforgeError) -> NoReturn:
    """Report a library error and exit with its code"""
    print_error(f"{type(error).__name__}: {error.message}")
    raise typer.Exit(code=error.exit_code)


def read_source(source: str) -> str:
    """File contents, or stdin for '-'"""
    if source == "-":
        return sys.stdin.read()
    path = Path(source)
    if not path.exists():
        print_error(f"File not found: {source}")
        raise typer.Exit(code=2)
    return path.read_text(encoding="utf-8")


def emit(text: str, out: Optional[Path]) -> None:
    """Write a document to `out` or to stdout"""
    if out is None:
        typer.echo(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text + "\n", encoding="utf-8")
    print_success(f"Wrote {out}")
