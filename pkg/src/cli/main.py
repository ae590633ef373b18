"""
linkforge - Command Line Interface (Typer)

Entry point for the factor, synthesize, render and collide commands.
"""

from typing import Optional

import typer

from config.config import get_config, reload_config
from utils.logger import LinkforgeLogger

from . import __version__
from .commands import collide, factor, render, synthesize
from .ui import console

app = typer.Typer(
    name="linkforge",
    help="Factor planar motion polynomials and synthesize curve drawing linkages",
    add_completion=False,
    rich_markup_mode="rich",
    no_args_is_help=True,
)

app.command("factor")(factor.factor_command)
app.command("synthesize")(synthesize.synthesize_command)
app.command("render")(render.render_command)
app.command("collide")(collide.collide_command)


def _version(value: bool):
    if value:
        console.print(f"[bold cyan]linkforge[/bold cyan] v{__version__}")
        raise typer.Exit()


@app.callback()
def main(
    eps: Optional[float] = typer.Option(
        None, "--eps", help="Approximate backend tolerance (overrides LINKFORGE_EPS)"
    ),
    log_level: Optional[str] = typer.Option(
        None, "--log-level", help="DEBUG, INFO, WARNING or ERROR"
    ),
    version: bool = typer.Option(
        None, "--version", "-v", help="Show version", callback=_version, is_eager=True
    ),
):
    """
    [bold cyan]linkforge[/bold cyan] - motion polynomial factorization and linkage synthesis.
    """
    config = reload_config()
    if eps is not None:
        if eps <= 0:
            raise typer.BadParameter("--eps must be positive")
        config.numerics.eps = eps
    LinkforgeLogger.set_level((log_level or get_config().logging.log_level).upper())


if __name__ == "__main__":
    app()
