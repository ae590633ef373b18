from pathlib import Path
from typing import Optional

import typer

from documents.grammar import parse_parameter
from documents.render import write_frames
from documents.schema import load_linkage
from utils.error_handling import LinkforgeError

from ..ui import fail, print_success, read_source


def render_command(
    document: str = typer.Argument(..., help="Linkage document, '-' for stdin"),
    t: Optional[list[str]] = typer.Option(
        None, "--t", "-t", help="Parameter value (repeatable): 2, 1/2, -1, inf"
    ),
    trace: bool = typer.Option(False, "--trace", help="Overlay the traced curve"),
    out_dir: Path = typer.Option(Path("frames"), "--out-dir", "-o", help="Output directory"),
):
    """
    Write one SVG frame per parameter value; without values only the traced curve.
    """
    try:
        linkage, layers = load_linkage(read_source(document))
        ts = [parse_parameter(value) for value in t or []]
        if not ts:
            trace = True
        written = write_frames(linkage, ts, out_dir, layers, trace)
    except LinkforgeError as e:
        fail(e)

    print_success(f"Wrote {len(written)} SVG file(s) to {out_dir}")
