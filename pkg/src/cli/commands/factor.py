from pathlib import Path
from typing import Optional

import typer

from documents.schema import factorization_document, read_input
from kinematics.factor import factor_motion_polynomial, strip_real_content
from utils.error_handling import LinkforgeError
from utils.logger import get_logger

from ..ui import emit, fail, print_success, read_source

logger = get_logger(__name__)


def factor_command(
    source: str = typer.Argument(..., help="Curve/motion JSON or motion text file, '-' for stdin"),
    drawing: bool = typer.Option(
        False, "--drawing", help="Multiply by the drawing multiplier C before factoring"
    ),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output file"),
):
    """
    Factor a bounded motion polynomial into linear factors: (t - k1)...(t - kn) = R P.
    """
    try:
        P, C = read_input(read_source(source)).prepared(drawing)
        S, reduced = strip_real_content(P)
        result = factor_motion_polynomial(reduced)
        doc = factorization_document(P, result, C, S)
    except LinkforgeError as e:
        fail(e)

    emit(doc.to_json(), out)
    print_success(f"{len(result.factors)} factors, R = {result.R} ({result.backend.value})")
