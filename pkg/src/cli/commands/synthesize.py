from pathlib import Path
from typing import Optional

import typer

from documents.grammar import parse_kelement
from documents.schema import linkage_to_document, read_input
from kinematics.algebra import Backend
from kinematics.flip import choose_l
from kinematics.layers import assign_layers
from kinematics.linkage import (
    LinkageKind,
    chain_linkage,
    construct_strong,
    construct_weak,
    ladder_linkage,
)
from utils.error_handling import LinkforgeError
from utils.logger import get_logger

from ..ui import emit, fail, print_success, print_warning, read_source

logger = get_logger(__name__)


def synthesize_command(
    source: str = typer.Argument(..., help="Curve, motion or factors JSON, or motion text"),
    weak: bool = typer.Option(
        False, "--weak/--strong", help="Open chain (weak) or ladder (strong, default)"
    ),
    l: Optional[str] = typer.Option(
        None, "--l", help="Auxiliary ladder factor, e.g. '-9/5i-(18/35)i e'"
    ),
    drawing: bool = typer.Option(
        False, "--drawing", help="Apply the drawing multiplier before synthesis"
    ),
    layers: bool = typer.Option(
        True, "--layers/--no-layers", help="Attach the layer assignment to ladders"
    ),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output file"),
):
    """
    Build a linkage whose pen draws the input curve or follows the input motion.
    """
    if weak and l is not None:
        print_warning("--l only applies to ladders; ignored with --weak")
    try:
        data = read_input(read_source(source))
        aux = parse_kelement(l) if l is not None and not weak else None
        if data.factors is not None:
            factors = data.factors
            if weak:
                linkage = chain_linkage(factors)
            else:
                if aux is not None and aux.backend is not factors[0].backend:
                    if aux.backend is Backend.APPROX:
                        factors = tuple(k.to_approx() for k in factors)
                    else:
                        aux = aux.to_approx()
                linkage = ladder_linkage(factors, aux or choose_l(factors))
        else:
            P, C = data.prepared(drawing)
            linkage = construct_weak(P, C=C) if weak else construct_strong(P, aux, C=C)
        assignment = None
        if layers and linkage.kind is LinkageKind.LADDER:
            assignment = assign_layers(linkage)
        doc = linkage_to_document(linkage, assignment)
    except LinkforgeError as e:
        fail(e)

    emit(doc.to_json(), out)
    print_success(
        f"{linkage.kind.value}: {linkage.n_links} links, {len(linkage.joints)} joints"
    )
