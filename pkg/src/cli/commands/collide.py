from pathlib import Path
from typing import Optional

import typer

from documents.schema import collision_report, load_linkage, ordering_report
from kinematics.collision import CollisionAnalyzer, detect_collisions, search_ordering
from utils.error_handling import DocumentError, LinkforgeError

from ..ui import console, create_table, emit, fail, print_success, read_source


def _parse_ordering(text: str, links: range) -> list[int]:
    try:
        ordering = [int(part) for part in text.replace(" ", "").split(",") if part]
    except ValueError as e:
        raise DocumentError(f"ordering {text!r} is not a comma separated list of links") from e
    if sorted(ordering) != list(links):
        raise DocumentError(f"ordering {ordering} is not a permutation of links 1..{len(links)}")
    return ordering


def collide_command(
    document: str = typer.Argument(..., help="Linkage document, '-' for stdin"),
    ordering: Optional[str] = typer.Option(
        None, "--ordering", help="Layer ordering bottom to top, e.g. 5,1,6,2,7,8,4,3"
    ),
    search: bool = typer.Option(False, "--search", help="Search for a good ordering"),
    budget: Optional[int] = typer.Option(None, "--budget", help="Orderings scored by --search"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Random seed for --search"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output file"),
):
    """
    List the joint/link collisions of a layer ordering (ascending link ids by default).
    """
    try:
        if ordering is not None and search:
            raise DocumentError("--ordering and --search are mutually exclusive")
        linkage, _ = load_linkage(read_source(document))
        analyzer = CollisionAnalyzer(linkage)
        if search:
            report = ordering_report(search_ordering(linkage, budget, seed, analyzer))
        else:
            chosen = _parse_ordering(ordering, linkage.links) if ordering else None
            events = detect_collisions(linkage, chosen, analyzer)
            report = collision_report(chosen or list(linkage.links), events)
    except LinkforgeError as e:
        fail(e)

    if report.events:
        table = create_table(["joint", "link", "t", "s"], title="Collisions")
        for event in report.events:
            table.add_row(str(tuple(event.links)), str(event.link), event.t, event.s)
        console.print(table)
    emit(report.to_json(), out)
    print_success(
        f"ordering {report.ordering}: {report.finite} finite, {report.infinite} at infinity"
    )
