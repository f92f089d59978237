"""Space commands."""

import click

from powerdomains.cli.base import emit, repository
from powerdomains.schemas.documents import HyperspaceDocument, SpaceDocument
from powerdomains.services import hyperspace as hs
from powerdomains.services import topology as tp

space = click.Group("space", help="Construct and inspect finite spaces.")


@space.command("validate")
@click.argument("path", type=click.Path(dir_okay=False))
@click.pass_context
def validate_space(ctx: click.Context, path: str) -> None:
    """Check the topology axioms of a space document."""
    x = repository(ctx).space(path)
    emit({"valid": True, "points": x.size, "opens": len(x.opens), "opens_checksum": x.opens_checksum})


@space.command("info")
@click.argument("path", type=click.Path(dir_okay=False))
@click.pass_context
def info(ctx: click.Context, path: str) -> None:
    """Separation flags, specialization and the canonical open list."""
    x = repository(ctx).space(path)
    report = tp.check_separation(x)
    emit(
        {
            "T0": report.is_t0,
            "T1": report.is_t1,
            "sober": report.is_sober,
            "opens": len(x.opens),
            "open_list": [list(x.members(u)) for u in x.opens],
            "specialization": sorted([a, b] for a, b in tp.specialization(x)),
            "opens_checksum": x.opens_checksum,
        }
    )


@space.command("hyper")
@click.argument("path", type=click.Path(dir_okay=False))
@click.pass_context
def hyper(ctx: click.Context, path: str) -> None:
    """The hyperspace of closed sets with the lower Vietoris topology."""
    hx = hs.build_hyperspace(repository(ctx).space(path))
    emit(
        HyperspaceDocument(
            space=SpaceDocument.from_space(hx.space),
            closed_sets={hx.space.points[k]: list(hx.base.members(c)) for k, c in enumerate(hx.closed)},
        )
    )


@space.command("product")
@click.argument("left", type=click.Path(dir_okay=False))
@click.argument("right", type=click.Path(dir_okay=False))
@click.pass_context
def product(ctx: click.Context, left: str, right: str) -> None:
    """The product of two spaces."""
    repo = repository(ctx)
    emit(SpaceDocument.from_space(tp.product(repo.space(left), repo.space(right)).space))
