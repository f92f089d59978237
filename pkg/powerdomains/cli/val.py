"""Valuation commands."""

import click

from powerdomains.cli.base import emit, repository
from powerdomains.models.space import FiniteSpace
from powerdomains.models.valuation import Valuation
from powerdomains.repositories.document_repository import DocumentRepository
from powerdomains.schemas.documents import (
    FunctionDocument,
    MapDocument,
    SecondOrderDocument,
    ValuationDocument,
)
from powerdomains.services import probability as pr
from powerdomains.services import support as sp
from powerdomains.services import topology as tp
from powerdomains.services import valuation as va

val = click.Group("val", help="Valuations, integrals, supports and measures.")

PathArg = click.Path(dir_okay=False)


def _valuation(repo: DocumentRepository, path: str) -> tuple[Valuation, FiniteSpace]:
    document = repo.load(path, ValuationDocument)
    x = repo.relative_to(path).space(document.space)
    return document.to_valuation(x), x


@val.command("validate")
@click.argument("path", type=PathArg)
@click.pass_context
def validate_valuation(ctx: click.Context, path: str) -> None:
    """Check strictness, monotonicity and modularity; print the table form."""
    nu, _ = _valuation(repository(ctx), path)
    emit(ValuationDocument.from_valuation(nu))


@val.command("integrate")
@click.argument("valuation", type=PathArg)
@click.argument("function", type=PathArg)
@click.pass_context
def integrate(ctx: click.Context, valuation: str, function: str) -> None:
    """The lower integral of a function against a valuation."""
    repo = repository(ctx)
    nu, _ = _valuation(repo, valuation)
    document = repo.load(function, FunctionDocument)
    g = document.to_function(repo.relative_to(function).space(document.space))
    emit(str(va.integrate(nu, g)))


@val.command("push")
@click.argument("valuation", type=PathArg)
@click.argument("map_path", metavar="MAP", type=PathArg)
@click.pass_context
def push(ctx: click.Context, valuation: str, map_path: str) -> None:
    """Push a valuation forward along a continuous map."""
    repo = repository(ctx)
    nu, _ = _valuation(repo, valuation)
    document = repo.load(map_path, MapDocument)
    local = repo.relative_to(map_path)
    f = document.to_map(local.space(document.source), local.space(document.target))
    emit(ValuationDocument.from_valuation(va.pushforward(f, nu)))


@val.command("product")
@click.argument("left", type=PathArg)
@click.argument("right", type=PathArg)
@click.pass_context
def product(ctx: click.Context, left: str, right: str) -> None:
    """The product valuation on the product space."""
    repo = repository(ctx)
    nu, x = _valuation(repo, left)
    rho, y = _valuation(repo, right)
    prod = tp.product(x, y)
    emit(ValuationDocument.from_valuation(va.product_valuation(prod, nu, rho)))


@val.command("supp")
@click.argument("path", type=PathArg)
@click.pass_context
def supp(ctx: click.Context, path: str) -> None:
    """The support as a sorted point list."""
    nu, _ = _valuation(repository(ctx), path)
    emit(sorted(sp.support(nu).point_list()))


@val.command("extend")
@click.argument("path", type=PathArg)
@click.pass_context
def extend(ctx: click.Context, path: str) -> None:
    """Point weights of the measure extending a finite valuation."""
    nu, _ = _valuation(repository(ctx), path)
    emit(pr.extend_to_measure(nu).as_mapping())


@val.command("E")
@click.argument("path", type=PathArg)
@click.pass_context
def multiply(ctx: click.Context, path: str) -> None:
    """Flatten a molecular second-order valuation."""
    repo = repository(ctx)
    document = repo.load(path, SecondOrderDocument)
    x = repo.relative_to(path).space(document.space)
    emit(ValuationDocument.from_valuation(va.mult_E(document.to_second_order(x))))
