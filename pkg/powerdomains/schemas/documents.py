"""JSON documents for spaces, valuations, functions, maps and second-order valuations."""

from __future__ import annotations

from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from powerdomains.core.exceptions import DocumentError
from powerdomains.models.closed import ClosedSet
from powerdomains.models.extended import ExtNonneg
from powerdomains.models.space import ContinuousMap, FiniteSpace
from powerdomains.models.valuation import LowerSemiFn, SimpleSecondOrder, Valuation
from powerdomains.services import valuation as va

SCHEMA_VERSION = 1

Rational = Annotated[str, Field(pattern=r"^(inf|[0-9]+(/[0-9]+)?)$")]


class Document(BaseModel):
    """Base document schema."""

    model_config = ConfigDict(extra="forbid")

    schema_version: Literal[1] = SCHEMA_VERSION


class SpaceDocument(Document):
    """A finite space given by its opens or by its specialization preorder."""

    name: str | None = None
    points: list[str]
    opens: list[list[str]] | None = None
    preorder: list[tuple[str, str]] | None = None

    @model_validator(mode="after")
    def exactly_one_presentation(self) -> SpaceDocument:
        if (self.opens is None) == (self.preorder is None):
            raise ValueError("exactly one of 'opens' or 'preorder' is required")
        return self

    def to_space(self) -> FiniteSpace:
        if self.opens is not None:
            return FiniteSpace.from_open_members(self.points, self.opens, self.name)
        return FiniteSpace.from_preorder(self.points, self.preorder or [], self.name)

    @classmethod
    def from_space(cls, space: FiniteSpace) -> SpaceDocument:
        return cls(
            name=space.name,
            points=list(space.points),
            preorder=sorted(space.specialization_pairs()),
        )


SpaceRef = SpaceDocument | str


def _check_checksum(space: FiniteSpace, checksum: str | None) -> None:
    if checksum is None:
        raise DocumentError("open-index tables need 'opens_checksum'")
    if checksum != space.opens_checksum:
        raise DocumentError(
            "opens checksum does not match the space",
            expected=space.opens_checksum,
            found=checksum,
        )


def _open_at(space: FiniteSpace, index: int) -> int:
    opens = space.opens
    if not 0 <= index < len(opens):
        raise DocumentError("open index out of range", index=index, opens=len(opens))
    return opens[index]


class ValuationBody(BaseModel):
    """Exactly one of point weights or a table on open indices."""

    model_config = ConfigDict(extra="forbid")

    weights: dict[str, Rational] | None = None
    table: dict[int, Rational] | None = None
    opens_checksum: str | None = None

    @model_validator(mode="after")
    def exactly_one_form(self) -> ValuationBody:
        if (self.weights is None) == (self.table is None):
            raise ValueError("exactly one of 'weights' or 'table' is required")
        return self

    def to_valuation(self, space: FiniteSpace) -> Valuation:
        if self.weights is not None:
            unknown = [p for p in self.weights if p not in space.points]
            if unknown:
                raise DocumentError("weights mention unknown points", points=unknown)
            return va.valuation_from_weights(space, dict(self.weights))
        _check_checksum(space, self.opens_checksum)
        table = {_open_at(space, k): ExtNonneg.parse(v) for k, v in (self.table or {}).items()}
        return va.validate_valuation(space, table)


class ValuationDocument(ValuationBody, Document):
    """Valuation document schema."""

    space: SpaceRef

    @classmethod
    def from_valuation(cls, nu: Valuation, space: SpaceRef | None = None) -> ValuationDocument:
        return cls(
            space=space if space is not None else SpaceDocument.from_space(nu.space),
            table={k: str(v) for k, v in enumerate(nu.values)},
            opens_checksum=nu.space.opens_checksum,
        )


class FunctionDocument(Document):
    """A lower semicontinuous function; points left out take the value 0."""

    space: SpaceRef
    values: dict[str, Rational]

    def to_function(self, space: FiniteSpace) -> LowerSemiFn:
        unknown = [p for p in self.values if p not in space.points]
        if unknown:
            raise DocumentError("function mentions unknown points", points=unknown)
        return LowerSemiFn.of(space, [self.values.get(p, "0") for p in space.points])


class MapDocument(Document):
    """Map document schema."""

    source: SpaceRef
    target: SpaceRef
    mapping: dict[str, str]

    def to_map(self, source: FiniteSpace, target: FiniteSpace) -> ContinuousMap:
        unknown = [y for y in self.mapping.values() if y not in target.points]
        if unknown:
            raise DocumentError("mapping leaves the target points", points=unknown)
        return ContinuousMap.from_mapping(source, target, self.mapping)


class AtomDocument(ValuationBody):
    weight: Rational


class SecondOrderDocument(Document):
    """A molecular second-order valuation ``Σ cⱼ δ_{νⱼ}``."""

    space: SpaceRef
    atoms: list[AtomDocument]

    def to_second_order(self, space: FiniteSpace) -> SimpleSecondOrder:
        return SimpleSecondOrder.of(
            space, [(ExtNonneg.parse(atom.weight), atom.to_valuation(space)) for atom in self.atoms]
        )


class ClosedSetDocument(Document):
    """A closed set as its sorted point list."""

    points: list[str]

    @classmethod
    def from_closed(cls, c: ClosedSet) -> ClosedSetDocument:
        return cls(points=sorted(c.point_list()))


class HyperspaceDocument(Document):
    """``HX`` as a space plus the closed set each of its points stands for."""

    space: SpaceDocument
    closed_sets: dict[str, list[str]]
