"""Tests for document schemas and the document repository."""

import pytest

from powerdomains.core.exceptions import DocumentError
from powerdomains.repositories import DocumentRepository
from powerdomains.schemas import SpaceDocument, ValuationDocument
from powerdomains.services import valuation as va


def test_space_document_presentations(S, sierpinski_doc):
    """Test that opens and preorder presentations give the same space."""
    by_preorder = DocumentRepository.parse(sierpinski_doc, SpaceDocument).to_space()
    by_opens = SpaceDocument(points=["0", "1"], opens=[[], ["1"], ["0", "1"]]).to_space()
    assert by_preorder == by_opens == S
    assert SpaceDocument.from_space(S).to_space() == S


def test_valuation_document_table_form(W):
    nu = va.valuation_from_weights(W, {"y": "1/3", "t": "inf"})
    document = ValuationDocument.from_valuation(nu)
    assert document.opens_checksum == W.opens_checksum
    assert document.to_valuation(W) == nu


def test_table_index_out_of_range(S):
    document = ValuationDocument(
        space=SpaceDocument.from_space(S),
        table={0: "0", 7: "1"},
        opens_checksum=S.opens_checksum,
    )
    with pytest.raises(DocumentError):
        document.to_valuation(S)


def test_unknown_weight_points(S):
    document = ValuationDocument(space=SpaceDocument.from_space(S), weights={"z": "1"})
    with pytest.raises(DocumentError):
        document.to_valuation(S)


def test_repository_resolves_relative_space_paths(tmp_path, write_json, sierpinski_doc, S):
    """Test that space references resolve next to the referring file and are cached."""
    (tmp_path / "nested").mkdir()
    write_json("nested/S.json", sierpinski_doc)
    path = write_json("nested/nu.json", {"space": "S.json", "weights": {"1": "1"}})
    repo = DocumentRepository(tmp_path)
    document = repo.load("nested/nu.json", ValuationDocument)
    local = repo.relative_to(path)
    assert local.space(document.space) == S
    assert local.space("S.json") is repo.relative_to(path).space("S.json")


def test_parse_reports_errors():
    with pytest.raises(DocumentError) as info:
        DocumentRepository.parse({"points": ["a"]}, SpaceDocument)
    assert info.value.witness["errors"]
