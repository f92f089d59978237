"""Document repository."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, TypeVar

from pydantic import BaseModel, ValidationError
from structlog import get_logger

from powerdomains.core.exceptions import DocumentError
from powerdomains.models.space import FiniteSpace
from powerdomains.schemas.documents import SpaceDocument, SpaceRef

logger = get_logger()

DocumentT = TypeVar("DocumentT", bound=BaseModel)


class DocumentRepository:
    """Repository for JSON documents; space references resolve relative to the referring file."""

    def __init__(self, base_dir: Path | None = None):
        """Initialize repository with the directory relative paths resolve against."""
        self.base_dir = base_dir or Path.cwd()
        self._spaces: dict[Path, FiniteSpace] = {}

    def _path(self, path: str | Path) -> Path:
        p = Path(path)
        return p if p.is_absolute() else self.base_dir / p

    def read_json(self, path: str | Path) -> Any:
        """Read and decode a JSON file."""
        p = self._path(path)
        try:
            text = p.read_text(encoding="utf-8")
        except OSError as exc:
            raise DocumentError("cannot read document", path=str(p), reason=exc.strerror) from exc
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError("malformed JSON", path=str(p), line=exc.lineno, column=exc.colno) from exc

    def load(self, path: str | Path, model: type[DocumentT]) -> DocumentT:
        """Read a document and validate it against ``model``."""
        return self.parse(self.read_json(path), model, source=str(self._path(path)))

    @staticmethod
    def parse(data: Any, model: type[DocumentT], source: str = "<inline>") -> DocumentT:
        try:
            return model.model_validate(data)
        except ValidationError as exc:
            errors = [{"loc": list(e["loc"]), "msg": e["msg"]} for e in exc.errors()]
            raise DocumentError(f"document does not match {model.__name__}", path=source, errors=errors) from exc

    def space(self, ref: SpaceRef) -> FiniteSpace:
        """Resolve an inline space document or a path to one."""
        if isinstance(ref, SpaceDocument):
            return ref.to_space()
        path = self._path(ref).resolve()
        if path not in self._spaces:
            self._spaces[path] = self.load(path, SpaceDocument).to_space()
            logger.debug("Loaded space", path=str(path), points=self._spaces[path].size)
        return self._spaces[path]

    def relative_to(self, path: str | Path) -> DocumentRepository:
        """Repository resolving against the directory of ``path``, sharing the space cache."""
        child = DocumentRepository(self._path(path).parent)
        child._spaces = self._spaces
        return child

    @staticmethod
    def dumps(document: BaseModel | Any) -> str:
        """Encode a document or plain data as JSON."""
        if isinstance(document, BaseModel):
            return document.model_dump_json(exclude_none=True)
        return json.dumps(document, sort_keys=True, default=str)
