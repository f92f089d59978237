"""Click group with per-exception-class handlers."""

from __future__ import annotations

from collections.abc import Callable
from typing import Any

import click

from powerdomains.core.config import settings
from powerdomains.repositories.document_repository import DocumentRepository

Handler = Callable[[Exception], int]


class HandlingGroup(click.Group):
    """A group that turns exceptions raised by its commands into exit codes.

    The handler registered for the nearest class in the exception's MRO wins.
    """

    def __init__(self, *args: Any, **kwargs: Any) -> None:
        super().__init__(*args, **kwargs)
        self.exception_handlers: dict[type[Exception], Handler] = {}

    def add_exception_handler(self, exc_class: type[Exception], handler: Handler) -> None:
        self.exception_handlers[exc_class] = handler

    def handler_for(self, exc: Exception) -> Handler | None:
        for cls in type(exc).__mro__:
            if cls in self.exception_handlers:
                return self.exception_handlers[cls]
        return None

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except (click.exceptions.Exit, click.ClickException, click.Abort):
            raise
        except Exception as exc:
            handler = self.handler_for(exc)
            if handler is None:
                raise
            ctx.exit(handler(exc))


def repository(ctx: click.Context) -> DocumentRepository:
    """The document repository shared by the commands of one invocation."""
    root = ctx.find_root()
    if not isinstance(root.obj, DocumentRepository):
        root.obj = DocumentRepository()
    return root.obj


def emit(document: Any) -> None:
    """Write a document to stdout as one JSON line."""
    click.echo(DocumentRepository.dumps(document))


def styled(text: str, ok: bool) -> str:
    if not settings.COLOR:
        return text
    return click.style(text, fg="green" if ok else "red")
