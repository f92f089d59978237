"""Repository layer."""

from powerdomains.repositories.document_repository import DocumentRepository

__all__ = ["DocumentRepository"]
