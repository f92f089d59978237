"""Command-line surface."""

from powerdomains.cli.laws import laws
from powerdomains.cli.space import space
from powerdomains.cli.val import val

__all__ = ["space", "val", "laws"]
