"""Command-line entry point."""

import click

from powerdomains import __version__
from powerdomains.cli import laws, space, val
from powerdomains.cli.base import HandlingGroup
from powerdomains.core.config import settings
from powerdomains.core.exceptions import setup_exception_handlers
from powerdomains.core.logging import setup_logging


@click.group(cls=HandlingGroup, name=settings.PROJECT_NAME)
@click.version_option(__version__, prog_name=settings.PROJECT_NAME)
def cli() -> None:
    """Finite hyperspace, valuation and probability monads, and checks of their laws."""
    # Setup logging
    setup_logging()


# Setup exception handlers
setup_exception_handlers(cli)

# Include command groups
cli.add_command(space)
cli.add_command(val)
cli.add_command(laws)


def main() -> None:
    cli(prog_name=settings.PROJECT_NAME)
