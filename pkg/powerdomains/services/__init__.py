"""Service layer."""

from powerdomains.services import hyperspace, probability, support, topology, valuation

__all__ = ["topology", "hyperspace", "valuation", "probability", "support"]
