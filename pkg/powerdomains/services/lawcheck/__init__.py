"""Seeded law checking: generators, diagrams, suites, shrinking and mutations."""

from powerdomains.services.lawcheck.config import GenConfig
from powerdomains.services.lawcheck.generators import InstanceGenerator, generate_space
from powerdomains.services.lawcheck.mutations import MUTATIONS, run_mutation
from powerdomains.services.lawcheck.runner import run_suite, suite_names
from powerdomains.services.lawcheck.specimen import Specimen, shrink
from powerdomains.services.lawcheck.suites import SUITES, get_suite

__all__ = [
    "GenConfig",
    "InstanceGenerator",
    "generate_space",
    "Specimen",
    "shrink",
    "SUITES",
    "get_suite",
    "run_suite",
    "suite_names",
    "MUTATIONS",
    "run_mutation",
]
