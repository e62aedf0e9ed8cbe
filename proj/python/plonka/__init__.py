"""Decomposition of finite algebras into direct systems of isolated subalgebras."""

import json
from pathlib import Path

from ._plonka import (
    Algebra,
    DirectSystem,
    InputError,
    ResourceError,
    is_plonka_sum,
    isolated,
    parse_algebra,
    parse_system,
    partition_function,
    plonka_sum,
    search_partition,
    systems,
    verify_reconstruction,
)
from ._plonka import decompose_report as _decompose_report

__all__ = [
    "Algebra",
    "DirectSystem",
    "InputError",
    "ResourceError",
    "decompose",
    "is_plonka_sum",
    "isolated",
    "load_algebra",
    "load_system",
    "parse_algebra",
    "parse_system",
    "partition_function",
    "plonka_sum",
    "search_partition",
    "systems",
    "verify_reconstruction",
]


def load_algebra(path):
    return parse_algebra(Path(path).read_text(encoding="utf-8"))


def load_system(path):
    return parse_system(Path(path).read_text(encoding="utf-8"))


def decompose(algebra, max_universe=16, timing=False):
    """Full decomposition report as a dict (the JSON schema of the CLI)."""
    return json.loads(_decompose_report(algebra, "json", max_universe, timing))
