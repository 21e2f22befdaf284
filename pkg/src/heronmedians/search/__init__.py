"""Parameter-space search for Heron triangles with two rational medians."""
from .core import (
    FoundTriangle,
    SearchConfig,
    SearchInterrupted,
    classify,
    default_workers,
    enumerate_params,
    family_bound_for,
    farey_fractions,
    run_search,
    test_candidate,
)

__all__ = [
    "FoundTriangle",
    "SearchConfig",
    "SearchInterrupted",
    "classify",
    "default_workers",
    "enumerate_params",
    "family_bound_for",
    "farey_fractions",
    "run_search",
    "test_candidate",
]
