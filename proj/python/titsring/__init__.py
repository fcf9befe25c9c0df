"""Steinberg ranks, Tits complexes and their homology over finite commutative rings."""

import json as _json

from ._core import (
    BudgetExceeded,
    __version__,
    apartments,
    canonical_ring,
    flag_count,
    grassmannian,
    grassmannian_size,
    homology,
    p1_orbits,
    rank_table,
    ring_size,
    steinberg_ranks,
    verify_json,
)


def verify(tier="fast", jobs=1, seed=1, budget=1_000_000):
    """Run the self-check suite and return the parsed report."""
    return _json.loads(verify_json(tier=tier, jobs=jobs, seed=seed, budget=budget))


__all__ = [
    "BudgetExceeded",
    "__version__",
    "apartments",
    "canonical_ring",
    "flag_count",
    "grassmannian",
    "grassmannian_size",
    "homology",
    "p1_orbits",
    "rank_table",
    "ring_size",
    "steinberg_ranks",
    "verify",
    "verify_json",
]
