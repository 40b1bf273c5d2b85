"""Shared test helpers: independent combinatorial oracles and cache poisoning."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from etp import MultiPoly, clear_caches, truncated_euler_poly
from etp.families import _CACHE, FamilyKind, FamilySpec


def set_partition_block_counts(n: int) -> dict[int, int]:
    """Count the partitions of an n-element set, keyed by number of blocks.

    Enumerates concrete restricted-growth assignments (element i joins an
    existing block or opens a new one), so it shares nothing with the
    triangle recurrence it is used to audit.
    """
    counts: dict[int, int] = {}

    def grow(i: int, used: int) -> None:
        if i == n:
            counts[used] = counts.get(used, 0) + 1
            return
        for label in range(used + 1):
            grow(i + 1, used + (1 if label == used else 0))

    grow(0, 0)
    return counts


def poison_truncated_euler(rng: random.Random, m_max: int = 3, n_max: int = 10) -> tuple[int, int]:
    """Warm the truncated-Euler caches to n_max, then add 1 to one stored
    coefficient at an index below n_max. Returns the (m, n) of the victim."""
    for m in range(m_max + 1):
        truncated_euler_poly(m, n_max)
    m = rng.randrange(m_max + 1)
    n = rng.randrange(n_max)
    spec = FamilySpec(FamilyKind.TRUNCATED_EULER, m=m)
    entries = _CACHE._polys[spec]
    terms = entries[n].terms()
    if terms:
        key = rng.choice(sorted(terms))
        terms[key] = terms[key] + 1
    else:
        terms[(0, 0)] = Fraction(1)
    entries[n] = MultiPoly(terms)
    return m, n


@pytest.fixture
def fresh_caches():
    """Run the test against empty family caches and clean up afterwards."""
    clear_caches()
    yield
    clear_caches()
