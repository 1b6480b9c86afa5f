"""Shared brute-force oracles, kept independent of the library's incremental
routines: products are enumerated subset by subset straight from the
definitions."""

from __future__ import annotations

from itertools import combinations_with_replacement

import pytest

from ebring import build_ring


def subset_products(mul, terms):
    """Products of every nonempty subset, by direct mask enumeration."""
    n = len(terms)
    out = set()
    for mask in range(1, 1 << n):
        prod = None
        for i in range(n):
            if mask >> i & 1:
                prod = terms[i] if prod is None else mul(prod, terms[i])
        out.add(prod)
    return out


def ring_idempotents(ring):
    return {e for e in range(ring.order) if ring.mul(e, e) == e}


def is_free_sequence(ring, terms):
    return not (subset_products(ring.mul, terms) & ring_idempotents(ring))


def naive_eb(ring, limit=10):
    """Least length at which every sequence has an idempotent subset product."""
    for ell in range(1, limit + 1):
        if not any(is_free_sequence(ring, combo)
                   for combo in combinations_with_replacement(range(ring.order), ell)):
            return ell
    raise AssertionError(f"no bound found up to {limit}")


def naive_davenport(view, limit=10):
    """Least length at which every sequence has an identity subset product."""
    for ell in range(1, limit + 1):
        if not any(view.identity not in subset_products(view.op, combo)
                   for combo in combinations_with_replacement(view.elements, ell)):
            return ell
    raise AssertionError(f"no bound found up to {limit}")


FAMILY_SPECS = (
    [f"Z/{n}" for n in range(2, 17)]
    + [f"GF({q})" for q in (2, 3, 4, 5, 7, 8, 9)]
    + ["GF(2)[x]/(x^2)", "GF(2)[x]/(x^3)", "GF(2)[x]/(x^2+x)",
       "GF(2)[x]/(x^3+x^2)", "GF(3)[x]/(x^2)", "Z/4 x GF(3)"]
)

_family_cache: dict[str, object] = {}


def family_ring(spec: str):
    if spec not in _family_cache:
        _family_cache[spec] = build_ring(spec)
    return _family_cache[spec]


@pytest.fixture(scope="session")
def family():
    return [(spec, family_ring(spec)) for spec in FAMILY_SPECS]
