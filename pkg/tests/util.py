"""Shared helpers for the test suite."""

import itertools
import json
import pathlib
import random

from momentangle import SimplicialComplex, new_complex

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def load_fixture(name):
    with open(FIXTURES / name, "r", encoding="utf-8") as handle:
        return json.load(handle)


def fixture_complex(name, key=None):
    data = load_fixture(name)
    if key is not None:
        data = data[key]
    return SimplicialComplex.from_dict(data)


def all_complexes_on(n):
    """Every simplicial complex with ambient set {1..n} and support {1..n}-ish.

    Enumerated as antichains of facets: every nonempty downward-closed
    face family is determined by its maximal elements.  The empty-facet
    complex {∅} is included once.  Small n only.
    """
    subsets = list(range(1, 1 << n))
    seen = set()
    out = []
    for r in range(0, len(subsets) + 1):
        if r > 6:
            break
        for combo in itertools.combinations(subsets, r):
            if any(a != b and a & b == a for a in combo for b in combo):
                continue
            masks = [frozenset(
                v for v in range(1, n + 1) if f & (1 << (v - 1))) for f in combo]
            key = frozenset(frozenset(m) for m in masks)
            if key in seen:
                continue
            seen.add(key)
            out.append(new_complex(n, [sorted(m) for m in masks]))
    return out


def random_antichain_complex(rng, n, max_facets=None):
    """A complex drawn by sampling facets directly (antichain pruning is
    done by the constructor)."""
    if max_facets is None:
        max_facets = n + 2
    count = rng.randint(1, max_facets)
    facets = []
    for _ in range(count):
        size = rng.randint(1, n)
        facets.append(sorted(rng.sample(range(1, n + 1), size)))
    return new_complex(n, facets)


def seeded(seed):
    return random.Random(seed)
