"""Seeded random groupoids and functors for sweeps and property tests.

Every finite groupoid is equivalent to a disjoint union of deloopings, and
up to isomorphism each connected one is ``codiscrete(k) x B(G)``; the
generator draws exactly these, so the corpus covers all isomorphism types
within the size bounds.
"""

from __future__ import annotations

import random

from .groupoids import (
    FiniteGroupoid,
    GroupoidMap,
    codiscrete,
    delooping,
    disjoint_union,
    discrete,
    interval,
    product,
    terminal,
)
from .groups import FiniteGroup, abelian_groups_up_to, cyclic_group, symmetric_group
from .search import iter_functors


def small_groups(max_order: int) -> list[FiniteGroup]:
    groups = abelian_groups_up_to(max_order)
    if max_order >= 6:
        groups.append(symmetric_group(3))
    return groups


def connected_groupoid(k: int, grp: FiniteGroup) -> FiniteGroupoid:
    """``codiscrete(k) x B(G)`` with plain names."""
    if k == 1:
        return delooping(grp)
    g = product(codiscrete(k), delooping(grp)).groupoid
    g.name = f"codiscrete({k}) x B({grp.name})"
    return g


def random_groupoid(rng: random.Random, max_objects: int = 4, max_hom: int = 4,
                    allow_empty: bool = False) -> FiniteGroupoid:
    """Disjoint union of random connected pieces, at most ``max_objects`` objects."""
    lo = 0 if allow_empty else 1
    n = rng.randint(lo, max_objects)
    groups = small_groups(max_hom)
    parts = []
    left = n
    while left:
        k = rng.randint(1, left)
        parts.append(connected_groupoid(k, rng.choice(groups)))
        left -= k
    if not parts:
        return discrete(0)
    if len(parts) == 1:
        return parts[0]
    return disjoint_union(*parts)[0]


def random_functor(rng: random.Random, a: FiniteGroupoid, b: FiniteGroupoid, **constraints) -> GroupoidMap | None:
    """A random functor ``a -> b`` (not uniform), or ``None`` if there is none."""
    return next(iter_functors(a, b, rng=rng, **constraints), None)


def random_map(rng: random.Random, max_objects: int = 4, max_hom: int = 4, tries: int = 20) -> GroupoidMap:
    """A random functor between random groupoids."""
    for _ in range(tries):
        a = random_groupoid(rng, max_objects, max_hom)
        b = random_groupoid(rng, max_objects, max_hom)
        f = random_functor(rng, a, b)
        if f is not None:
            return f
    a = random_groupoid(rng, max_objects, max_hom)
    return random_functor(rng, a, terminal())


def probe_groupoids() -> list[FiniteGroupoid]:
    """Fixed small shapes used alongside random ones."""
    return [
        terminal(), interval(), discrete(2), codiscrete(3),
        delooping(cyclic_group(2)), delooping(cyclic_group(3)),
    ]


def groupoid_corpus(seed: int, count: int, max_objects: int = 4, max_hom: int = 4) -> list[FiniteGroupoid]:
    rng = random.Random(seed)
    return probe_groupoids() + [random_groupoid(rng, max_objects, max_hom) for _ in range(count)]


def map_corpus(seed: int, count: int, max_objects: int = 4, max_hom: int = 4) -> list[GroupoidMap]:
    rng = random.Random(seed)
    return [random_map(rng, max_objects, max_hom) for _ in range(count)]
