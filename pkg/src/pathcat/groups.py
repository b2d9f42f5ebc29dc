"""Finite groups given by explicit multiplication tables."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np

from .errors import GroupError


@dataclass(frozen=True)
class GroupViolation:
    law: str
    witness: tuple

    def __str__(self):
        return f"{self.law}: {self.witness}"


class FiniteGroup:
    """A finite group with elements in a fixed order.

    ``table[a, b]`` is the index of ``elements[a] * elements[b]``.  The
    identity and inverse table are derived from the multiplication table;
    a table without a two-sided identity or without inverses raises
    :class:`GroupError`.  Associativity is only checked by
    :func:`validate_group`.
    """

    def __init__(self, elements: Sequence[Hashable], table, name: str | None = None):
        self.elements = tuple(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise GroupError("duplicate group elements")
        n = len(self.elements)
        if n == 0:
            raise GroupError("a group has at least one element")
        table = np.asarray(table, dtype=np.int64)
        if table.shape != (n, n):
            raise GroupError(f"table has shape {table.shape}, expected {(n, n)}")
        if table.min() < 0 or table.max() >= n:
            raise GroupError("table entries out of range")
        self.table = table
        self.table.setflags(write=False)
        self.name = name or f"G{n}"

        ar = np.arange(n)
        ids = [e for e in range(n) if (table[e] == ar).all() and (table[:, e] == ar).all()]
        if not ids:
            raise GroupError(f"{self.name}: no two-sided identity")
        self.identity_index = ids[0]
        inv = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            hits = np.nonzero((table[a] == self.identity_index) & (table[:, a] == self.identity_index))[0]
            if len(hits) == 0:
                raise GroupError(f"{self.name}: element {self.elements[a]!r} has no inverse")
            inv[a] = hits[0]
        self.inverse_table = inv
        self.inverse_table.setflags(write=False)

    @classmethod
    def from_function(cls, elements, mul, name=None):
        elements = tuple(elements)
        index = {x: i for i, x in enumerate(elements)}
        try:
            table = [[index[mul(a, b)] for b in elements] for a in elements]
        except KeyError as exc:
            raise GroupError(f"product {exc.args[0]!r} is not an element") from None
        return cls(elements, table, name=name)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.elements == other.elements and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.elements, self.table.tobytes()))

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self):
        return self.elements[self.identity_index]

    def mul(self, a, b):
        return self.elements[self.table[self.index[a], self.index[b]]]

    def inv(self, a):
        return self.elements[self.inverse_table[self.index[a]]]

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def centre(self) -> list[int]:
        """Indices of the elements commuting with everything."""
        return [a for a in range(self.order) if (self.table[a] == self.table[:, a]).all()]

    def conjugation(self, h: int) -> np.ndarray:
        """Index map of ``x -> h^-1 x h`` (``h`` an index)."""
        hi = self.inverse_table[h]
        return self.table[self.table[hi], h]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity_index:
            x = self.table[x, a]
            k += 1
        return k


def validate_group(g: FiniteGroup) -> list[GroupViolation]:
    """Exhaustive check of the group axioms; empty iff ``g`` is a group."""
    out = []
    t = g.table
    n = g.order
    left = t[t[:, :, None], np.arange(n)[None, None, :]]  # (ab)c
    right = t[np.arange(n)[:, None, None], t[None, :, :]]  # a(bc)
    bad = np.argwhere(left != right)
    for a, b, c in bad[:10]:
        out.append(GroupViolation("associativity", (g.elements[a], g.elements[b], g.elements[c])))
    e = g.identity_index
    for a in range(n):
        ia = g.inverse_table[a]
        if t[a, ia] != e or t[ia, a] != e:
            out.append(GroupViolation("inverse", (g.elements[a],)))
    return out


# ---------------------------------------------------------------------------
# standard groups


def trivial_group() -> FiniteGroup:
    return FiniteGroup((0,), [[0]], name="1")


def cyclic_group(n: int) -> FiniteGroup:
    ar = np.arange(n)
    return FiniteGroup(tuple(range(n)), (ar[:, None] + ar[None, :]) % n, name=f"Z{n}")


def compose_perms(p: tuple, q: tuple) -> tuple:
    """``p * q``: apply ``q`` first."""
    return tuple(p[i] for i in q)


def cycle(n: int, *points: int) -> tuple:
    """The permutation of ``range(n)`` sending each listed point to the next."""
    p = list(range(n))
    for a, b in zip(points, points[1:] + points[:1]):
        p[a] = b
    return tuple(p)


def symmetric_group(n: int) -> FiniteGroup:
    return FiniteGroup.from_function(itertools.permutations(range(n)), compose_perms, name=f"S{n}")


def permutation_group(generators: Sequence[tuple], name: str | None = None) -> FiniteGroup:
    """Closure of the given permutations under composition."""
    gens = [tuple(g) for g in generators]
    degree = len(gens[0])
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = compose_perms(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return FiniteGroup.from_function(sorted(seen), compose_perms, name=name)


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular ``n``-gon, order ``2n``."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return permutation_group([rot, ref], name=f"D{n}")


def direct_product(*groups: FiniteGroup) -> FiniteGroup:
    if len(groups) == 1:
        return groups[0]
    elements = tuple(itertools.product(*(g.elements for g in groups)))
    sizes = [g.order for g in groups]
    table = np.zeros((1, 1), dtype=np.int64)
    for g, k in zip(groups, sizes):
        table = (table[:, None, :, None] * k + g.table[None, :, None, :]).reshape(
            table.shape[0] * k, table.shape[1] * k
        )
    return FiniteGroup(elements, table, name="x".join(g.name for g in groups))


def klein_four() -> FiniteGroup:
    g = direct_product(cyclic_group(2), cyclic_group(2))
    g.name = "Z2xZ2"
    return g


def abelian_groups_up_to(order: int) -> list[FiniteGroup]:
    """One representative of every abelian group of the given order or less."""
    out = [trivial_group()]
    for n in range(2, order + 1):
        out.extend(_abelian_of_order(n))
    return out


def _partitions(k, largest=None):
    if k == 0:
        yield ()
        return
    largest = largest or k
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions(k - first, first):
            yield (first,) + rest


def _factorize(n):
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _abelian_of_order(n):
    per_prime = []
    for p, k in sorted(_factorize(n).items()):
        per_prime.append([[p**e for e in part] for part in _partitions(k)])
    groups = []
    for choice in itertools.product(*per_prime):
        orders = sorted(o for part in choice for o in part)
        g = direct_product(*(cyclic_group(o) for o in orders))
        g.name = "x".join(f"Z{o}" for o in orders)
        groups.append(g)
    return groups


def group_by_name(name: str) -> FiniteGroup:
    """Named groups: ``1``, ``Z<n>``, ``S<n>``, ``D<n>`` (order 2n), ``V4``,
    and ``x``-separated products such as ``Z2xZ4``."""
    key = name.strip()
    if key in ("1", "trivial"):
        return trivial_group()
    if key in ("V4", "Z2xZ2", "Z2^2"):
        return klein_four()
    if "x" in key:
        g = direct_product(*(group_by_name(part) for part in key.split("x")))
        g.name = key
        return g
    kind, num = key[0], key[1:]
    if not num.isdigit():
        raise ValueError(f"unknown group name {name!r}")
    n = int(num)
    if kind == "Z":
        return cyclic_group(n)
    if kind == "S":
        return symmetric_group(n)
    if kind == "D":
        return dihedral_group(n)
    raise ValueError(f"unknown group name {name!r}")
