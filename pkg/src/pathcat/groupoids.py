"""Finite groupoids, functors between them, and natural isomorphisms.

Everything is stored by index: objects ``0..n-1`` and morphisms ``0..m-1``
in the order given at construction, with the user-facing ids kept alongside.
Composition is classical, ``g o f``.  It is stored locally: ``local[g, k]``
is ``g`` composed with the ``k``-th morphism into ``src(g)``, so memory grows
with the number of composable pairs rather than the square of the number of
morphisms.  Values are immutable after construction.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from .errors import DomainMismatch, StructuralError
from .groups import FiniteGroup

IDX = np.int64


def _frozen(a) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=IDX)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Violation:
    """One failed law, with the ids that witness the failure."""

    law: str
    witness: tuple

    def __str__(self):
        return f"{self.law}: {', '.join(map(repr, self.witness))}"


def _into_structure(n_objects: int, dst: np.ndarray):
    """Morphisms into each object, padded table of them, and each morphism's position."""
    into = [[] for _ in range(n_objects)]
    for i, t in enumerate(dst.tolist()):
        into[t].append(i)
    d = max([1] + [len(v) for v in into])
    pad = np.full((n_objects, d), -1, dtype=IDX)
    pos = np.zeros(len(dst), dtype=IDX)
    for x, v in enumerate(into):
        pad[x, : len(v)] = v
        pos[v] = np.arange(len(v))
    return into, pad, pos


class FiniteGroupoid:
    """A groupoid with finitely many objects and morphisms.

    Use :meth:`from_tables` for user input (ids are checked); the plain
    constructor trusts index arrays and is what the constructions use.
    """

    def __init__(self, objects, morphisms, src, dst, ident, comp=None, inv=None, name=None, *, local=None):
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self.src = _frozen(src)
        self.dst = _frozen(dst)
        self.ident = _frozen(ident)
        self.inv = _frozen(inv)
        self.name = name
        m = len(self.morphisms)
        into, pad, pos = _into_structure(len(self.objects), self.dst)
        d = pad.shape[1]
        self.into_pad = _frozen(pad)
        self.pos = _frozen(pos)
        self.into_idx = tuple(tuple(v) for v in into)
        if local is None:
            comp = np.asarray(comp, dtype=IDX).reshape(m, m)
            cols = self.into_pad[self.src] if m else np.zeros((0, d), dtype=IDX)
            local = np.where(cols >= 0, comp[np.arange(m)[:, None], np.maximum(cols, 0)], -1) if m else cols
        self.local = _frozen(np.asarray(local, dtype=IDX).reshape(m, d))

    @classmethod
    def from_composer(cls, objects, morphisms, src, dst, ident, inv, compose, name=None):
        """Build from a vectorized ``compose(gs, fs)`` called on composable pairs only."""
        src = np.asarray(src, dtype=IDX)
        _, pad, _ = _into_structure(len(objects), np.asarray(dst, dtype=IDX))
        m = len(morphisms)
        cols = pad[src] if m else np.zeros((0, pad.shape[1]), dtype=IDX)
        mask = cols >= 0
        gs = np.broadcast_to(np.arange(m)[:, None], cols.shape)[mask]
        local = np.full(cols.shape, -1, dtype=IDX)
        if gs.size:
            local[mask] = compose(gs, cols[mask])
        return cls(objects, morphisms, src, dst, ident, inv=inv, name=name, local=local)

    # -- construction from ids -------------------------------------------------

    @classmethod
    def from_tables(
        cls,
        objects: Sequence[Hashable],
        morphisms: Iterable[tuple],
        identities: Mapping,
        compose,
        inverse: Mapping,
        name=None,
    ) -> "FiniteGroupoid":
        """Build from id-level tables.

        ``morphisms`` holds ``(id, source, target)`` records; ``compose`` is a
        mapping ``(g, f) -> g o f`` or an iterable of ``(g, f, gf)`` triples
        and must cover exactly the composable pairs.  Dangling ids, duplicate
        ids and missing or extra composites raise :class:`StructuralError`.
        Law violations are left for :func:`validate_groupoid`.
        """
        problems = []
        objects = tuple(objects)
        oidx = {}
        for x in objects:
            if x in oidx:
                problems.append(f"duplicate object id {x!r}")
            oidx[x] = len(oidx)
        mids, src, dst = [], [], []
        midx = {}
        for rec in morphisms:
            mid, s, t = rec
            if mid in midx:
                problems.append(f"duplicate morphism id {mid!r}")
                continue
            for end, label in ((s, "source"), (t, "target")):
                if end not in oidx:
                    problems.append(f"morphism {mid!r} has dangling {label} {end!r}")
            midx[mid] = len(mids)
            mids.append(mid)
            src.append(oidx.get(s, -1))
            dst.append(oidx.get(t, -1))
        m = len(mids)
        ident = []
        for x in objects:
            i = identities.get(x)
            if i is None:
                problems.append(f"object {x!r} has no identity")
                ident.append(-1)
            elif i not in midx:
                problems.append(f"identity of {x!r} is dangling morphism {i!r}")
                ident.append(-1)
            else:
                ident.append(midx[i])
        for x in identities:
            if x not in oidx:
                problems.append(f"identity given for dangling object {x!r}")
        inv = []
        for mid in mids:
            j = inverse.get(mid)
            if j is None:
                problems.append(f"morphism {mid!r} has no inverse entry")
                inv.append(-1)
            elif j not in midx:
                problems.append(f"inverse of {mid!r} is dangling morphism {j!r}")
                inv.append(-1)
            else:
                inv.append(midx[j])
        triples = compose.items() if isinstance(compose, Mapping) else compose
        comp = np.full((m, m), -1, dtype=IDX)
        for entry in triples:
            if isinstance(compose, Mapping):
                (g, f), gf = entry
            else:
                g, f, gf = entry
            bad = [z for z in (g, f, gf) if z not in midx]
            if bad:
                problems.append(f"composition ({g!r}, {f!r}) uses dangling morphism {bad[0]!r}")
                continue
            gi, fi = midx[g], midx[f]
            if dst[fi] != src[gi] or dst[fi] < 0:
                problems.append(f"composite given for non-composable pair ({g!r}, {f!r})")
                continue
            if comp[gi, fi] >= 0 and comp[gi, fi] != midx[gf]:
                problems.append(f"conflicting composites for ({g!r}, {f!r})")
                continue
            comp[gi, fi] = midx[gf]
        if not problems:
            s_ = np.asarray(src)
            d_ = np.asarray(dst)
            need = d_[None, :] == s_[:, None]
            missing = np.argwhere(need & (comp < 0))
            for gi, fi in missing[:10]:
                problems.append(f"missing composite for composable pair ({mids[gi]!r}, {mids[fi]!r})")
        if problems:
            raise StructuralError(problems)
        return cls(objects, mids, src, dst, ident, comp, inv, name=name)

    # -- basic accessors --------------------------------------------------------

    def __repr__(self):
        label = f"{self.name}, " if self.name else ""
        return f"FiniteGroupoid({label}{self.n_objects} objects, {self.n_morphisms} morphisms)"

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.morphisms)

    @cached_property
    def obj_index(self) -> dict:
        return {x: i for i, x in enumerate(self.objects)}

    @cached_property
    def mor_index(self) -> dict:
        return {f: i for i, f in enumerate(self.morphisms)}

    @cached_property
    def fingerprint(self) -> bytes:
        h = hashlib.blake2b(digest_size=20)
        h.update(repr((self.objects, self.morphisms)).encode())
        for a in (self.src, self.dst, self.ident, self.inv, self.local):
            h.update(a.tobytes())
        return h.digest()

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteGroupoid):
            return NotImplemented
        return self.fingerprint == other.fingerprint

    def __hash__(self):
        return hash(self.fingerprint)

    @cached_property
    def comp(self) -> np.ndarray:
        """Dense ``m x m`` composition table; only sensible for small groupoids."""
        m = self.n_morphisms
        out = np.full((m, m), -1, dtype=IDX)
        if m:
            cols = self.into_pad[self.src]
            mask = cols >= 0
            rows = np.broadcast_to(np.arange(m)[:, None], cols.shape)
            out[rows[mask], cols[mask]] = self.local[mask]
        out.setflags(write=False)
        return out

    def mul(self, g, f) -> np.ndarray:
        """Vectorized ``g o f`` by index, ``-1`` where not composable."""
        g = np.asarray(g, dtype=IDX)
        f = np.asarray(f, dtype=IDX)
        if self.n_morphisms == 0:
            return np.full(np.broadcast(g, f).shape, -1, dtype=IDX)
        ok = (g >= 0) & (f >= 0)
        gc, fc = np.where(ok, g, 0), np.where(ok, f, 0)
        ok &= self.dst[fc] == self.src[gc]
        return np.where(ok, self.local[gc, self.pos[fc]], -1)

    @cached_property
    def local_rows(self) -> list[list[int]]:
        """``local_rows[g][pos[f]] = g o f`` as nested lists (fast scalar lookups)."""
        return self.local.tolist()

    @cached_property
    def pos_list(self) -> list[int]:
        return self.pos.tolist()

    def cmp(self, g: int, f: int) -> int:
        """Scalar ``g o f`` by index; the pair must be composable."""
        return self.local_rows[g][self.pos_list[f]]

    @cached_property
    def _homs(self) -> dict:
        homs = {}
        for i, (s, t) in enumerate(zip(self.src.tolist(), self.dst.tolist())):
            homs.setdefault((s, t), []).append(i)
        return {k: tuple(v) for k, v in homs.items()}

    def hom_idx(self, x: int, y: int) -> tuple:
        return self._homs.get((x, y), ())

    @cached_property
    def out_idx(self) -> tuple:
        out = [[] for _ in self.objects]
        for i, s in enumerate(self.src.tolist()):
            out[s].append(i)
        return tuple(tuple(v) for v in out)

    # id-level helpers
    def source(self, f):
        return self.objects[self.src[self.mor_index[f]]]

    def target(self, f):
        return self.objects[self.dst[self.mor_index[f]]]

    def identity(self, x):
        return self.morphisms[self.ident[self.obj_index[x]]]

    def inverse(self, f):
        return self.morphisms[self.inv[self.mor_index[f]]]

    def compose(self, g, f):
        """``g o f`` by id; ``None`` when not composable."""
        k = int(self.mul(self.mor_index[g], self.mor_index[f]))
        return None if k < 0 else self.morphisms[k]

    def hom(self, x, y) -> tuple:
        return tuple(self.morphisms[i] for i in self.hom_idx(self.obj_index[x], self.obj_index[y]))

    @cached_property
    def component_of(self) -> np.ndarray:
        """Connected-component label per object, labels in order of first object."""
        lab = np.full(self.n_objects, -1, dtype=IDX)
        nxt = 0
        for x in range(self.n_objects):
            if lab[x] >= 0:
                continue
            for i in self.out_idx[x]:
                lab[self.dst[i]] = nxt
            lab[x] = nxt
            nxt += 1
        return lab

    @cached_property
    def components(self) -> tuple:
        """Objects grouped by connected component (groupoids: one hop suffices)."""
        groups: dict[int, list[int]] = {}
        for x, c in enumerate(self.component_of.tolist()):
            groups.setdefault(c, []).append(x)
        return tuple(tuple(v) for _, v in sorted(groups.items()))

    def is_discrete(self) -> bool:
        return self.n_morphisms == self.n_objects

    def loop_orders(self) -> set[int]:
        """Orders of all endomorphisms."""
        orders = set()
        for f in range(self.n_morphisms):
            if self.src[f] != self.dst[f]:
                continue
            k, x, e = 1, f, self.ident[self.src[f]]
            while x != e:
                x = self.cmp(x, f)
                k += 1
            orders.add(k)
        return orders


# ---------------------------------------------------------------------------
# validation


def composable_pairs(g: FiniteGroupoid):
    """Index arrays ``(gs, fs, gfs)`` over all composable pairs."""
    m = g.n_morphisms
    if m == 0:
        z = np.zeros(0, dtype=IDX)
        return z, z, z
    cols = g.into_pad[g.src]
    mask = cols >= 0
    gs = np.broadcast_to(np.arange(m)[:, None], cols.shape)[mask]
    return gs, cols[mask], g.local[mask]


def validate_groupoid(g: FiniteGroupoid, limit: int = 10) -> list[Violation]:
    """Exhaustive check of the groupoid laws.

    Returns an empty list iff identity, inverse, associativity and
    source/target laws hold.  At most ``limit`` witnesses are kept per law.
    """
    out: list[Violation] = []
    m, ids = g.n_morphisms, g.morphisms
    if m == 0:
        return out
    src, dst, inv, ident = g.src, g.dst, g.inv, g.ident
    ar = np.arange(m)

    def note(law, rows):
        for r in rows[:limit]:
            out.append(Violation(law, tuple(ids[int(i)] for i in np.atleast_1d(r))))

    bad_id = [x for x in range(g.n_objects) if src[ident[x]] != x or dst[ident[x]] != x]
    for x in bad_id[:limit]:
        out.append(Violation("identity endpoints", (g.objects[x], ids[ident[x]])))
    note("left identity", np.nonzero(g.mul(ident[dst], ar) != ar)[0])
    note("right identity", np.nonzero(g.mul(ar, ident[src]) != ar)[0])

    note("inverse endpoints", np.nonzero((src[inv] != dst) | (dst[inv] != src))[0])
    ok_inv = (src[inv] == dst) & (dst[inv] == src)
    note("inverse law g o g^-1 = id", np.nonzero(ok_inv & (g.mul(ar, inv) != ident[dst]))[0])
    note("inverse law g^-1 o g = id", np.nonzero(ok_inv & (g.mul(inv, ar) != ident[src]))[0])

    gs, fs, hs = composable_pairs(g)
    missing = hs < 0
    note("missing composite", np.stack([gs[missing], fs[missing]], axis=1))
    hc = np.maximum(hs, 0)
    bad = ~missing & ((src[hc] != src[fs]) | (dst[hc] != dst[gs]))
    note("composite endpoints", np.stack([gs[bad], fs[bad]], axis=1))

    assoc = []
    for k in range(m):
        # k o (g o f) versus (k o g) o f over composable g, f with dst(g) = src(k)
        sel = dst[gs] == src[k]
        if not sel.any():
            continue
        g1, f1, h1 = gs[sel], fs[sel], hs[sel]
        lhs = g.mul(np.full_like(h1, k), h1)
        rhs = g.mul(g.mul(np.full_like(g1, k), g1), f1)
        for i in np.nonzero(lhs != rhs)[0][: limit - len(assoc)]:
            assoc.append((k, int(g1[i]), int(f1[i])))
        if len(assoc) >= limit:
            break
    for t in assoc:
        out.append(Violation("associativity", tuple(ids[i] for i in t)))
    return out


# ---------------------------------------------------------------------------
# functors


class GroupoidMap:
    """A functor, stored as index arrays ``obj_map`` and ``mor_map``.

    ``g @ f`` is the composite ``g o f``.
    """

    def __init__(self, domain: FiniteGroupoid, codomain: FiniteGroupoid, obj_map, mor_map, name=None):
        self.domain = domain
        self.codomain = codomain
        self.obj_map = _frozen(obj_map)
        self.mor_map = _frozen(mor_map)
        self.name = name
        if len(self.obj_map) != domain.n_objects or len(self.mor_map) != domain.n_morphisms:
            raise StructuralError("functor arrays do not match the domain size")

    @classmethod
    def from_dicts(cls, domain, codomain, object_map: Mapping, morphism_map: Mapping, name=None):
        """Build from id-level maps; missing or dangling entries raise StructuralError."""
        problems = []
        om, mm = [], []
        for x in domain.objects:
            y = object_map.get(x, _MISSING)
            if y is _MISSING:
                problems.append(f"object {x!r} has no image")
            elif y not in codomain.obj_index:
                problems.append(f"object {x!r} maps to dangling object {y!r}")
            om.append(codomain.obj_index.get(y, 0))
        for f in domain.morphisms:
            g = morphism_map.get(f, _MISSING)
            if g is _MISSING:
                problems.append(f"morphism {f!r} has no image")
            elif g not in codomain.mor_index:
                problems.append(f"morphism {f!r} maps to dangling morphism {g!r}")
            mm.append(codomain.mor_index.get(g, 0))
        for x in object_map:
            if x not in domain.obj_index:
                problems.append(f"image given for dangling object {x!r}")
        for f in morphism_map:
            if f not in domain.mor_index:
                problems.append(f"image given for dangling morphism {f!r}")
        if problems:
            raise StructuralError(problems)
        return cls(domain, codomain, om, mm, name=name)

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return f"GroupoidMap({label}{self.domain!r} -> {self.codomain!r})"

    def __eq__(self, other):
        if not isinstance(other, GroupoidMap):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and np.array_equal(self.obj_map, other.obj_map)
            and np.array_equal(self.mor_map, other.mor_map)
        )

    def __hash__(self):
        return hash((self.domain.fingerprint, self.obj_map.tobytes(), self.mor_map.tobytes()))

    def on_object(self, x):
        return self.codomain.objects[self.obj_map[self.domain.obj_index[x]]]

    def on_morphism(self, f):
        return self.codomain.morphisms[self.mor_map[self.domain.mor_index[f]]]

    def object_dict(self) -> dict:
        return {x: self.codomain.objects[i] for x, i in zip(self.domain.objects, self.obj_map.tolist())}

    def morphism_dict(self) -> dict:
        return {f: self.codomain.morphisms[i] for f, i in zip(self.domain.morphisms, self.mor_map.tolist())}

    def __matmul__(self, other: "GroupoidMap") -> "GroupoidMap":
        return compose_maps(self, other)

    def is_identity(self) -> bool:
        return (
            self.domain == self.codomain
            and np.array_equal(self.obj_map, np.arange(self.domain.n_objects))
            and np.array_equal(self.mor_map, np.arange(self.domain.n_morphisms))
        )


_MISSING = object()


def identity_map(g: FiniteGroupoid) -> GroupoidMap:
    return GroupoidMap(g, g, np.arange(g.n_objects), np.arange(g.n_morphisms), name="id")


def compose_maps(g: GroupoidMap, f: GroupoidMap) -> GroupoidMap:
    """``g o f``; the codomain of ``f`` must equal the domain of ``g``."""
    if f.codomain != g.domain:
        raise DomainMismatch(f"cannot compose {g!r} after {f!r}")
    return GroupoidMap(f.domain, g.codomain, g.obj_map[f.obj_map], g.mor_map[f.mor_map])


def validate_map(f: GroupoidMap, limit: int = 10) -> list[Violation]:
    """Exhaustive functoriality check; empty iff ``f`` is a functor."""
    out = []
    A, B = f.domain, f.codomain
    om, mm = f.obj_map, f.mor_map
    dn, dm = A.morphisms, A.objects
    if B.n_objects == 0 and A.n_objects:
        return [Violation("nonempty domain into empty codomain", ())]
    bad = np.nonzero((B.src[mm] != om[A.src]) | (B.dst[mm] != om[A.dst]))[0]
    out += [Violation("preserves source/target", (dn[i],)) for i in bad[:limit]]
    bad = np.nonzero(mm[A.ident] != B.ident[om])[0]
    out += [Violation("preserves identities", (dm[i],)) for i in bad[:limit]]
    gi, fi, gfi = composable_pairs(A)
    lhs = mm[gfi]
    rhs = B.mul(mm[gi], mm[fi])
    bad = np.nonzero(lhs != rhs)[0]
    out += [Violation("preserves composition", (dn[gi[i]], dn[fi[i]])) for i in bad[:limit]]
    return out


def constant_map(a: FiniteGroupoid, b: FiniteGroupoid, obj) -> GroupoidMap:
    """The functor sending everything to ``obj`` and its identity."""
    y = b.obj_index[obj]
    return GroupoidMap(a, b, np.full(a.n_objects, y), np.full(a.n_morphisms, b.ident[y]))


# ---------------------------------------------------------------------------
# natural isomorphisms


class NaturalIso:
    """A natural isomorphism ``source => target`` between parallel functors.

    ``components[x]`` is the index of a codomain morphism
    ``source(x) -> target(x)``.
    """

    def __init__(self, source: GroupoidMap, target: GroupoidMap, components):
        if source.domain != target.domain or source.codomain != target.codomain:
            raise DomainMismatch("natural isomorphism between non-parallel functors")
        self.source = source
        self.target = target
        self.components = _frozen(components)

    @classmethod
    def from_dict(cls, source, target, components: Mapping):
        B = source.codomain
        return cls(source, target, [B.mor_index[components[x]] for x in source.domain.objects])

    def __repr__(self):
        return f"NaturalIso({self.component_dict()!r})"

    def __eq__(self, other):
        if not isinstance(other, NaturalIso):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and np.array_equal(self.components, other.components)
        )

    def __hash__(self):
        return hash((hash(self.source), self.components.tobytes()))

    def component(self, x):
        return self.source.codomain.morphisms[self.components[self.source.domain.obj_index[x]]]

    def component_dict(self) -> dict:
        B = self.source.codomain
        return {x: B.morphisms[c] for x, c in zip(self.source.domain.objects, self.components.tolist())}

    @classmethod
    def identity(cls, f: GroupoidMap) -> "NaturalIso":
        return cls(f, f, f.codomain.ident[f.obj_map])

    def inverse(self) -> "NaturalIso":
        return NaturalIso(self.target, self.source, self.source.codomain.inv[self.components])

    def then(self, other: "NaturalIso") -> "NaturalIso":
        """Vertical composite: ``self`` followed by ``other``."""
        if self.target != other.source:
            raise DomainMismatch("vertical composite of non-matching natural isos")
        return NaturalIso(self.source, other.target, self.source.codomain.mul(other.components, self.components))

    def whisker(self, h: GroupoidMap) -> "NaturalIso":
        """``self * h``: precompose both functors with ``h``."""
        return NaturalIso(compose_maps(self.source, h), compose_maps(self.target, h), self.components[h.obj_map])

    def postcompose(self, k: GroupoidMap) -> "NaturalIso":
        """``k * self``: postcompose both functors with ``k``."""
        return NaturalIso(compose_maps(k, self.source), compose_maps(k, self.target), k.mor_map[self.components])


def validate_natural_iso(eta: NaturalIso, limit: int = 10) -> list[Violation]:
    """Check endpoints of every component and every naturality square."""
    F, G = eta.source, eta.target
    A, B = F.domain, F.codomain
    c = eta.components
    out = []
    bad = np.nonzero((B.src[c] != F.obj_map) | (B.dst[c] != G.obj_map))[0]
    out += [Violation("component endpoints", (A.objects[i],)) for i in bad[:limit]]
    if out:
        return out
    # G(a) o c_x == c_y o F(a) for a: x -> y
    lhs = B.mul(G.mor_map, c[A.src])
    rhs = B.mul(c[A.dst], F.mor_map)
    bad = np.nonzero(lhs != rhs)[0]
    out += [Violation("naturality", (A.morphisms[i],)) for i in bad[:limit]]
    return out


# ---------------------------------------------------------------------------
# standard objects


def _generic(objects, morphisms, src_of, dst_of, ident_of, compose_of, inverse_of, name=None):
    """Assemble a groupoid from id-level callables, filling only composable pairs."""
    objects = tuple(objects)
    morphisms = tuple(morphisms)
    oidx = {x: i for i, x in enumerate(objects)}
    midx = {f: i for i, f in enumerate(morphisms)}
    src = [oidx[src_of(f)] for f in morphisms]
    dst = [oidx[dst_of(f)] for f in morphisms]
    ident = [midx[ident_of(x)] for x in objects]
    inv = [midx[inverse_of(f)] for f in morphisms]

    def compose(gs, fs):
        return [midx[compose_of(morphisms[a], morphisms[b])] for a, b in zip(gs.tolist(), fs.tolist())]

    return FiniteGroupoid.from_composer(objects, morphisms, src, dst, ident, inv, compose, name=name)


def codiscrete(n: int) -> FiniteGroupoid:
    """``n`` objects with exactly one morphism ``(x, y)`` between each pair."""
    objs = tuple(range(n))
    mors = tuple((x, y) for x in objs for y in objs)
    name = "I" if n == 2 else f"codiscrete({n})"
    return _generic(
        objs, mors, lambda f: f[0], lambda f: f[1], lambda x: (x, x),
        lambda g, f: (f[0], g[1]), lambda f: (f[1], f[0]), name=name,
    )


def discrete(n: int) -> FiniteGroupoid:
    """``n`` objects and only identities ``(x, x)``."""
    objs = tuple(range(n))
    ident = np.arange(n)
    return FiniteGroupoid(objs, tuple((x, x) for x in objs), ident, ident, ident, inv=ident,
                          name=f"discrete({n})", local=ident.reshape(n, 1))


def terminal() -> FiniteGroupoid:
    g = discrete(1)
    g.name = "1"
    return g


def interval() -> FiniteGroupoid:
    """The free-standing isomorphism ``0 -> 1``."""
    return codiscrete(2)


def empty() -> FiniteGroupoid:
    return discrete(0)


def delooping(grp: FiniteGroup) -> FiniteGroupoid:
    """One object ``*`` whose morphisms are the group elements."""
    n = grp.order
    z = np.zeros(n, dtype=IDX)
    return FiniteGroupoid(
        ("*",), grp.elements, z, z, [grp.identity_index], grp.table, grp.inverse_table, name=f"B({grp.name})"
    )


def deloop_homomorphism(g: FiniteGroup, h: FiniteGroup, mapping) -> GroupoidMap:
    """``B(phi)`` for a homomorphism given as an element mapping (dict or callable).

    The mapping is not checked here; use :func:`validate_map` on the result.
    """
    fn = mapping if callable(mapping) else mapping.__getitem__
    mm = [h.index[fn(x)] for x in g.elements]
    return GroupoidMap(delooping(g), delooping(h), [0], mm)


def terminal_map(a: FiniteGroupoid, one: FiniteGroupoid | None = None) -> GroupoidMap:
    one = one or terminal()
    return GroupoidMap(a, one, np.zeros(a.n_objects), np.zeros(a.n_morphisms))


def standard_objects() -> dict[str, FiniteGroupoid]:
    """Small named catalog used by tests, probes and the CLI."""
    from .groups import cyclic_group, klein_four, symmetric_group

    return {
        "terminal": terminal(),
        "interval": interval(),
        "discrete2": discrete(2),
        "discrete3": discrete(3),
        "codiscrete3": codiscrete(3),
        "BZ2": delooping(cyclic_group(2)),
        "BZ3": delooping(cyclic_group(3)),
        "BZ4": delooping(cyclic_group(4)),
        "BV4": delooping(klein_four()),
        "BS3": delooping(symmetric_group(3)),
    }


# ---------------------------------------------------------------------------
# products and coproducts


@dataclass(frozen=True)
class Product:
    """A finite product with its projections (flat tuples as ids)."""

    groupoid: FiniteGroupoid
    factors: tuple
    projections: tuple

    def pairing(self, *maps: GroupoidMap) -> GroupoidMap:
        return pairing(self, *maps)


def product(*factors: FiniteGroupoid) -> Product:
    """Cartesian product; objects and morphisms are tuples in lexicographic order.

    With two factors this is ``A x B`` with projections ``pi0, pi1``.
    """
    if not factors:
        return Product(terminal(), (), ())
    objs = list(itertools.product(*(f.objects for f in factors)))
    mors = list(itertools.product(*(f.morphisms for f in factors)))
    src = np.zeros(1, dtype=IDX)
    dst = np.zeros(1, dtype=IDX)
    ident = np.zeros(1, dtype=IDX)
    inv = np.zeros(1, dtype=IDX)
    for f in factors:
        n, m = f.n_objects, f.n_morphisms
        src = (src[:, None] * n + f.src[None, :]).ravel()
        dst = (dst[:, None] * n + f.dst[None, :]).ravel()
        ident = (ident[:, None] * m + f.ident[None, :]).ravel()
        inv = (inv[:, None] * m + f.inv[None, :]).ravel()
    sizes = [f.n_morphisms for f in factors]
    strides = [int(np.prod(sizes[k + 1:], dtype=np.int64)) for k in range(len(factors))]

    def compose(gs, fs):
        out = np.zeros(len(gs), dtype=IDX)
        for f, m, st in zip(factors, sizes, strides):
            out += f.mul((gs // st) % m, (fs // st) % m) * st
        return out

    name = " x ".join(f.name or "?" for f in factors)
    g = FiniteGroupoid.from_composer(objs, mors, src, dst, ident, inv, compose, name=name)
    projections = []
    for k, f in enumerate(factors):
        n_after = int(np.prod([h.n_objects for h in factors[k + 1:]], dtype=np.int64))
        m_after = int(np.prod([h.n_morphisms for h in factors[k + 1:]], dtype=np.int64))
        om = (np.arange(g.n_objects) // n_after) % f.n_objects if f.n_objects else np.zeros(0)
        mm = (np.arange(g.n_morphisms) // m_after) % f.n_morphisms if f.n_morphisms else np.zeros(0)
        projections.append(GroupoidMap(g, f, om, mm, name=f"pi{k}"))
    return Product(g, tuple(factors), tuple(projections))


def pairing(prod: Product, *maps: GroupoidMap) -> GroupoidMap:
    """``<f0, f1, ...>`` into the given product."""
    if len(maps) != len(prod.factors):
        raise DomainMismatch("pairing needs one map per factor")
    dom = maps[0].domain
    om = np.zeros(dom.n_objects, dtype=IDX)
    mm = np.zeros(dom.n_morphisms, dtype=IDX)
    for f, fac in zip(maps, prod.factors):
        if f.domain != dom or f.codomain != fac:
            raise DomainMismatch("pairing components do not match the product")
        om = om * fac.n_objects + f.obj_map
        mm = mm * fac.n_morphisms + f.mor_map
    return GroupoidMap(dom, prod.groupoid, om, mm)


def product_map(p: Product, q: Product, *maps: GroupoidMap) -> GroupoidMap:
    """``f0 x f1 x ...`` from product ``p`` to product ``q``."""
    return pairing(q, *(compose_maps(f, pr) for f, pr in zip(maps, p.projections)))


def disjoint_union(*parts: FiniteGroupoid) -> tuple[FiniteGroupoid, tuple]:
    """Coproduct with ids ``(k, x)``; returns the groupoid and the inclusions."""
    objs, mors = [], []
    src, dst, ident, inv = [], [], [], []
    ob_off = mor_off = 0
    offsets = []
    for k, p in enumerate(parts):
        objs += [(k, x) for x in p.objects]
        mors += [(k, f) for f in p.morphisms]
        src += (p.src + ob_off).tolist()
        dst += (p.dst + ob_off).tolist()
        ident += (p.ident + mor_off).tolist()
        inv += (p.inv + mor_off).tolist()
        offsets.append((ob_off, mor_off))
        ob_off += p.n_objects
        mor_off += p.n_morphisms
    starts = np.array([mo for _, mo in offsets], dtype=IDX)

    def compose(gs, fs):
        which = np.searchsorted(starts, gs, side="right") - 1
        out = np.zeros(len(gs), dtype=IDX)
        for k, p in enumerate(parts):
            sel = which == k
            if sel.any():
                out[sel] = p.mul(gs[sel] - starts[k], fs[sel] - starts[k]) + starts[k]
        return out

    name = " + ".join(p.name or "?" for p in parts)
    g = FiniteGroupoid.from_composer(objs, mors, src, dst, ident, inv, compose, name=name)
    incl = tuple(
        GroupoidMap(p, g, np.arange(p.n_objects) + oo, np.arange(p.n_morphisms) + mo)
        for p, (oo, mo) in zip(parts, offsets)
    )
    return g, incl
