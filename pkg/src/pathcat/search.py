"""Exhaustive searches for functors and natural isomorphisms.

Functor search branches only on a generating set of the domain: per
connected component the image of a root object, of generators of the root's
vertex group, and of one chosen morphism from the root to every other object.
Everything else is propagated along Cayley-graph edges ``x o s`` with ``s`` a
generator or the inverse of a tree edge, so every assignment that survives
propagation is a functor and every functor is reached exactly once.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import DomainMismatch, SearchBoundExceeded
from .groupoids import FiniteGroupoid, GroupoidMap, NaturalIso

DEFAULT_CAP = 1_000_000


@dataclass(frozen=True)
class _Plan:
    roots: tuple  # root object per component
    steps: tuple  # ("obj", x) or ("mor", f), in branching order
    gens_by_dst: tuple  # per object: edge generators s with dst(s) == x
    is_gen: tuple  # per morphism: True if an edge generator


def _subgroup(g, gens, e):
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = g.cmp(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def _plan(g: FiniteGroupoid) -> _Plan:
    cached = g.__dict__.get("_search_plan")
    if cached is not None:
        return cached
    steps = []
    edge_gens = []
    roots = []
    for comp in g.components:
        r = comp[0]
        roots.append(r)
        steps.append(("obj", r))
        e = int(g.ident[r])
        loops = g.hom_idx(r, r)
        gens: list[int] = []
        covered = {e}
        for f in loops:
            if f not in covered:
                gens.append(f)
                covered = _subgroup(g, gens, e)
        for f in gens:
            steps.append(("mor", f))
            edge_gens.append(f)
        for x in comp[1:]:
            t = g.hom_idx(r, x)[0]
            steps.append(("mor", t))
            edge_gens.append(t)
            edge_gens.append(int(g.inv[t]))
    by_dst = [[] for _ in g.objects]
    is_gen = [False] * g.n_morphisms
    for s in edge_gens:
        by_dst[int(g.dst[s])].append(s)
        is_gen[s] = True
    plan = _Plan(tuple(roots), tuple(steps), tuple(tuple(v) for v in by_dst), tuple(is_gen))
    g.__dict__["_search_plan"] = plan
    return plan


class _Counter:
    def __init__(self, cap, what):
        self.cap = cap if cap is not None else DEFAULT_CAP
        self.what = what
        self.n = 0

    def tick(self):
        self.n += 1
        if self.n > self.cap:
            raise SearchBoundExceeded(self.what, self.cap)


class FunctorSearch:
    """Backtracking search for functors ``dom -> cod`` under constraints.

    ``over`` is a list of ``(p, q)`` pairs with ``p: dom -> D`` and
    ``q: cod -> D``; solutions ``F`` satisfy ``q o F = p`` for every pair.
    ``fixed_objects``/``fixed_morphisms`` pin images by index.  With ``rng``
    (a ``random.Random``) candidates are tried in shuffled order, which turns
    the first solution into a random functor.
    """

    def __init__(self, dom: FiniteGroupoid, cod: FiniteGroupoid, over=(), fixed_objects=None,
                 fixed_morphisms=None, cap=None, what="functor search", rng=None):
        self.dom, self.cod = dom, cod
        self.rng = rng
        self.plan = _plan(dom)
        self.counter = _Counter(cap, what)
        n, m = dom.n_objects, dom.n_morphisms
        dko = np.zeros(n, dtype=np.int64)
        dkm = np.zeros(m, dtype=np.int64)
        cko = np.zeros(cod.n_objects, dtype=np.int64)
        ckm = np.zeros(cod.n_morphisms, dtype=np.int64)
        for p, q in over:
            if p.domain != dom or q.domain != cod or p.codomain != q.codomain:
                raise DomainMismatch("over-constraint maps do not form a cospan")
            D = p.codomain
            dko = dko * max(D.n_objects, 1) + p.obj_map
            cko = cko * max(D.n_objects, 1) + q.obj_map
            dkm = dkm * max(D.n_morphisms, 1) + p.mor_map
            ckm = ckm * max(D.n_morphisms, 1) + q.mor_map
        self.dko, self.dkm = dko.tolist(), dkm.tolist()
        self.cko, self.ckm = cko.tolist(), ckm.tolist()
        self.fixed_objects = dict(fixed_objects or {})
        self.fixed_morphisms = dict(fixed_morphisms or {})
        # candidate lists: codomain morphisms grouped by (src, key)
        self._cand_mor = {}
        for j, (s, k) in enumerate(zip(cod.src.tolist(), self.ckm)):
            self._cand_mor.setdefault((s, k), []).append(j)
        self._cand_obj = {}
        for y, k in enumerate(self.cko):
            self._cand_obj.setdefault(k, []).append(y)

        self.d_src, self.d_dst = dom.src.tolist(), dom.dst.tolist()
        self.d_inv, self.d_ident = dom.inv.tolist(), dom.ident.tolist()
        self.c_src, self.c_dst = cod.src.tolist(), cod.dst.tolist()
        self.c_inv, self.c_ident = cod.inv.tolist(), cod.ident.tolist()
        self.d_rows, self.d_pos = dom.local_rows, dom.pos_list
        self.c_rows, self.c_pos = cod.local_rows, cod.pos_list
        self.d_out = dom.out_idx

    # propagation -----------------------------------------------------------

    def _assign(self, fo, fm, x, y) -> bool:
        queue = [(x, y)]
        d_src, d_dst, d_inv, d_ident = self.d_src, self.d_dst, self.d_inv, self.d_ident
        c_src, c_dst, c_inv, c_ident = self.c_src, self.c_dst, self.c_inv, self.c_ident
        d_rows, c_rows = self.d_rows, self.c_rows
        d_pos, c_pos = self.d_pos, self.c_pos
        gens_by_dst, is_gen, d_out = self.plan.gens_by_dst, self.plan.is_gen, self.d_out
        dkm, ckm, dko, cko = self.dkm, self.ckm, self.dko, self.cko
        fixed_m = self.fixed_morphisms
        while queue:
            x, y = queue.pop()
            if y < 0:
                return False
            cur = fm[x]
            if cur >= 0:
                if cur != y:
                    return False
                continue
            if dkm[x] != ckm[y]:
                return False
            fy = fixed_m.get(x)
            if fy is not None and fy != y:
                return False
            fm[x] = y
            for v, w in ((d_src[x], c_src[y]), (d_dst[x], c_dst[y])):
                cv = fo[v]
                if cv < 0:
                    if dko[v] != cko[w]:
                        return False
                    fo[v] = w
                    queue.append((d_ident[v], c_ident[w]))
                elif cv != w:
                    return False
            queue.append((d_inv[x], c_inv[y]))
            row_x = d_rows[x]
            crow_y = c_rows[y]
            for s in gens_by_dst[d_src[x]]:
                fs = fm[s]
                if fs >= 0:
                    queue.append((row_x[d_pos[s]], crow_y[c_pos[fs]]))
            if is_gen[x]:
                for z in d_out[d_dst[x]]:
                    fz = fm[z]
                    if fz >= 0:
                        queue.append((d_rows[z][d_pos[x]], c_rows[fz][c_pos[y]]))
        return True

    def _initial(self):
        fo = [-1] * self.dom.n_objects
        fm = [-1] * self.dom.n_morphisms
        for x, y in self.fixed_objects.items():
            if fo[x] >= 0 and fo[x] != y:
                return None
            if not self._assign(fo, fm, self.d_ident[x], self.c_ident[y]):
                return None
        for x, y in self.fixed_morphisms.items():
            if not self._assign(fo, fm, x, y):
                return None
        return fo, fm

    def __iter__(self) -> Iterator[GroupoidMap]:
        start = self._initial()
        if start is None:
            return
        yield from self._walk(start[0], start[1], 0)

    def _order(self, cands):
        if self.rng is None:
            return cands
        cands = list(cands)
        self.rng.shuffle(cands)
        return cands

    def _walk(self, fo, fm, step):
        steps = self.plan.steps
        # skip steps already determined by propagation
        while step < len(steps):
            kind, item = steps[step]
            if kind == "obj" and fo[item] < 0:
                break
            if kind == "mor" and fm[item] < 0:
                break
            step += 1
        if step == len(steps):
            if -1 in fm or -1 in fo:
                raise AssertionError("functor search left morphisms unassigned")
            yield GroupoidMap(self.dom, self.cod, fo, fm)
            return
        kind, item = steps[step]
        if kind == "obj":
            key = self.dko[item]
            fixed = self.fixed_objects.get(item)
            cands = self._cand_obj.get(key, ()) if fixed is None else (fixed,)
            for w in self._order(cands):
                self.counter.tick()
                fo2, fm2 = fo[:], fm[:]
                if self._assign(fo2, fm2, self.d_ident[item], self.c_ident[w]):
                    yield from self._walk(fo2, fm2, step + 1)
        else:
            s = item
            base = fo[self.d_src[s]]
            want_dst = fo[self.d_dst[s]]
            for y in self._order(self._cand_mor.get((base, self.dkm[s]), ())):
                if want_dst >= 0 and self.c_dst[y] != want_dst:
                    continue
                self.counter.tick()
                fo2, fm2 = fo[:], fm[:]
                if self._assign(fo2, fm2, s, y):
                    yield from self._walk(fo2, fm2, step + 1)


def iter_functors(dom, cod, *, over=(), fixed_objects=None, fixed_morphisms=None, cap=None,
                  what="functor search", rng=None) -> Iterator[GroupoidMap]:
    """Lazily enumerate functors ``dom -> cod`` in canonical order (shuffled with ``rng``).

    ``cap`` bounds the number of branch attempts; exceeding it raises
    :class:`SearchBoundExceeded`.
    """
    return iter(FunctorSearch(dom, cod, over=over, fixed_objects=fixed_objects,
                              fixed_morphisms=fixed_morphisms, cap=cap, what=what, rng=rng))


@dataclass(frozen=True)
class FunctorEnumeration:
    """Result of :func:`enumerate_functors`; ``truncated`` marks an exceeded cap."""

    maps: tuple
    truncated: bool

    def __iter__(self):
        return iter(self.maps)

    def __len__(self):
        return len(self.maps)


def enumerate_functors(a: FiniteGroupoid, b: FiniteGroupoid, cap: int = 10_000, **constraints) -> FunctorEnumeration:
    """Every functor ``a -> b`` exactly once, deterministic order.

    At most ``cap`` functors are returned; if more exist the result is
    marked ``truncated``.
    """
    out = []
    for f in iter_functors(a, b, **constraints):
        if len(out) == cap:
            return FunctorEnumeration(tuple(out), True)
        out.append(f)
    return FunctorEnumeration(tuple(out), False)


def functors_over(p: GroupoidMap, q: GroupoidMap, **kw) -> Iterator[GroupoidMap]:
    """Functors ``F: dom(p) -> dom(q)`` with ``q o F = p``."""
    return iter_functors(p.domain, q.domain, over=[(p, q)], **kw)


# ---------------------------------------------------------------------------
# natural isomorphisms


def _check_parallel(f: GroupoidMap, g: GroupoidMap):
    if f.domain != g.domain or f.codomain != g.codomain:
        raise DomainMismatch("natural isomorphisms need parallel functors")


def _component_solutions(f, g, comp, allowed, counter):
    """All consistent component assignments on one connected component."""
    A, B = f.domain, f.codomain
    r = comp[0]
    tree = {x: A.hom_idx(r, x)[0] for x in comp[1:]}
    mors = [i for x in comp for i in A.out_idx[x]]
    fo, go = f.obj_map, g.obj_map
    fm, gm = f.mor_map, g.mor_map
    cmp = B.cmp
    inv = B.inv
    sols = []
    for c_r in B.hom_idx(int(fo[r]), int(go[r])):
        counter.tick()
        c = {r: c_r}
        for x, t in tree.items():
            # c_x = g(t) o c_r o f(t)^-1
            c[x] = cmp(cmp(int(gm[t]), c_r), int(inv[fm[t]]))
        if allowed is not None and not all(allowed(x, c[x]) for x in comp):
            continue
        ok = True
        for a in mors:
            x, y = int(A.src[a]), int(A.dst[a])
            if cmp(int(gm[a]), c[x]) != cmp(c[y], int(fm[a])):
                ok = False
                break
        if ok:
            sols.append(c)
    return sols


def iter_natural_isos(f: GroupoidMap, g: GroupoidMap, *, allowed=None, cap=None) -> Iterator[NaturalIso]:
    """All natural isomorphisms ``f => g`` in canonical order.

    The component at each component root is enumerated; the others are forced
    along the chosen root-to-object morphisms, then naturality is checked on
    every morphism.  ``allowed(x, c)`` (indices) can veto components.
    """
    _check_parallel(f, g)
    counter = _Counter(cap, "natural isomorphism search")
    A = f.domain
    per_comp = []
    for comp in A.components:
        sols = _component_solutions(f, g, comp, allowed, counter)
        if not sols:
            return
        per_comp.append(sols)
    for choice in itertools.product(*per_comp):
        comps = np.zeros(A.n_objects, dtype=np.int64)
        for part in choice:
            for x, c in part.items():
                comps[x] = c
        yield NaturalIso(f, g, comps)


def find_natural_iso(f: GroupoidMap, g: GroupoidMap, *, allowed=None, cap=None) -> NaturalIso | None:
    """First natural isomorphism ``f => g`` in canonical order, or ``None``.

    ``None`` is a certified absence: the search is exhaustive.
    """
    return next(iter_natural_isos(f, g, allowed=allowed, cap=cap), None)


def homotopic(f: GroupoidMap, g: GroupoidMap) -> bool:
    return find_natural_iso(f, g) is not None
