"""Path-category structure on finite groupoids.

Strict pullbacks of isofibrations, the arrow groupoid as canonical path
object, the mapping-path factorization, propositional truncation, and the two
universe fragments (finite sets and single deloopings).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .classifiers import is_equivalence, is_isofibration, is_monomorphism
from .errors import DomainMismatch, InternalInconsistency, PreconditionError
from .groupoids import (
    IDX,
    FiniteGroupoid,
    GroupoidMap,
    NaturalIso,
    Product,
    _generic,
    _into_structure,
    compose_maps,
    delooping,
    identity_map,
    interval,
    pairing,
    product,
    product_map,
    terminal,
    terminal_map,
    validate_natural_iso,
)
from .groups import FiniteGroup, cyclic_group
from .search import iter_functors


# ---------------------------------------------------------------------------
# pullbacks


@dataclass(frozen=True)
class PullbackCertificate:
    commutes: bool
    legs_jointly_monic: bool
    probes: tuple  # (probe name, number of cones, all uniquely factored)

    @property
    def valid(self) -> bool:
        return self.commutes and all(ok for _, _, ok in self.probes)


@dataclass(frozen=True)
class PullbackSquare:
    """``right o top = bottom o left`` with the universal property checked.

    ``top: apex -> X``, ``left: apex -> Y``, ``right: X -> Z`` (the
    fibration), ``bottom: Y -> Z``.
    """

    apex: FiniteGroupoid
    left: GroupoidMap
    top: GroupoidMap
    right: GroupoidMap
    bottom: GroupoidMap
    certificate: PullbackCertificate


def probe_catalog(*groupoids: FiniteGroupoid, max_order: int | None = None) -> list[tuple[str, FiniteGroupoid]]:
    """Terminal, interval and ``B(Z/k)`` for every loop order ``k`` in the inputs.

    A functor out of ``B(Z/k)`` picks a loop whose order divides ``k``, so
    these probes detect every object and morphism.
    """
    orders = set()
    for g in groupoids:
        orders |= g.loop_orders()
    if max_order is not None:
        orders = {k for k in orders if k <= max_order}
    probes = [("1", terminal()), ("I", interval())]
    probes += [(f"BZ{k}", delooping(cyclic_group(k))) for k in sorted(orders) if k > 1]
    return probes


def certify_pullback(apex, left, top, right, bottom, probes=None) -> PullbackCertificate:
    """Check commutativity and unique factorization of every probe cone."""
    commutes = compose_maps(right, top) == compose_maps(bottom, left)
    X, Y = right.domain, bottom.domain
    if probes is None:
        probes = probe_catalog(X, Y)
    legs = np.stack([top.mor_map, left.mor_map], axis=1) if apex.n_morphisms else np.zeros((0, 2))
    jointly_monic = len(np.unique(legs, axis=0)) == apex.n_morphisms
    results = []
    for name, T in probes:
        count, ok = 0, True
        for u in iter_functors(T, X):
            ru = compose_maps(right, u)
            for v in iter_functors(T, Y, over=[(ru, bottom)]):
                count += 1
                ws = list(itertools.islice(iter_functors(T, apex, over=[(u, top), (v, left)]), 2))
                if len(ws) != 1:
                    ok = False
                    break
            if not ok:
                break
        results.append((name, count, ok))
    return PullbackCertificate(bool(commutes), bool(jointly_monic), tuple(results))


def pullback(f: GroupoidMap, g: GroupoidMap, certify: bool = True) -> PullbackSquare:
    """Strict pullback of the isofibration ``f: X -> Z`` along ``g: Y -> Z``.

    Apex objects are pairs ``(x, y)`` with ``f(x) = g(y)``, morphisms are pairs
    agreeing in ``Z``.
    """
    if f.codomain != g.codomain:
        raise DomainMismatch("pullback needs a cospan")
    fib = is_isofibration(f, witness=False)
    if not fib:
        raise PreconditionError(f"pullback along a non-fibration: {fib.witness}")
    X, Y = f.domain, g.domain
    ox, oy = np.nonzero(f.obj_map[:, None] == g.obj_map[None, :])
    mx, my = np.nonzero(f.mor_map[:, None] == g.mor_map[None, :])
    apex = _pair_groupoid(X, Y, ox, oy, mx, my, name=f"{X.name} x_Z {Y.name}")
    top = GroupoidMap(apex, X, ox, mx, name="top")
    left = GroupoidMap(apex, Y, oy, my, name="left")
    cert = certify_pullback(apex, left, top, f, g) if certify else PullbackCertificate(
        compose_maps(f, top) == compose_maps(g, left), True, ()
    )
    return PullbackSquare(apex, left, top, f, g, cert)


def _relabel(g: FiniteGroupoid, objects, morphisms, name=None) -> FiniteGroupoid:
    return FiniteGroupoid(objects, morphisms, g.src, g.dst, g.ident, inv=g.inv, name=name, local=g.local)


def _pair_groupoid(X, Y, ox, oy, mx, my, name=None):
    """Subgroupoid of ``X x Y`` on the given object and morphism pairs."""
    n, m = len(ox), len(mx)
    obj_lookup = np.full((X.n_objects, Y.n_objects), -1, dtype=IDX)
    obj_lookup[ox, oy] = np.arange(n)
    mor_lookup = np.full((max(X.n_morphisms, 1), max(Y.n_morphisms, 1)), -1, dtype=IDX)
    mor_lookup[mx, my] = np.arange(m)
    src = obj_lookup[X.src[mx], Y.src[my]]
    dst = obj_lookup[X.dst[mx], Y.dst[my]]
    ident = mor_lookup[X.ident[ox], Y.ident[oy]]
    inv = mor_lookup[X.inv[mx], Y.inv[my]]
    objs = [(X.objects[a], Y.objects[b]) for a, b in zip(ox.tolist(), oy.tolist())]
    mors = [(X.morphisms[a], Y.morphisms[b]) for a, b in zip(mx.tolist(), my.tolist())]
    if (src < 0).any() or (dst < 0).any() or (ident < 0).any() or (inv < 0).any():
        raise InternalInconsistency("pair groupoid is not closed")

    def compose(gs, fs):
        return mor_lookup[X.mul(mx[gs], mx[fs]), Y.mul(my[gs], my[fs])]

    return FiniteGroupoid.from_composer(objs, mors, src, dst, ident, inv, compose, name=name)


# ---------------------------------------------------------------------------
# path objects


@dataclass(frozen=True)
class PathObjectData:
    """``base --r--> total --<p0,p1>--> base x base``."""

    base: FiniteGroupoid
    total: FiniteGroupoid
    r: GroupoidMap
    p0: GroupoidMap
    p1: GroupoidMap
    square: Product  # base x base

    @property
    def p(self) -> GroupoidMap:
        return pairing(self.square, self.p0, self.p1)

    def check(self) -> list[str]:
        """Names of failed invariants (empty when all hold)."""
        bad = []
        ident = identity_map(self.base)
        if compose_maps(self.p0, self.r) != ident:
            bad.append("p0 o r = id")
        if compose_maps(self.p1, self.r) != ident:
            bad.append("p1 o r = id")
        if not is_equivalence(self.r, witness=False):
            bad.append("r is an equivalence")
        if not is_isofibration(self.p, witness=False):
            bad.append("<p0,p1> is a fibration")
        return bad

    def homotopy_map(self, eta: NaturalIso) -> GroupoidMap:
        """The map ``H: A -> PB`` with ``p0 H = source``, ``p1 H = target``."""
        F, G = eta.source, eta.target
        if F.codomain != self.base:
            raise DomainMismatch("natural iso lands outside the path object's base")
        A = F.domain
        ho = eta.components
        hm = self.square_index(ho[A.src], F.mor_map, G.mor_map)
        return GroupoidMap(A, self.total, ho, hm)

    def natural_iso(self, h: GroupoidMap) -> NaturalIso:
        """Inverse of :meth:`homotopy_map`."""
        return NaturalIso(compose_maps(self.p0, h), compose_maps(self.p1, h), h.obj_map)

    def square_index(self, phi, a, c) -> np.ndarray:
        """Indices of the squares ``(phi, a, c)`` (vectorized; must exist)."""
        m = self.base.n_morphisms
        keys = _square_keys(self.total.src, self.p0.mor_map, self.p1.mor_map, m)
        want = _square_keys(phi, a, c, m)
        idx = np.searchsorted(keys, want)
        if want.size and (np.any(idx >= keys.size) or np.any(keys[np.minimum(idx, keys.size - 1)] != want)):
            raise InternalInconsistency("requested square is not a morphism of the path object")
        return idx.astype(IDX)


def _square_keys(phi, a, c, m):
    phi, a, c = (np.asarray(v, dtype=np.int64) for v in (phi, a, c))
    return (phi * m + a) * m + c


def _out_pad(g: FiniteGroupoid) -> np.ndarray:
    """``out[x]``: morphisms out of ``x`` in index order, padded with -1."""
    _, pad, _ = _into_structure(g.n_objects, g.src)
    return pad


def path_object(b: FiniteGroupoid) -> PathObjectData:
    """Arrow groupoid of ``b``.

    Objects are the morphisms of ``b``; a morphism ``phi -> psi`` is a
    commuting square ``(phi, a, c)`` with ``c o phi = psi o a``.
    """
    m = b.n_morphisms
    out = _out_pad(b)
    A = out[b.src][:, :, None]
    C = out[b.dst][:, None, :]
    grid = np.broadcast_arrays(np.arange(m)[:, None, None], A, C)
    mask = (grid[1] >= 0) & (grid[2] >= 0)
    phi, a, c = (v[mask].astype(IDX) for v in grid)
    keys = _square_keys(phi, a, c, m)  # strictly increasing by construction

    def find(p, x, y):
        return np.searchsorted(keys, _square_keys(p, x, y, m)).astype(IDX)

    dst = b.mul(b.mul(c, phi), b.inv[a])
    ident = find(np.arange(m), b.ident[b.src], b.ident[b.dst])
    inv = find(dst, b.inv[a], b.inv[c])

    def compose(gs, fs):
        return find(phi[fs], b.mul(a[gs], a[fs]), b.mul(c[gs], c[fs]))

    M = b.morphisms
    labels = [(M[x], M[y], M[z]) for x, y, z in zip(phi.tolist(), a.tolist(), c.tolist())]
    total = FiniteGroupoid.from_composer(M, labels, phi, dst, ident, inv, compose, name=f"P({b.name})")
    r = GroupoidMap(b, total, b.ident, find(b.ident[b.src], np.arange(m), np.arange(m)), name="r")
    p0 = GroupoidMap(total, b, b.src, a, name="p0")
    p1 = GroupoidMap(total, b, b.dst, c, name="p1")
    return PathObjectData(b, total, r, p0, p1, product(b, b))


# ---------------------------------------------------------------------------
# factorization


@dataclass(frozen=True)
class Factorization:
    original: GroupoidMap
    middle: FiniteGroupoid
    we_part: GroupoidMap
    fib_part: GroupoidMap

    def check(self) -> list[str]:
        bad = []
        if compose_maps(self.fib_part, self.we_part) != self.original:
            bad.append("fib o we = original")
        if not is_equivalence(self.we_part, witness=False):
            bad.append("we_part is an equivalence")
        if not is_isofibration(self.fib_part, witness=False):
            bad.append("fib_part is a fibration")
        return bad


def factor_we_fib(f: GroupoidMap) -> Factorization:
    """Mapping path groupoid: ``X -> {(x, beta: f(x) -> y)} -> Y``.

    A morphism ``(x, beta) -> (x', beta')`` is ``alpha: x -> x'``; its image
    in ``Y`` is ``beta' o f(alpha) o beta^-1``.
    """
    X, Y = f.domain, f.codomain
    nx, mx = X.n_objects, X.n_morphisms
    yout = _out_pad(Y)
    ox = np.repeat(np.arange(nx), yout.shape[1])
    beta = yout[f.obj_map].reshape(-1)
    keep = beta >= 0
    ox, beta = ox[keep].astype(IDX), beta[keep].astype(IDX)
    n = ox.size
    # objects are grouped by x, so those over x form a contiguous block
    starts = np.searchsorted(ox, np.arange(nx + 1)).astype(IDX)
    width = int(np.max(np.diff(starts), initial=0))
    block = starts[:-1, None] + np.arange(width)[None, :]
    block = np.where(block < starts[1:, None], block, -1)
    # morphisms (i, alpha, j): i over src(alpha), j over dst(alpha)
    xout = _out_pad(X)
    I = np.arange(n)[:, None, None]
    AL = xout[ox][:, :, None]
    J = np.where(AL >= 0, block[X.dst[np.maximum(AL, 0)]].reshape(n, xout.shape[1], width), -1)
    grid = np.broadcast_arrays(I, AL, J)
    mask = (grid[1] >= 0) & (grid[2] >= 0)
    mi, ma, mj = (v[mask].astype(IDX) for v in grid)
    keys = (mi.astype(np.int64) * max(mx, 1) + ma) * max(n, 1) + mj

    def find(i, al, j):
        want = (np.asarray(i, dtype=np.int64) * max(mx, 1) + al) * max(n, 1) + j
        return np.searchsorted(keys, want).astype(IDX)

    gamma = Y.mul(Y.mul(beta[mj], f.mor_map[ma]), Y.inv[beta[mi]])
    ident = find(np.arange(n), X.ident[ox], np.arange(n))
    inv = find(mj, X.inv[ma], mi)

    def compose(gs, fs):
        return find(mi[fs], X.mul(ma[gs], ma[fs]), mj[gs])

    labels = [(X.objects[x], Y.morphisms[b]) for x, b in zip(ox.tolist(), beta.tolist())]
    mlabels = [(labels[i], X.morphisms[al], labels[j]) for i, al, j in zip(mi.tolist(), ma.tolist(), mj.tolist())]
    middle = FiniteGroupoid.from_composer(labels, mlabels, mi, mj, ident, inv, compose,
                                          name=f"M({X.name} -> {Y.name})")
    # we(x) = (x, id_f(x))
    we_o = np.zeros(nx, dtype=IDX)
    for x in range(nx):
        lo, hi = int(starts[x]), int(starts[x + 1])
        we_o[x] = lo + int(np.flatnonzero(beta[lo:hi] == Y.ident[f.obj_map[x]])[0])
    we_m = find(we_o[X.src], np.arange(mx), we_o[X.dst])
    we = GroupoidMap(X, middle, we_o, we_m, name="we")
    fib = GroupoidMap(middle, Y, Y.dst[beta], gamma, name="fib")
    return Factorization(f, middle, we, fib)


# ---------------------------------------------------------------------------
# truncation


@dataclass(frozen=True)
class Truncation:
    i: GroupoidMap
    f_prime: GroupoidMap
    truncated: FiniteGroupoid

    def __iter__(self):
        return iter((self.i, self.f_prime, self.truncated))


def truncate(f: GroupoidMap) -> Truncation:
    """Factor the fibration ``f: A -> B`` as bijective-on-objects then full and faithful.

    The truncated groupoid has the objects of ``A`` and
    ``hom(a, a') = hom_B(f a, f a')``.
    """
    fib = is_isofibration(f, witness=False)
    if not fib:
        raise PreconditionError(f"truncation of a non-fibration: {fib.witness}")
    A, B = f.domain, f.codomain
    n, mb = A.n_objects, B.n_morphisms
    fo = f.obj_map
    homs = [[B.hom_idx(int(fo[a]), int(fo[a2])) for a2 in range(n)] for a in range(n)]
    sizes = np.asarray([[len(h) for h in row] for row in homs], dtype=IDX).reshape(n, n)
    s0 = np.repeat(np.arange(n), sizes.sum(axis=1)).astype(IDX)
    s1 = np.repeat(np.tile(np.arange(n), n), sizes.reshape(-1)).astype(IDX)
    be = np.asarray([x for row in homs for h in row for x in h], dtype=IDX)
    keys = (s0.astype(np.int64) * max(n, 1) + s1) * max(mb, 1) + be

    def find(a, a2, b):
        want = (np.asarray(a, dtype=np.int64) * max(n, 1) + a2) * max(mb, 1) + b
        return np.searchsorted(keys, want).astype(IDX)

    ident = find(np.arange(n), np.arange(n), B.ident[fo])
    inv = find(s1, s0, B.inv[be])

    def compose(gs, fs):
        return find(s0[fs], s1[gs], B.mul(be[gs], be[fs]))

    labels = [(A.objects[a], A.objects[a2], B.morphisms[b]) for a, a2, b in zip(s0.tolist(), s1.tolist(), be.tolist())]
    T = FiniteGroupoid.from_composer(A.objects, labels, s0, s1, ident, inv, compose, name=f"||{A.name}||")
    im = find(A.src, A.dst, f.mor_map)
    i = GroupoidMap(A, T, np.arange(n), im, name="|-|")
    fp = GroupoidMap(T, B, f.obj_map, be, name="f'")
    if compose_maps(fp, i) != f:
        raise InternalInconsistency("truncation does not factor the map")
    return Truncation(i, fp, T)


# ---------------------------------------------------------------------------
# universes


@dataclass
class CoherentPath:
    """Path objects on both ends of a universe, compatible as required.

    ``to_base: total -> P(U)`` lies over ``U_dot x U_dot -> U x U``;
    ``comparison: total -> Q`` into ``Q = P(U) x_{UxU} (U_dot x U_dot)``
    is a fibration.  ``from_arrow`` maps the arrow groupoid of ``U_dot`` into
    ``total`` over both ``P(U)`` and ``U_dot x U_dot``; it turns natural
    isomorphisms into homotopies valued in ``total``.
    """

    base: PathObjectData
    arrow: PathObjectData  # path_object(U_dot)
    total: FiniteGroupoid
    r: GroupoidMap
    p0: GroupoidMap
    p1: GroupoidMap
    to_base: GroupoidMap
    comparison: GroupoidMap
    square: PullbackSquare
    from_arrow: GroupoidMap
    method: str
    small_square: Product  # U_dot x U_dot

    def homotopy_map(self, eta: NaturalIso) -> GroupoidMap:
        """``A -> total`` from a natural iso between maps into ``U_dot``."""
        return compose_maps(self.from_arrow, self.arrow.homotopy_map(eta))


@dataclass
class Universe:
    """A fibration ``projection: small_part -> base_part``."""

    small_part: FiniteGroupoid
    base_part: FiniteGroupoid
    projection: GroupoidMap
    name: str = "U"
    coherent_path: CoherentPath | None = field(default=None, repr=False)

    def coherent(self, method: str = "factor") -> CoherentPath:
        if self.coherent_path is None or self.coherent_path.method != method:
            self.coherent_path = coherent_path_object(self, method=method).coherent_path
        return self.coherent_path

    def check(self) -> list[str]:
        bad = []
        if not is_isofibration(self.projection, witness=False):
            bad.append("projection is a fibration")
        if self.coherent_path is not None:
            bad += check_coherent_path(self, self.coherent_path)
        return bad


def finset_universe(n: int) -> Universe:
    """Finite sets ``{0..k-1}``, ``k <= n``, with bijections; pointed sets above.

    Base morphisms are permutation tuples; small-part objects are ``(k, x)``
    and morphisms ``(x, sigma)`` from ``(k, x)`` to ``(k, sigma[x])``.
    """
    from .groups import compose_perms

    perms = {k: list(itertools.permutations(range(k))) for k in range(n + 1)}
    base_objs = list(range(n + 1))
    base_mors = [p for k in base_objs for p in perms[k]]
    U = _generic(
        base_objs, base_mors, len, len, lambda k: tuple(range(k)),
        compose_perms, lambda p: tuple(sorted(range(len(p)), key=lambda i: p[i])),
        name=f"FinSet<={n}",
    )
    small_objs = [(k, x) for k in base_objs for x in range(k)]
    small_mors = [(x, p) for k in base_objs for x in range(k) for p in perms[k]]
    Ud = _generic(
        small_objs, small_mors,
        lambda m: (len(m[1]), m[0]),
        lambda m: (len(m[1]), m[1][m[0]]),
        lambda o: (o[1], tuple(range(o[0]))),
        lambda g, f: (f[0], compose_perms(g[1], f[1])),
        lambda m: (m[1][m[0]], tuple(sorted(range(len(m[1])), key=lambda i: m[1][i]))),
        name=f"FinSet*<={n}",
    )
    proj = GroupoidMap(
        Ud, U,
        [U.obj_index[k] for k, _ in small_objs],
        [U.mor_index[p] for _, p in small_mors],
        name="forget point",
    )
    u = Universe(Ud, U, proj, name=f"finset:{n}")
    if u.check():
        raise InternalInconsistency("finite-set universe projection is not a fibration")
    return u


def delooping_universe(grp: FiniteGroup) -> Universe:
    """``B(G) -> 1``."""
    BG = delooping(grp)
    return Universe(BG, terminal(), terminal_map(BG), name=f"delooping:{grp.name}")


def coherent_path_object(u: Universe, method: str = "factor") -> Universe:
    """Populate ``u.coherent_path``.

    ``method="factor"`` factors the canonical map
    ``U_dot -> P(U) x_{UxU} (U_dot x U_dot)`` through its mapping path
    groupoid; ``method="arrow"`` uses the arrow groupoid of ``U_dot`` with
    the induced map to ``P(U)``.  Both satisfy the same checks and are
    related by ``from_arrow``.
    """
    proj = u.projection
    Ud, U = u.small_part, u.base_part
    base = path_object(U)
    arrow = path_object(Ud)
    sq_small = product(Ud, Ud)
    sq_base = base.square
    pp = product_map(sq_small, sq_base, proj, proj)
    square = pullback(pp, base.p, certify=True)
    if not square.certificate.valid:
        raise InternalInconsistency("coherent path pullback failed its certificate")
    Q = square.apex
    # canonical map U_dot -> Q: (r o proj, diagonal)
    r_proj = compose_maps(base.r, proj)
    diag = pairing(sq_small, identity_map(Ud), identity_map(Ud))
    canonical = _into_pullback(square, r_proj, diag)
    # arrow route: phi |-> (P(proj)(phi), (src phi, dst phi))
    arrow_to_base = _path_functor(proj, arrow, base)
    arrow_to_q = _into_pullback(square, arrow_to_base, arrow.p)
    if method == "arrow":
        total = arrow.total
        comparison = arrow_to_q
        r = arrow.r
        from_arrow = identity_map(total)
    elif method == "factor":
        fac = factor_we_fib(canonical)
        total = fac.middle
        comparison = fac.fib_part
        r = fac.we_part
        from_arrow = _arrow_into_factor(arrow, fac, square)
    else:
        raise ValueError(f"unknown coherent path method {method!r}")
    to_small = compose_maps(square.top, comparison)
    p0 = compose_maps(sq_small.projections[0], to_small)
    p1 = compose_maps(sq_small.projections[1], to_small)
    to_base = compose_maps(square.left, comparison)
    cp = CoherentPath(base, arrow, total, r, p0, p1, to_base, comparison, square, from_arrow, method, sq_small)
    bad = check_coherent_path(u, cp)
    if bad:
        raise InternalInconsistency(f"coherent path object fails: {bad}")
    u.coherent_path = cp
    return u


def _into_pullback(square: PullbackSquare, to_y: GroupoidMap, to_x: GroupoidMap) -> GroupoidMap:
    """The induced map into the apex from a cone ``(to_x, to_y)``."""
    apex = square.apex
    key_o = {(int(a), int(b)): i for i, (a, b) in enumerate(zip(square.top.obj_map, square.left.obj_map))}
    key_m = {(int(a), int(b)): i for i, (a, b) in enumerate(zip(square.top.mor_map, square.left.mor_map))}
    try:
        om = [key_o[(int(a), int(b))] for a, b in zip(to_x.obj_map, to_y.obj_map)]
        mm = [key_m[(int(a), int(b))] for a, b in zip(to_x.mor_map, to_y.mor_map)]
    except KeyError:
        raise InternalInconsistency("cone does not factor through the pullback") from None
    return GroupoidMap(to_x.domain, apex, om, mm)


def _path_functor(f: GroupoidMap, src: PathObjectData, dst: PathObjectData) -> GroupoidMap:
    """``P(f)``: arrow groupoid map induced by ``f``."""
    fm = f.mor_map
    mm = dst.square_index(fm[src.total.src], fm[src.p0.mor_map], fm[src.p1.mor_map])
    return GroupoidMap(src.total, dst.total, fm, mm)


def _arrow_into_factor(arrow: PathObjectData, fac: Factorization, square: PullbackSquare) -> GroupoidMap:
    """Comparison from the arrow groupoid to the mapping path groupoid.

    ``phi: x -> y`` goes to ``(x, beta)`` where ``beta`` is the morphism of
    ``Q`` out of ``canonical(x)`` whose ``U_dot x U_dot`` part is
    ``(id_x, phi)``.  A square ``(phi, a, c)`` goes to ``a``.
    """
    Ud, mid, canonical = arrow.base, fac.middle, fac.original
    top = square.top.mor_map.tolist()
    n_small = Ud.n_morphisms
    mid_obj = mid.obj_index
    om = []
    for phi in range(n_small):
        x = int(Ud.src[phi])
        want = int(Ud.ident[x]) * n_small + phi
        beta = next((i for i in square.apex.out_idx[int(canonical.obj_map[x])] if top[i] == want), None)
        if beta is None:
            raise InternalInconsistency("no pullback morphism with the requested components")
        om.append(mid_obj[(Ud.objects[x], square.apex.morphisms[beta])])
    mid_mor = mid.mor_index
    mm = []
    A = arrow.total
    for k in range(A.n_morphisms):
        a = int(arrow.p0.mor_map[k])
        i, j = om[int(A.src[k])], om[int(A.dst[k])]
        mm.append(mid_mor[(mid.objects[i], Ud.morphisms[a], mid.objects[j])])
    return GroupoidMap(A, mid, om, mm, name="arrow -> factor")


def check_coherent_path(u: Universe, cp: CoherentPath) -> list[str]:
    """Invariants of a coherent path object pair (empty when all hold)."""
    bad = []
    proj = u.projection
    Ud = u.small_part
    ident = identity_map(Ud)
    if compose_maps(cp.p0, cp.r) != ident or compose_maps(cp.p1, cp.r) != ident:
        bad.append("p0 o r = p1 o r = id")
    if not is_equivalence(cp.r, witness=False):
        bad.append("r is an equivalence")
    p_small = pairing(cp.small_square, cp.p0, cp.p1)
    if not is_isofibration(p_small, witness=False):
        bad.append("<p0,p1> is a fibration")
    if compose_maps(cp.to_base, cp.r) != compose_maps(cp.base.r, proj):
        bad.append("left square commutes")
    pp = cp.square.right
    if compose_maps(pp, p_small) != compose_maps(cp.base.p, cp.to_base):
        bad.append("right square commutes")
    if not is_isofibration(cp.to_base, witness=False):
        bad.append("total -> P(U) is a fibration")
    if not is_isofibration(cp.comparison, witness=False):
        bad.append("canonical comparison is a fibration")
    fa = cp.from_arrow
    if compose_maps(cp.to_base, fa) != _path_functor(proj, cp.arrow, cp.base):
        bad.append("from_arrow lies over P(U)")
    if compose_maps(p_small, fa) != cp.arrow.p:
        bad.append("from_arrow lies over U_dot x U_dot")
    if not is_equivalence(fa, witness=False):
        bad.append("from_arrow is an equivalence")
    return bad
