"""Univalence instances for finite universes.

An instance is an equivalence ``e: A -> B`` over a base ``C`` between two
fibrations that are pullbacks of the universe projection along
``f, g: C -> U``, with top maps ``i: A -> U_dot`` and ``j: B -> U_dot``.  The
universe is univalent at the instance when there are homotopies ``g ~ f``
and ``j o e ~ i`` that are coherent: the second lies over the first.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .classifiers import is_equivalence, is_isomorphism, is_monomorphism
from .constructions import PullbackSquare, Universe, certify_pullback, pullback
from .errors import DomainMismatch, InternalInconsistency, PreconditionError
from .groupoids import (
    FiniteGroupoid,
    GroupoidMap,
    NaturalIso,
    compose_maps,
    delooping,
    product,
    terminal,
    terminal_map,
    validate_natural_iso,
)
from .groups import FiniteGroup
from .search import _Counter, enumerate_functors, find_natural_iso, iter_functors, iter_natural_isos


@dataclass(frozen=True)
class SmallnessWitness:
    """``square`` exhibits ``square.left: A -> C`` as a pullback of the universe."""

    square: PullbackSquare
    iota: GroupoidMap | None = None

    @property
    def total(self) -> FiniteGroupoid:
        return self.square.apex

    @property
    def fibration(self) -> GroupoidMap:
        return self.square.left

    @property
    def classifier(self) -> GroupoidMap:
        return self.square.bottom

    @property
    def top(self) -> GroupoidMap:
        return self.square.top


def _point(u: Universe, k: int) -> GroupoidMap:
    U = u.base_part
    return GroupoidMap(terminal(), U, [k], [U.ident[k]], name=f"point {U.objects[k]!r}")


def _isomorphisms(a: FiniteGroupoid, b: FiniteGroupoid, cap=None, over=()):
    if a.n_objects != b.n_objects or a.n_morphisms != b.n_morphisms:
        return
    for f in iter_functors(a, b, over=over, cap=cap, what="isomorphism search"):
        if is_isomorphism(f):
            yield f


def smallness_witness(a: FiniteGroupoid, u: Universe, cap: int | None = None) -> SmallnessWitness | None:
    """Exhibit ``a -> 1`` as a pullback of the universe along a point of ``U``.

    Tries every object of ``U`` in order and searches for an isomorphism from
    ``a`` onto the fibre.  ``None`` means no fibre is isomorphic to ``a``.
    """
    for k in range(u.base_part.n_objects):
        pt = _point(u, k)
        fibre = pullback(u.projection, pt, certify=False)
        phi = next(_isomorphisms(a, fibre.apex, cap), None)
        if phi is None:
            continue
        iota = compose_maps(fibre.top, phi)
        left = terminal_map(a, pt.domain)
        cert = certify_pullback(a, left, iota, u.projection, pt)
        if not cert.valid:
            raise InternalInconsistency("transported fibre square fails its certificate")
        if not is_monomorphism(iota):
            raise InternalInconsistency("fibre inclusion over a point is not monic")
        square = PullbackSquare(a, left, iota, u.projection, pt, cert)
        return SmallnessWitness(square, iota)
    return None


def canonical_witness(u: Universe, chi: GroupoidMap, certify: bool = True) -> SmallnessWitness:
    """The strict pullback of the universe along ``chi: C -> U``."""
    sq = pullback(u.projection, chi, certify=certify)
    iota = sq.top if chi.domain.n_objects == 1 and chi.domain.n_morphisms == 1 else None
    return SmallnessWitness(sq, iota)


@dataclass(frozen=True)
class UnivalenceInstance:
    universe: Universe
    base: FiniteGroupoid
    wa: SmallnessWitness
    wb: SmallnessWitness
    e: GroupoidMap

    @property
    def f(self):
        return self.wa.classifier

    @property
    def g(self):
        return self.wb.classifier

    @property
    def i(self):
        return self.wa.top

    @property
    def j(self):
        return self.wb.top

    def check(self) -> list[str]:
        bad = []
        if self.wa.fibration.codomain != self.base or self.wb.fibration.codomain != self.base:
            bad.append("witnesses over the base")
        if not (self.wa.square.certificate.valid and self.wb.square.certificate.valid):
            bad.append("pullback certificates")
        if compose_maps(self.wb.fibration, self.e) != self.wa.fibration:
            bad.append("e lies over the base")
        if not is_equivalence(self.e, witness=False):
            bad.append("e is an equivalence")
        return bad


@dataclass(frozen=True)
class CoherentHomotopyPair:
    """``base_homotopy: C -> P(U)`` from ``g`` to ``f`` and
    ``total_homotopy: A -> P(U_dot)`` from ``j o e`` to ``i`` over it."""

    base_homotopy: GroupoidMap
    total_homotopy: GroupoidMap
    base_iso: NaturalIso
    total_iso: NaturalIso
    coherence: bool = field(default=False)

    def check(self, inst: UnivalenceInstance) -> list[str]:
        cp = inst.universe.coherent_path
        bad = []
        K, H = self.base_homotopy, self.total_homotopy
        if compose_maps(cp.base.p0, K) != inst.g or compose_maps(cp.base.p1, K) != inst.f:
            bad.append("base homotopy boundaries g, f")
        if compose_maps(cp.p0, H) != compose_maps(inst.j, inst.e) or compose_maps(cp.p1, H) != inst.i:
            bad.append("total homotopy boundaries j o e, i")
        if compose_maps(cp.to_base, H) != compose_maps(K, inst.wa.fibration):
            bad.append("coherence square")
        return bad


def _assemble_pair(inst: UnivalenceInstance, kappa: NaturalIso, eta: NaturalIso) -> CoherentHomotopyPair:
    cp = inst.universe.coherent_path
    K = cp.base.homotopy_map(kappa)
    H = cp.homotopy_map(eta)
    pair = CoherentHomotopyPair(K, H, kappa, eta, True)
    bad = pair.check(inst)
    if bad:
        raise InternalInconsistency(f"assembled coherent pair fails: {bad}")
    return pair


def check_univalence_instance(inst: UnivalenceInstance, cap: int | None = None) -> CoherentHomotopyPair | None:
    """Exhaustive search for a coherent pair; ``None`` is a certified absence.

    Each base homotopy ``kappa: g => f`` is tried in canonical order; the
    total homotopy ``eta: j o e => i`` is then searched with every component
    constrained to lie over ``kappa``.
    """
    u = inst.universe
    if u.coherent_path is None:
        u.coherent()
    proj = u.projection.mor_map
    pA = inst.wa.fibration.obj_map
    je = compose_maps(inst.j, inst.e)
    counter = _Counter(cap, "univalence search")
    for kappa in iter_natural_isos(inst.g, inst.f, cap=cap):
        counter.tick()
        kc = kappa.components
        eta = find_natural_iso(je, inst.i, allowed=lambda a, c: proj[c] == kc[pA[a]], cap=cap)
        if eta is not None:
            return _assemble_pair(inst, kappa, eta)
    return None


def weak_univalence_witness(inst: UnivalenceInstance, cap: int | None = None) -> NaturalIso | None:
    """A natural iso ``j o e => i``, forgetting coherence with the base."""
    return find_natural_iso(compose_maps(inst.j, inst.e), inst.i, cap=cap)


@dataclass(frozen=True)
class InstanceEnumeration:
    instances: tuple
    truncated: bool

    def __iter__(self):
        return iter(self.instances)

    def __len__(self):
        return len(self.instances)


def iter_equivalences_over(c: FiniteGroupoid, u: Universe, cap: int | None = None):
    """Instances over ``c`` in canonical order: classifiers ``f``, ``g``, then ``e``."""
    witnesses = [canonical_witness(u, chi) for chi in iter_functors(c, u.base_part, cap=cap)]
    for wa in witnesses:
        for wb in witnesses:
            for e in iter_functors(wa.total, wb.total, over=[(wa.fibration, wb.fibration)], cap=cap,
                                   what="equivalence search"):
                if is_equivalence(e, witness=False):
                    yield UnivalenceInstance(u, c, wa, wb, e)


def enumerate_equivalences_over(c: FiniteGroupoid, u: Universe, cap: int = 10_000) -> InstanceEnumeration:
    """At most ``cap`` instances; ``truncated`` marks that more exist."""
    out = []
    for inst in iter_equivalences_over(c, u):
        if len(out) == cap:
            return InstanceEnumeration(tuple(out), True)
        out.append(inst)
    return InstanceEnumeration(tuple(out), False)


# ---------------------------------------------------------------------------
# complete groups


@dataclass(frozen=True)
class CompletenessReport:
    group: str
    centre: tuple
    automorphisms: int
    inner: int

    @property
    def complete(self) -> bool:
        return len(self.centre) == 1 and self.automorphisms == self.inner

    def __bool__(self):
        return self.complete


def automorphisms(grp: FiniteGroup) -> list[np.ndarray]:
    """Index maps of all automorphisms, via homomorphisms ``BG -> BG``."""
    BG = delooping(grp)
    out = []
    for f in enumerate_functors(BG, BG, cap=10**6):
        if len(set(f.mor_map.tolist())) == grp.order:
            out.append(f.mor_map.copy())
    return out


def inner_automorphisms(grp: FiniteGroup) -> list[np.ndarray]:
    seen = {}
    for h in range(grp.order):
        c = grp.conjugation(h)
        seen.setdefault(c.tobytes(), c)
    return list(seen.values())


def is_complete_group(grp: FiniteGroup) -> CompletenessReport:
    centre = tuple(grp.elements[i] for i in grp.centre())
    return CompletenessReport(grp.name, centre, len(automorphisms(grp)), len(inner_automorphisms(grp)))


def complete_group_univalence(grp: FiniteGroup, c: FiniteGroupoid, theta: GroupoidMap,
                              to_group: GroupoidMap | None = None,
                              to_base: GroupoidMap | None = None) -> NaturalIso:
    """The natural iso ``to_group o theta => to_group`` for a complete group.

    ``theta`` is an equivalence of ``C x BG`` over ``C``; by default its
    domain is ``product(c, delooping(grp))``, otherwise ``to_base`` and
    ``to_group`` give the two legs.  On the loops over ``1_a`` theta is
    conjugation by some ``h_a``; these elements are the components.
    """
    report = is_complete_group(grp)
    if not report.complete:
        raise PreconditionError(f"{grp.name} is not complete: {report}")
    D = theta.domain
    if to_group is None or to_base is None:
        prod = product(c, delooping(grp))
        if D != prod.groupoid:
            raise DomainMismatch("theta must act on C x BG")
        to_base, to_group = prod.projections
    if theta.codomain != D or compose_maps(to_base, theta) != to_base:
        raise PreconditionError("theta must be an endomap over C")
    if not is_equivalence(theta, witness=False):
        raise PreconditionError("theta must be an equivalence")
    tg = to_group.mor_map.tolist()
    tb = to_base.mor_map.tolist()
    th = theta.mor_map.tolist()
    h = np.zeros(D.n_objects, dtype=np.int64)
    for x in range(D.n_objects):
        over_id = {}
        for alpha in D.hom_idx(x, x):
            if tb[alpha] == int(c.ident[to_base.obj_map[x]]):
                over_id[tg[alpha]] = tg[th[alpha]]
        if len(over_id) != grp.order:
            raise PreconditionError("fibres of the base leg are not copies of BG")
        target = np.array([over_id[g] for g in range(grp.order)])
        hits = [k for k in range(grp.order) if np.array_equal(grp.conjugation(k), target)]
        if len(hits) != 1:
            raise InternalInconsistency("theta on a fibre is not conjugation by a unique element")
        h[x] = hits[0]
    # centre argument: along a morphism with trivial group part, h_y theta(p) = h_x
    table = grp.table
    for alpha in range(D.n_morphisms):
        if tg[alpha] != grp.identity_index:
            continue
        x, y = int(D.src[alpha]), int(D.dst[alpha])
        if table[h[y], tg[th[alpha]]] != h[x]:
            raise InternalInconsistency("centre argument fails along a base path")
    eta = NaturalIso(compose_maps(to_group, theta), to_group, h)
    bad = validate_natural_iso(eta)
    if bad:
        raise InternalInconsistency(f"complete-group homotopy is not natural: {bad[0]}")
    return eta


def complete_group_pair(inst: UnivalenceInstance, grp: FiniteGroup) -> CoherentHomotopyPair:
    """Coherent pair for a delooping universe of a complete group, by construction."""
    u = inst.universe
    if u.base_part.n_objects != 1 or u.base_part.n_morphisms != 1:
        raise PreconditionError("complete-group construction needs a delooping universe")
    if inst.wa.total != inst.wb.total or inst.i != inst.j:
        raise PreconditionError("instance legs differ; expected canonical pullbacks")
    if u.coherent_path is None:
        u.coherent()
    eta = complete_group_univalence(grp, inst.base, inst.e, to_group=inst.i, to_base=inst.wa.fibration)
    kappa = NaturalIso.identity(inst.f)
    return _assemble_pair(inst, kappa, eta)
