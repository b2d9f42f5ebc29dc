"""Homogeneity, the realignment argument for monomorphisms, and its
consequences for deloopings of finite groups."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .classifiers import is_cofibration, is_equivalence, is_monomorphism
from .constructions import PullbackSquare, Universe, certify_pullback, truncate
from .errors import DomainMismatch, InternalInconsistency, PreconditionError, UnivalenceFailure
from .groupoids import (
    FiniteGroupoid,
    GroupoidMap,
    NaturalIso,
    Product,
    compose_maps,
    constant_map,
    delooping,
    identity_map,
    pairing,
    product,
    terminal_map,
    validate_map,
    validate_natural_iso,
)
from .groups import FiniteGroup
from .lifting import Realignment, realign
from .search import find_natural_iso, iter_functors
from .univalence import (
    SmallnessWitness,
    UnivalenceInstance,
    iter_equivalences_over,
    weak_univalence_witness,
)


@dataclass(frozen=True)
class HomogeneityWitness:
    """``e`` on ``A x A x A`` over ``A x A`` with ``pi2 e s0 => pi2 s1``."""

    obj: FiniteGroupoid
    square: Product  # A x A
    cube: Product  # A x A x A
    e: GroupoidMap
    s0: GroupoidMap
    s1: GroupoidMap
    section_homotopy: NaturalIso
    notes: dict = field(default_factory=dict)

    @property
    def base_leg(self) -> GroupoidMap:
        """``<pi0, pi1>: A^3 -> A^2``."""
        p = self.cube.projections
        return pairing(self.square, p[0], p[1])

    def check(self) -> list[str]:
        bad = []
        if not is_equivalence(self.e, witness=False):
            bad.append("e is an equivalence")
        if compose_maps(self.base_leg, self.e) != self.base_leg:
            bad.append("e lies over A x A")
        pi2 = self.cube.projections[2]
        h = self.section_homotopy
        if h.source != compose_maps(pi2, compose_maps(self.e, self.s0)) or h.target != compose_maps(pi2, self.s1):
            bad.append("section homotopy boundaries")
        elif validate_natural_iso(h):
            bad.append("section homotopy natural")
        return bad


def _sections(a: FiniteGroupoid):
    sq, cube = product(a, a), product(a, a, a)
    p0, p1 = sq.projections
    s0 = pairing(cube, p0, p1, p0)
    s1 = pairing(cube, p0, p1, p1)
    return sq, cube, s0, s1


def abelian_theta(grp: FiniteGroup) -> HomogeneityWitness:
    """``theta(g, h, k) = (g, h, h g^-1 k)`` on ``B(G)^3`` for abelian ``G``.

    ``theta o s0 = s1`` holds strictly, so the section homotopy is an
    identity.  ``notes["theta_s0_eq_theta_s1"]`` records whether the
    stronger equation ``theta o s0 = theta o s1`` also holds; for a
    nontrivial group it cannot, since ``theta`` is injective and
    ``s0 != s1``.
    """
    if not grp.is_abelian():
        raise PreconditionError(f"{grp.name} is not abelian")
    A = delooping(grp)
    sq, cube, s0, s1 = _sections(A)
    C = cube.groupoid
    t, inv = grp.table, grp.inverse_table
    n = grp.order
    idx = np.arange(C.n_morphisms)
    g, h, k = idx // (n * n), (idx // n) % n, idx % n
    third = t[t[h, inv[g]], k]
    theta = GroupoidMap(C, C, [0], (g * n + h) * n + third, name="theta")
    if validate_map(theta):
        raise InternalInconsistency("theta is not a homomorphism")
    if len(set(theta.mor_map.tolist())) != C.n_morphisms:
        raise InternalInconsistency("theta is not bijective")
    pi2 = cube.projections[2]
    ts0 = compose_maps(theta, s0)
    if ts0 != s1:
        raise InternalInconsistency("theta o s0 differs from s1")
    hw = HomogeneityWitness(
        A, sq, cube, theta, s0, s1, NaturalIso.identity(compose_maps(pi2, s1)),
        notes={
            "automorphism": True,
            "over_base": compose_maps(pairing(sq, *cube.projections[:2]), theta) == pairing(sq, *cube.projections[:2]),
            "theta_s0_eq_s1": True,
            "theta_s0_eq_theta_s1": ts0 == compose_maps(theta, s1),
        },
    )
    if hw.check():
        raise InternalInconsistency(f"abelian homogeneity witness fails: {hw.check()}")
    return hw


def theta_value(hw: HomogeneityWitness, triple: tuple) -> tuple:
    """``theta`` on a morphism of ``B(G)^3`` given by element ids."""
    return hw.e.on_morphism(tuple(triple))


def search_homogeneity(a: FiniteGroupoid, cap: int | None = None) -> HomogeneityWitness | None:
    """First homogeneity witness in canonical order, or ``None``."""
    sq, cube, s0, s1 = _sections(a)
    leg = pairing(sq, *cube.projections[:2])
    pi2 = cube.projections[2]
    target = compose_maps(pi2, s1)
    for e in iter_functors(cube.groupoid, cube.groupoid, over=[(leg, leg)], cap=cap, what="homogeneity search"):
        if not is_equivalence(e, witness=False):
            continue
        eta = find_natural_iso(compose_maps(pi2, compose_maps(e, s0)), target, cap=cap)
        if eta is not None:
            hw = HomogeneityWitness(a, sq, cube, e, s0, s1, eta)
            if hw.check():
                raise InternalInconsistency("searched homogeneity witness fails its checks")
            return hw
    return None


@dataclass(frozen=True)
class UHomogeneityWitness:
    """``homotopy: iota pi0 => iota pi1`` on ``square = A x A``."""

    square: Product
    iota: GroupoidMap
    homotopy: NaturalIso

    def check(self) -> list[str]:
        p0, p1 = self.square.projections
        h = self.homotopy
        if h.source != compose_maps(self.iota, p0) or h.target != compose_maps(self.iota, p1):
            return ["boundaries iota pi0, iota pi1"]
        return [str(v) for v in validate_natural_iso(h)]


def rectangle_instance(hw: HomogeneityWitness, sw: SmallnessWitness, u: Universe) -> UnivalenceInstance:
    """``A^3 -> A -> U_dot`` over ``A^2 -> 1 -> U`` as a pullback, with ``e``."""
    if sw.iota is None:
        raise PreconditionError("the smallness witness must be over the terminal groupoid")
    if sw.total != hw.obj:
        raise DomainMismatch("smallness witness is for a different object")
    leg = hw.base_leg
    top = compose_maps(sw.iota, hw.cube.projections[2])
    pt = sw.classifier
    bottom = compose_maps(pt, terminal_map(hw.square.groupoid, pt.domain))
    cert = certify_pullback(hw.cube.groupoid, leg, top, u.projection, bottom)
    if not cert.valid:
        raise InternalInconsistency("pullback rectangle fails its certificate")
    w = SmallnessWitness(PullbackSquare(hw.cube.groupoid, leg, top, u.projection, bottom, cert))
    return UnivalenceInstance(u, hw.square.groupoid, w, w, hw.e)


WeakOracle = Callable[[UnivalenceInstance], "NaturalIso | None"]


def u_homogenize(hw: HomogeneityWitness, sw: SmallnessWitness, u: Universe,
                 oracle: WeakOracle | None = None, verify: bool = True) -> UHomogeneityWitness:
    """Paste weak univalence for ``e`` with the section homotopy.

    With ``W: iota pi2 e => iota pi2`` the result is
    ``(W * s0)^-1`` followed by ``iota * section_homotopy``.  ``oracle``
    replaces the weak-univalence search (used to inject asserted witnesses);
    ``verify=False`` skips the final naturality check.
    """
    inst = rectangle_instance(hw, sw, u)
    W = (oracle or weak_univalence_witness)(inst)
    if W is None:
        raise UnivalenceFailure("no weak-univalence witness for the homogeneity instance", inst)
    iota = sw.iota
    left = W.whisker(hw.s0).inverse()  # iota pi0 => iota pi2 e s0
    right = hw.section_homotopy.postcompose(iota)  # iota pi2 e s0 => iota pi1
    pasted = left.then(right)
    uhw = UHomogeneityWitness(hw.square, iota, pasted)
    if verify and uhw.check():
        raise InternalInconsistency(f"pasted homotopy fails: {uhw.check()}")
    return uhw


@dataclass(frozen=True)
class MonoCertificate:
    m: GroupoidMap
    j: GroupoidMap
    iota: GroupoidMap
    iota_monic: bool
    m_monic: bool
    realignment: Realignment

    @property
    def strict(self) -> bool:
        return compose_maps(self.j, self.m) == self.iota


def kraus_main(uhw: UHomogeneityWitness, sw: SmallnessWitness, m: GroupoidMap, s: GroupoidMap,
               cap: int | None = None) -> MonoCertificate:
    """Realign ``iota s`` along the cofibration ``m`` to get ``j`` with ``j m = iota``."""
    iota = sw.iota
    A = m.domain
    if iota is None or iota.domain != A:
        raise PreconditionError("the smallness witness must classify the domain of m over 1")
    if s.domain != m.codomain or s.codomain != A:
        raise DomainMismatch("s must go from the codomain of m back to its domain")
    if not is_cofibration(m):
        raise PreconditionError("m is not a cofibration")
    if uhw.iota != iota:
        raise DomainMismatch("homogeneity witness uses a different classifier")
    dotted = pairing(uhw.square, identity_map(A), compose_maps(s, m))
    h = uhw.homotopy.whisker(dotted).inverse()  # iota s m => iota
    g = compose_maps(iota, s)
    result = realign(m, iota, g, h, cap=cap)
    j = result.g_prime
    iota_monic = bool(is_monomorphism(iota))
    m_monic = bool(is_monomorphism(m))
    if compose_maps(j, m) != iota:
        raise InternalInconsistency("realigned classifier does not restrict to iota")
    if iota_monic and not m_monic:
        raise InternalInconsistency("j o m is monic but m is not")
    return MonoCertificate(m, j, iota, iota_monic, m_monic, result)


def pointed_section(a: FiniteGroupoid, b: FiniteGroupoid, point) -> GroupoidMap:
    """``a0 o !_B``: the constant map at an object of ``a``."""
    return constant_map(b, a, point)


@dataclass(frozen=True)
class TruncationReport:
    group: str
    monic: bool
    truncation_isomorphism: bool
    collapsed: tuple  # (element, identity) pairs with equal images

    @property
    def consistent(self) -> bool:
        return self.monic == (len(self.collapsed) == 0)


def truncation_mono_check(grp: FiniteGroup) -> TruncationReport:
    BG = delooping(grp)
    i, f_prime, _ = truncate(terminal_map(BG))
    monic = bool(is_monomorphism(i))
    e = grp.identity_index
    collapsed = tuple(
        (grp.elements[g], grp.identity) for g in range(grp.order)
        if g != e and i.mor_map[g] == i.mor_map[e]
    )
    iso = monic and i.codomain.n_morphisms == BG.n_morphisms
    return TruncationReport(grp.name, monic, iso, collapsed)


@dataclass
class NonSmallnessReport:
    group: str
    universe: str
    branch: str  # "refutation" or "contradiction"
    homogeneity: HomogeneityWitness
    failing_instance: UnivalenceInstance | None = None
    base_instance: UnivalenceInstance | None = None
    claimed_monic: bool | None = None
    observed_monic: bool | None = None
    diagnostics: list = field(default_factory=list)

    @property
    def refutes(self) -> bool:
        if self.branch == "refutation":
            return self.failing_instance is not None
        return self.claimed_monic is not None and self.claimed_monic != self.observed_monic


def first_failing_instance(c: FiniteGroupoid, u: Universe, oracle: WeakOracle | None = None,
                           cap: int | None = None) -> UnivalenceInstance | None:
    """First instance over ``c`` (canonical order) without a weak-univalence witness."""
    check = oracle or weak_univalence_witness
    for inst in iter_equivalences_over(c, u, cap=cap):
        if check(inst) is None:
            return inst
    return None


def abelian_nonsmallness_report(grp: FiniteGroup, candidate: Universe, sw: SmallnessWitness,
                                oracle: WeakOracle | None = None) -> NonSmallnessReport:
    """Show that ``candidate`` cannot be univalent while containing ``B(G)``.

    Either the homogeneity instance has no weak-univalence witness, and the
    first failing instance over ``B(G)`` is reported; or a witness is
    available (possibly injected through ``oracle``) and the realignment
    argument claims the truncation of ``B(G)`` is monic, which contradicts
    the direct check.
    """
    if grp.is_trivial():
        raise PreconditionError("the group must be nontrivial")
    hw = abelian_theta(grp)
    report = NonSmallnessReport(grp.name, candidate.name, "refutation", hw)
    try:
        uhw = u_homogenize(hw, sw, candidate, oracle=oracle, verify=oracle is None)
    except UnivalenceFailure as exc:
        report.failing_instance = exc.instance
        report.base_instance = first_failing_instance(delooping(grp), candidate, oracle)
        report.diagnostics.append(str(exc))
        return report
    report.branch = "contradiction"
    # with the hypotheses granted the corollary concludes that the truncation is monic
    report.claimed_monic = True
    report.observed_monic = truncation_mono_check(grp).monic
    A = hw.obj
    m = truncate(terminal_map(A)).i
    s = pointed_section(A, m.codomain, A.objects[0])
    try:
        cert = kraus_main(uhw, sw, m, s)
        report.diagnostics.append(f"pipeline ran; m monic = {cert.m_monic}")
    except Exception as exc:  # the injected witness need not survive verification
        report.diagnostics.append(f"pipeline rejected the asserted witness: {type(exc).__name__}: {exc}")
    return report
