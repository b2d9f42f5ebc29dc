"""Lifting problems and the realignment construction."""

from __future__ import annotations

from dataclasses import dataclass

from .classifiers import is_cofibration
from .constructions import PathObjectData, path_object
from .errors import DomainMismatch, InternalInconsistency, PreconditionError
from .groupoids import GroupoidMap, NaturalIso, compose_maps, validate_natural_iso
from .search import iter_functors


@dataclass(frozen=True)
class LiftingProblem:
    """A commuting square ``f o top = bottom o m``.

    ::

        A --top--> C
        |          |
        m          f
        v          v
        B --bot--> D
    """

    m: GroupoidMap
    f: GroupoidMap
    top: GroupoidMap
    bottom: GroupoidMap

    def __post_init__(self):
        m, f, top, bottom = self.m, self.f, self.top, self.bottom
        if top.domain != m.domain or bottom.domain != m.codomain:
            raise DomainMismatch("lifting square: top/bottom do not start at the left map's ends")
        if top.codomain != f.domain or bottom.codomain != f.codomain:
            raise DomainMismatch("lifting square: top/bottom do not land at the right map's ends")
        if compose_maps(f, top) != compose_maps(bottom, m):
            raise PreconditionError("lifting square does not commute")


@dataclass(frozen=True)
class Filler:
    diagonal: GroupoidMap

    def check(self, problem: LiftingProblem) -> bool:
        d = self.diagonal
        return compose_maps(d, problem.m) == problem.top and compose_maps(problem.f, d) == problem.bottom


def _pinned(problem: LiftingProblem):
    """Images forced on ``m``'s image by the upper triangle, or ``None`` on conflict."""
    m, top = problem.m, problem.top
    objs, mors = {}, {}
    for a, b in enumerate(m.obj_map.tolist()):
        if objs.setdefault(b, int(top.obj_map[a])) != int(top.obj_map[a]):
            return None
    for a, b in enumerate(m.mor_map.tolist()):
        if mors.setdefault(b, int(top.mor_map[a])) != int(top.mor_map[a]):
            return None
    return objs, mors


def iter_fillers(problem: LiftingProblem, cap: int | None = None):
    pins = _pinned(problem)
    if pins is None:
        return iter(())
    return iter_functors(
        problem.m.codomain, problem.f.domain,
        over=[(problem.bottom, problem.f)],
        fixed_objects=pins[0], fixed_morphisms=pins[1],
        cap=cap, what="lifting search",
    )


def solve_lifting(problem: LiftingProblem, cap: int | None = None) -> Filler | None:
    """First diagonal filler in canonical order, or ``None`` if none exists.

    Raises :class:`SearchBoundExceeded` when the search needs more than
    ``cap`` branch attempts.
    """
    d = next(iter_fillers(problem, cap), None)
    if d is None:
        return None
    filler = Filler(d)
    if not filler.check(problem):
        raise InternalInconsistency("search returned a diagonal that fails a triangle")
    return filler


def lifting_squares(m: GroupoidMap, f: GroupoidMap, cap: int | None = None):
    """Every commuting square from ``m`` to ``f``."""
    for bottom in iter_functors(m.codomain, f.codomain, cap=cap):
        for top in iter_functors(m.domain, f.domain, over=[(compose_maps(bottom, m), f)], cap=cap):
            yield LiftingProblem(m, f, top, bottom)


def llp_brute_force(m: GroupoidMap, f: GroupoidMap, cap: int | None = None):
    """``(True, None)`` if ``m`` lifts against ``f`` on every square, else ``(False, square)``."""
    for problem in lifting_squares(m, f, cap):
        if solve_lifting(problem, cap) is None:
            return False, problem
    return True, None


@dataclass(frozen=True)
class Realignment:
    """``g_prime`` with ``g_prime o m = f`` and a homotopy ``g => g_prime``."""

    g_prime: GroupoidMap
    homotopy: NaturalIso
    filler: GroupoidMap
    path: PathObjectData


def realign(m: GroupoidMap, f: GroupoidMap, g: GroupoidMap, h: NaturalIso, cap: int | None = None) -> Realignment:
    """Replace ``g`` by a homotopic ``g'`` agreeing with ``f`` on the nose along ``m``.

    ``h: g o m => f``.  The homotopy becomes a map ``A -> PC``; the square
    with ``m`` on the left and ``p0: PC -> C`` on the right has a filler
    ``j`` because ``m`` is a cofibration and ``p0`` a trivial fibration, and
    ``g' = p1 o j``.
    """
    if not is_cofibration(m):
        raise PreconditionError("realignment needs a cofibration")
    if h.source != compose_maps(g, m) or h.target != f:
        raise PreconditionError("homotopy must run from g o m to f")
    bad = validate_natural_iso(h)
    if bad:
        raise PreconditionError(f"invalid homotopy: {bad[0]}")
    pc = path_object(f.codomain)
    H = pc.homotopy_map(h)
    problem = LiftingProblem(m, pc.p0, H, g)
    filler = solve_lifting(problem, cap)
    if filler is None:
        raise InternalInconsistency("no filler against p0 for a cofibration")
    j = filler.diagonal
    g_prime = compose_maps(pc.p1, j)
    eta = pc.natural_iso(j)
    if compose_maps(g_prime, m) != f or validate_natural_iso(eta):
        raise InternalInconsistency("realignment output fails its checks")
    return Realignment(g_prime, eta, j, pc)
