"""Deciding the classes of maps in the groupoid path category.

Fibrations are isofibrations, weak equivalences are equivalences of
groupoids, cofibrations are the functors injective on objects.  Every
verdict comes with a certificate; negative certificates always name a
concrete counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainMismatch, InternalInconsistency, PreconditionError
from .groupoids import GroupoidMap, compose_maps


@dataclass(frozen=True)
class Certificate:
    kind: str
    verdict: bool
    witness: dict = field(default_factory=dict)

    def __bool__(self):
        return self.verdict


def _lift_table(f: GroupoidMap):
    """Per domain object: {codomain morphism out of f(x): first lift}."""
    A = f.domain
    mm = f.mor_map.tolist()
    table = []
    for x in range(A.n_objects):
        lifts = {}
        for a in A.out_idx[x]:
            lifts.setdefault(mm[a], a)
        table.append(lifts)
    return table


def is_isofibration(f: GroupoidMap, witness: bool = True) -> Certificate:
    """Every isomorphism out of ``f(x)`` lifts to one out of ``x``."""
    A, B = f.domain, f.codomain
    lifts = _lift_table(f)
    chosen = {}
    for x in range(A.n_objects):
        for b in B.out_idx[int(f.obj_map[x])]:
            a = lifts[x].get(b)
            if a is None:
                return Certificate("fibration", False, {"object": A.objects[x], "unliftable": B.morphisms[b]})
            if witness:
                chosen[(A.objects[x], B.morphisms[b])] = A.morphisms[a]
    return Certificate("fibration", True, {"lifts": chosen} if witness else {})


def _hom_counts(g):
    n = g.n_objects
    h = np.zeros((n, n), dtype=np.int64)
    np.add.at(h, (g.src, g.dst), 1)
    return h


def is_equivalence(f: GroupoidMap, witness: bool = True) -> Certificate:
    """Full, faithful and essentially surjective."""
    A, B = f.domain, f.codomain
    fo, fm = f.obj_map, f.mor_map
    if A.n_morphisms:
        keys = np.stack([A.src, A.dst, fm], axis=1)
        uniq, first, counts = np.unique(keys, axis=0, return_index=True, return_counts=True)
        dup = np.nonzero(counts > 1)[0]
        if len(dup):
            row = uniq[dup[0]]
            same = np.nonzero((keys == row).all(axis=1))[0][:2]
            return Certificate("weak equivalence", False, {
                "reason": "not faithful", "morphisms": tuple(A.morphisms[i] for i in same),
            })
        distinct = np.zeros((A.n_objects, A.n_objects), dtype=np.int64)
        np.add.at(distinct, (uniq[:, 0], uniq[:, 1]), 1)
    else:
        distinct = np.zeros((A.n_objects, A.n_objects), dtype=np.int64)
    need = _hom_counts(B)[fo][:, fo] if A.n_objects else distinct
    short = np.argwhere(distinct != need)
    if len(short):
        x, y = short[0]
        have = set(fm[list(A.hom_idx(int(x), int(y)))].tolist())
        missing = next(b for b in B.hom_idx(int(fo[x]), int(fo[y])) if b not in have)
        return Certificate("weak equivalence", False, {
            "reason": "not full", "objects": (A.objects[x], A.objects[y]), "unhit": B.morphisms[missing],
        })
    image_comps = set(B.component_of[fo].tolist())
    ess = {}
    for b in range(B.n_objects):
        if int(B.component_of[b]) not in image_comps:
            return Certificate("weak equivalence", False, {
                "reason": "not essentially surjective", "object": B.objects[b],
            })
    if not witness:
        return Certificate("weak equivalence", True)
    first_pre = {}
    for x in range(A.n_objects):
        first_pre.setdefault(int(B.component_of[fo[x]]), x)
    for b in range(B.n_objects):
        x = first_pre[int(B.component_of[b])]
        iso = B.hom_idx(int(fo[x]), b)[0]
        ess[B.objects[b]] = (A.objects[x], B.morphisms[iso])
    preimages = {}
    for a in range(A.n_morphisms):
        preimages.setdefault(
            (A.objects[A.src[a]], A.objects[A.dst[a]], B.morphisms[fm[a]]), A.morphisms[a]
        )
    return Certificate("weak equivalence", True, {"preimages": preimages, "essential": ess})


def is_trivial_fibration(f: GroupoidMap, witness: bool = True) -> Certificate:
    fib = is_isofibration(f, witness)
    if not fib:
        return Certificate("trivial fibration", False, {"fibration": fib.witness})
    we = is_equivalence(f, witness)
    if not we:
        return Certificate("trivial fibration", False, {"weak equivalence": we.witness})
    return Certificate("trivial fibration", True, {"fibration": fib.witness, "weak equivalence": we.witness})


def _first_collision(arr):
    seen = {}
    for i, v in enumerate(arr.tolist()):
        if v in seen:
            return seen[v], i
        seen[v] = i
    return None


def is_cofibration(f: GroupoidMap) -> Certificate:
    """Injective on objects."""
    hit = _first_collision(f.obj_map)
    if hit:
        return Certificate("cofibration", False, {"objects": tuple(f.domain.objects[i] for i in hit)})
    return Certificate("cofibration", True, {"object_images": f.object_dict()})


def is_monomorphism(f: GroupoidMap) -> Certificate:
    """Injective on objects and on morphisms."""
    hit = _first_collision(f.obj_map)
    if hit:
        return Certificate("monomorphism", False, {"objects": tuple(f.domain.objects[i] for i in hit)})
    hit = _first_collision(f.mor_map)
    if hit:
        return Certificate("monomorphism", False, {"morphisms": tuple(f.domain.morphisms[i] for i in hit)})
    return Certificate("monomorphism", True)


def is_full_and_faithful(f: GroupoidMap) -> bool:
    cert = is_equivalence(f, witness=False)
    return cert.verdict or cert.witness.get("reason") == "not essentially surjective"


def is_hproposition(f: GroupoidMap) -> Certificate:
    """A full and faithful isofibration; ``f`` must be a fibration."""
    fib = is_isofibration(f, witness=False)
    if not fib:
        raise PreconditionError(f"hProposition needs a fibration; unliftable morphism {fib.witness}")
    cert = is_equivalence(f, witness=False)
    if cert.verdict or cert.witness.get("reason") == "not essentially surjective":
        return Certificate("hProposition", True)
    return Certificate("hProposition", False, cert.witness)


def is_isomorphism(f: GroupoidMap) -> bool:
    return (
        f.domain.n_objects == f.codomain.n_objects
        and f.domain.n_morphisms == f.codomain.n_morphisms
        and bool(is_monomorphism(f))
    )


CLASSIFIERS = {
    "fib": is_isofibration,
    "we": is_equivalence,
    "trivfib": is_trivial_fibration,
    "cof": is_cofibration,
    "hprop": is_hproposition,
    "mono": is_monomorphism,
}


def recheck(cert: Certificate, f: GroupoidMap) -> bool:
    """Independently re-verify the witness data in ``cert`` against ``f``."""
    A, B = f.domain, f.codomain
    w = cert.witness
    if cert.kind == "fibration":
        if cert.verdict:
            for (x, b), a in w.get("lifts", {}).items():
                if A.source(a) != x or f.on_morphism(a) != b:
                    return False
            return True
        x, b = w["object"], w["unliftable"]
        return B.source(b) == f.on_object(x) and all(f.on_morphism(a) != b for a in A.morphisms if A.source(a) == x)
    if cert.kind == "weak equivalence":
        if cert.verdict:
            for (x, y, b), a in w.get("preimages", {}).items():
                if (A.source(a), A.target(a), f.on_morphism(a)) != (x, y, b):
                    return False
            for b, (x, iso) in w.get("essential", {}).items():
                if B.source(iso) != f.on_object(x) or B.target(iso) != b:
                    return False
            return True
        reason = w["reason"]
        if reason == "not faithful":
            a1, a2 = w["morphisms"]
            return (a1 != a2 and A.source(a1) == A.source(a2) and A.target(a1) == A.target(a2)
                    and f.on_morphism(a1) == f.on_morphism(a2))
        if reason == "not full":
            x, y = w["objects"]
            return all(f.on_morphism(a) != w["unhit"] for a in A.hom(x, y))
        if reason == "not essentially surjective":
            b = w["object"]
            return all(not B.hom(f.on_object(x), b) for x in A.objects)
    if cert.kind in ("cofibration", "monomorphism") and not cert.verdict:
        if "objects" in w:
            x1, x2 = w["objects"]
            return x1 != x2 and f.on_object(x1) == f.on_object(x2)
        a1, a2 = w["morphisms"]
        return a1 != a2 and f.on_morphism(a1) == f.on_morphism(a2)
    return cert.verdict == CLASSIFIERS_BY_KIND[cert.kind](f).verdict


CLASSIFIERS_BY_KIND = {
    "fibration": is_isofibration,
    "weak equivalence": is_equivalence,
    "trivial fibration": is_trivial_fibration,
    "cofibration": is_cofibration,
    "monomorphism": is_monomorphism,
    "hProposition": is_hproposition,
}


def section_of_trivial_fibration(p: GroupoidMap) -> GroupoidMap:
    """A map ``s`` with ``p o s = id``; ``p`` must be a trivial fibration."""
    if not is_trivial_fibration(p, witness=False):
        raise PreconditionError("section requested for a map that is not a trivial fibration")
    A, B = p.domain, p.codomain
    fo = p.obj_map.tolist()
    pick = {}
    for x, y in enumerate(fo):
        pick.setdefault(y, x)
    so = [pick[b] for b in range(B.n_objects)]
    sm = []
    mm = p.mor_map.tolist()
    for b in range(B.n_morphisms):
        x, y = so[B.src[b]], so[B.dst[b]]
        sm.append(next(a for a in A.hom_idx(x, y) if mm[a] == b))
    s = GroupoidMap(B, A, so, sm)
    if not compose_maps(p, s).is_identity():
        raise InternalInconsistency("constructed section does not split the trivial fibration")
    return s


@dataclass(frozen=True)
class TwoOutOfSixReport:
    hypothesis_met: bool
    verdicts: dict

    @property
    def holds(self) -> bool:
        return not self.hypothesis_met or all(self.verdicts.values())


def check_two_out_of_six(f: GroupoidMap, g: GroupoidMap, h: GroupoidMap) -> TwoOutOfSixReport:
    """If ``g o f`` and ``h o g`` are equivalences, check ``f, g, h, h o g o f``."""
    if f.codomain != g.domain or g.codomain != h.domain:
        raise DomainMismatch("two-out-of-six needs a composable chain")
    gf, hg = compose_maps(g, f), compose_maps(h, g)
    hyp = {"g o f": bool(is_equivalence(gf, False)), "h o g": bool(is_equivalence(hg, False))}
    if not all(hyp.values()):
        return TwoOutOfSixReport(False, hyp)
    out = dict(hyp)
    out["f"] = bool(is_equivalence(f, False))
    out["g"] = bool(is_equivalence(g, False))
    out["h"] = bool(is_equivalence(h, False))
    out["h o g o f"] = bool(is_equivalence(compose_maps(h, gf), False))
    return TwoOutOfSixReport(True, out)
