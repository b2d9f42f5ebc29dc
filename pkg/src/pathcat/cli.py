"""Command line front end: ``pathcat <command> ...``.

Every command builds a :class:`Report`.  Text reports are line oriented;
``--format json`` emits a document in the input schema (so witnesses can be
fed back to ``pathcat check``) with the results under ``"report"``.

Exit codes: 0 success or a predicted absence, 1 a verification that must
hold failed, 2 input or precondition error, 3 search bound exceeded.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .axioms import run_axiom_suite
from .classifiers import (
    CLASSIFIERS_BY_KIND,
    is_cofibration,
    is_hproposition,
    is_monomorphism,
    is_trivial_fibration,
)
from .constructions import Universe, delooping_universe, finset_universe, path_object, truncate
from .errors import (
    DomainMismatch,
    GroupError,
    InternalInconsistency,
    PathcatError,
    PreconditionError,
    SearchBoundExceeded,
    StructuralError,
    UnivalenceFailure,
)
from .groupoids import (
    FiniteGroupoid,
    GroupoidMap,
    delooping,
    interval,
    discrete,
    standard_objects,
    terminal,
    validate_groupoid,
    validate_map,
    validate_natural_iso,
)
from .groups import FiniteGroup, group_by_name, validate_group
from .kraus import (
    abelian_nonsmallness_report,
    abelian_theta,
    kraus_main,
    pointed_section,
    search_homogeneity,
    truncation_mono_check,
    u_homogenize,
)
from .lifting import LiftingProblem, solve_lifting
from .serialize import Document, FormatError, dumps, id_str, load, single
from .univalence import (
    check_univalence_instance,
    complete_group_pair,
    is_complete_group,
    iter_equivalences_over,
    smallness_witness,
)

EXIT_OK, EXIT_ASSERTION, EXIT_INPUT, EXIT_BOUND = 0, 1, 2, 3

CLASS_NAMES = {
    "fib": "fibration",
    "we": "weak equivalence",
    "trivfib": "trivial fibration",
    "cof": "cofibration",
    "hprop": "hProposition",
    "mono": "monomorphism",
}


def plain(x):
    """JSON-ready copy of ``x``: ids become strings, tuples lists."""
    if isinstance(x, dict):
        return {id_str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    if isinstance(x, (bool, str)) or x is None:
        return x
    if hasattr(x, "item"):
        return x.item()
    if isinstance(x, (int, float)):
        return x
    return id_str(x)


@dataclass
class Report:
    command: list
    results: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    witnesses: Document = field(default_factory=Document)
    status: int = EXIT_OK
    timing: dict | None = None

    def fail(self, reason: str):
        self.status = EXIT_ASSERTION
        self.results.setdefault("failures", []).append(reason)

    def as_dict(self) -> dict:
        out = {"command": " ".join(self.command), "results": plain(self.results),
               "bounds": plain(self.bounds), "exit": self.status}
        if self.timing is not None:
            out["timing"] = self.timing
        return out

    def render_json(self) -> str:
        self.witnesses.extra = {"report": self.as_dict()}
        return dumps(self.witnesses)

    def render_text(self) -> str:
        d = self.as_dict()
        lines = [f"command: {d['command']}"]
        lines += _flatten(d["results"], "")
        if d["bounds"]:
            lines += _flatten(d["bounds"], "bound.")
        w = self.witnesses
        if w.groupoids or w.maps or w.isos:
            lines.append(f"witnesses: {len(w.groupoids)} groupoids, {len(w.maps)} maps, "
                         f"{len(w.isos)} isos (use --format json)")
        if self.timing is not None:
            lines += _flatten(self.timing, "time.")
        lines.append(f"exit: {self.status}")
        return "\n".join(lines) + "\n"


def _flatten(d, prefix):
    lines = []
    for k in sorted(d):
        v = d[k]
        if isinstance(v, dict) and v:
            lines += _flatten(v, f"{prefix}{k}.")
        elif isinstance(v, list):
            lines.append(f"{prefix}{k}: " + ", ".join(str(x) for x in v))
        else:
            lines.append(f"{prefix}{k}: {v}")
    return lines


# ---------------------------------------------------------------------------
# argument helpers


def _groupoid_arg(text: str) -> FiniteGroupoid:
    """A catalog name (``BS3``, ``interval``), ``discrete:N`` or a document path."""
    cat = standard_objects()
    if text in cat:
        return cat[text]
    if text.startswith("discrete:"):
        return discrete(int(text.split(":", 1)[1]))
    if text.startswith("B") and not Path(text).exists():
        try:
            return delooping(group_by_name(text[1:]))
        except ValueError:
            pass
    doc = load(text)
    return single(doc, "groupoids")


def _group_arg(text: str) -> FiniteGroup:
    if Path(text).is_file():
        grp = single(load(text), "groups")
    else:
        try:
            grp = group_by_name(text)
        except ValueError as e:
            raise FormatError(str(e), "group") from None
    bad = validate_group(grp)
    if bad:
        raise GroupError(f"{grp.name}: {bad[0]}")
    return grp


def _universe_arg(text: str) -> tuple[Universe, FiniteGroup | None]:
    kind, _, rest = text.partition(":")
    if kind == "finset" and rest.isdigit():
        return finset_universe(int(rest)), None
    if kind == "delooping" and rest:
        grp = _group_arg(rest)
        return delooping_universe(grp), grp
    raise FormatError(f"universe must be finset:N or delooping:GROUP, got {text!r}", "universe")


def _map_arg(path: str, name: str | None) -> GroupoidMap:
    f = single(load(path), "maps", name)
    bad = validate_map(f)
    if bad:
        raise StructuralError([f"map is not a functor: {bad[0]}"])
    return f


# ---------------------------------------------------------------------------
# commands


def cmd_check(args, rep: Report):
    doc = load(args.file)
    verdicts = {}
    for sec, validate in (("groups", validate_group), ("groupoids", validate_groupoid),
                          ("maps", validate_map), ("isos", validate_natural_iso)):
        for name, obj in getattr(doc, sec).items():
            bad = validate(obj)
            verdicts[f"{sec}.{name}"] = "valid" if not bad else [str(v) for v in bad]
    rep.results["entries"] = verdicts
    ok = all(v == "valid" for v in verdicts.values())
    rep.results["verdict"] = "valid" if ok else "invalid"
    if not ok:
        rep.status = EXIT_INPUT


def cmd_classify(args, rep: Report):
    f = _map_arg(args.map, args.name)
    kind = CLASS_NAMES[args.cls]
    cert = CLASSIFIERS_BY_KIND[kind](f)
    rep.results.update({"class": kind, "verdict": bool(cert.verdict), "witness": cert.witness})


def cmd_truncate(args, rep: Report):
    f = _map_arg(args.map, args.name)
    i, fp, T = truncate(f)
    rep.witnesses.add_groupoid(f.domain, "A")
    rep.witnesses.add_groupoid(f.codomain, "B")
    rep.witnesses.add_groupoid(T, "T")
    rep.witnesses.add_map(i, "i")
    rep.witnesses.add_map(fp, "f_prime")
    bijective = i.domain.n_objects == T.n_objects and bool(is_cofibration(i))
    hprop = bool(is_hproposition(fp))
    rep.results.update({
        "truncated": {"objects": T.n_objects, "morphisms": T.n_morphisms},
        "i_bijective_on_objects": bijective,
        "f_prime_hproposition": hprop,
        "i_monic": bool(is_monomorphism(i)),
    })
    if not (bijective and hprop):
        rep.fail("truncation factorization")


def cmd_pathobj(args, rep: Report):
    b = _groupoid_arg(args.groupoid)
    po = path_object(b)
    bad = po.check()
    rep.results.update({
        "base": {"objects": b.n_objects, "morphisms": b.n_morphisms},
        "path_object": {"objects": po.total.n_objects, "morphisms": po.total.n_morphisms},
        "invariants": "hold" if not bad else bad,
    })
    if args.emit:
        rep.witnesses.add_groupoid(b, "B")
        rep.witnesses.add_groupoid(po.total, "PB")
        for name in ("r", "p0", "p1"):
            rep.witnesses.add_map(getattr(po, name), name)
    if bad:
        rep.fail("path object invariants")


def cmd_lift(args, rep: Report):
    doc = load(args.square)
    try:
        m, f, top, bottom = (doc.maps[k] for k in ("m", "f", "top", "bottom"))
    except KeyError as e:
        raise FormatError(f"square documents need maps m, f, top, bottom (missing {e})", "maps") from None
    problem = LiftingProblem(m, f, top, bottom)
    rep.bounds["cap"] = args.cap
    filler = solve_lifting(problem, args.cap)
    cof = bool(is_cofibration(m))
    triv = bool(is_trivial_fibration(f, False))
    rep.results.update({"m_cofibration": cof, "f_trivial_fibration": triv, "filler": filler is not None})
    if filler is not None:
        rep.witnesses.add_map(filler.diagonal, "diagonal")
    elif cof and triv:
        rep.fail("cofibration without a lift against a trivial fibration")


def cmd_univalence(args, rep: Report):
    u, grp = _universe_arg(args.universe)
    base = _groupoid_arg(args.base) if args.base else terminal()
    method = args.method
    complete = grp is not None and bool(is_complete_group(grp))
    if method == "auto":
        method = "construction" if complete else "search"
    if method == "construction" and not complete:
        raise PreconditionError("the construction method needs a delooping of a complete group")
    u.coherent(args.path_method)
    rep.bounds.update({"cap": args.cap, "path_method": args.path_method})
    total, witnessed, failing = 0, 0, []
    for n, inst in enumerate(iter_equivalences_over(base, u, cap=args.cap)):
        total += 1
        if method == "construction":
            pair = complete_group_pair(inst, grp)
        else:
            pair = check_univalence_instance(inst, cap=args.cap)
        if pair is None:
            failing.append(n)
            rep.witnesses.add_map(inst.e, f"failing{n}.e")
            continue
        witnessed += 1
        if args.witnesses == "all" or (args.witnesses == "first" and witnessed == 1):
            rep.witnesses.add_iso(pair.base_iso, f"instance{n}.base")
            rep.witnesses.add_iso(pair.total_iso, f"instance{n}.total")
    expected = grp is None or complete
    rep.results.update({
        "universe": u.name, "base": base.name, "method": method,
        "instances": total, "witnessed": witnessed, "failing_instances": failing,
        "univalent_here": not failing, "predicted_univalent": expected,
    })
    if expected and failing:
        rep.fail("instance without a coherent homotopy pair")


def cmd_kraus_theta(args, rep: Report):
    grp = _group_arg(args.group)
    hw = abelian_theta(grp)
    rep.results.update({"group": grp.name, **hw.notes})
    if args.triple:
        parts = tuple(args.triple.split(","))
        els = {id_str(x): x for x in grp.elements}
        try:
            triple = tuple(els[p] for p in parts)
        except KeyError as e:
            raise FormatError(f"unknown element {e}", "triple") from None
        if len(triple) != 3:
            raise FormatError("a triple has three elements", "triple")
        rep.results["theta"] = {args.triple: hw.e.on_morphism(triple)}
    if args.emit:
        rep.witnesses.add_map(hw.e, "theta")
    if not (hw.notes["automorphism"] and hw.notes["over_base"] and hw.notes["theta_s0_eq_s1"]):
        rep.fail("abelian homogeneity")


def cmd_kraus_homogeneity(args, rep: Report):
    a = _groupoid_arg(args.groupoid)
    rep.bounds["cap"] = args.cap
    hw = search_homogeneity(a, cap=args.cap)
    rep.results.update({"object": a.name, "homogeneous": hw is not None})
    if hw is not None and args.emit:
        rep.witnesses.add_map(hw.e, "e")
        rep.witnesses.add_iso(hw.section_homotopy, "section_homotopy")


def cmd_kraus_pipeline(args, rep: Report):
    u, _ = _universe_arg(args.universe)
    if args.map:
        m = _map_arg(args.map, args.name)
    else:
        A, I = discrete(2), interval()
        m = GroupoidMap(A, I, [0, 1], [0, 3], name="m")
    A = m.domain
    if args.section:
        s = _map_arg(args.section, None)
    else:
        objs = {id_str(x): x for x in A.objects}
        if args.point not in objs:
            raise FormatError(f"no object {args.point!r} in the domain", "point")
        s = pointed_section(A, m.codomain, objs[args.point])
    rep.bounds["cap"] = args.cap
    sw = smallness_witness(A, u, cap=args.cap)
    if sw is None:
        raise PreconditionError(f"{A.name} is not small in {u.name}")
    hw = search_homogeneity(A, cap=args.cap)
    if hw is None:
        raise PreconditionError(f"no homogeneity witness for {A.name}")
    try:
        uhw = u_homogenize(hw, sw, u)
    except UnivalenceFailure as exc:
        rep.results.update({"u_homogeneous": False, "reason": str(exc)})
        return
    cert = kraus_main(uhw, sw, m, s, cap=args.cap)
    rep.results.update({
        "u_homogeneous": True, "strict": cert.strict, "iota_monic": cert.iota_monic,
        "m_monic": cert.m_monic, "j_on_morphisms": cert.j.morphism_dict(),
    })
    rep.witnesses.add_map(cert.j, "j")
    rep.witnesses.add_map(m, "m")
    rep.witnesses.add_iso(uhw.homotopy, "u_homogeneity")
    if not (cert.strict and cert.m_monic):
        rep.fail("monomorphism certificate")


def cmd_kraus_trunc_mono(args, rep: Report):
    grp = _group_arg(args.group)
    r = truncation_mono_check(grp)
    rep.results.update({"group": grp.name, "verdict": "monic" if r.monic else "not monic",
                        "collapsed": r.collapsed, "truncation_isomorphism": r.truncation_isomorphism})
    if r.monic != grp.is_trivial():
        rep.fail("truncation monic iff the group is trivial")


def cmd_kraus_nonsmall(args, rep: Report):
    grp = _group_arg(args.group)
    u, _ = _universe_arg(args.universe or f"delooping:{grp.name}")
    BG = delooping(grp)
    sw = smallness_witness(BG, u, cap=args.cap)
    rep.results.update({"group": grp.name, "universe": u.name})
    if sw is None:
        rep.results["small"] = False
        return
    r = abelian_nonsmallness_report(grp, u, sw)
    rep.results.update({"small": True, "branch": r.branch, "refutes": r.refutes,
                        "diagnostics": r.diagnostics})
    if r.base_instance is not None:
        rep.witnesses.add_map(r.base_instance.e, "refuting_instance.e")
    if not r.refutes:
        rep.fail("non-smallness argument did not refute the candidate")


def cmd_axioms(args, rep: Report):
    seed = args.seed if args.seed is not None else 0
    r = run_axiom_suite(seed=seed, count=args.count, size=args.size)
    rep.bounds.update({"seed": seed, "count": args.count, "size": args.size})
    rep.results.update({"passed": r.passed, "failures": [list(f) for f in r.failures]})
    if r.failures:
        rep.status = EXIT_ASSERTION


KRAUS = {
    "theta": cmd_kraus_theta,
    "homogeneity": cmd_kraus_homogeneity,
    "pipeline": cmd_kraus_pipeline,
    "trunc-mono": cmd_kraus_trunc_mono,
    "nonsmall": cmd_kraus_nonsmall,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--cap", type=int, default=argparse.SUPPRESS, help="search bound (branch attempts)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                        help="add wall-clock timing (breaks byte-identical output)")

    p = argparse.ArgumentParser(prog="pathcat", parents=[common],
                                description="Exact checks for the groupoid path category.")
    p.add_argument("--version", action="version", version=f"pathcat {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="validate a document")
    c.add_argument("file")

    c = sub.add_parser("classify", parents=[common], help="classify a functor")
    c.add_argument("--map", required=True)
    c.add_argument("--name")
    c.add_argument("--class", dest="cls", required=True, choices=sorted(CLASS_NAMES))

    c = sub.add_parser("truncate", parents=[common], help="truncate a fibration")
    c.add_argument("--map", required=True)
    c.add_argument("--name")

    c = sub.add_parser("pathobj", parents=[common], help="build and check a path object")
    c.add_argument("--groupoid", required=True)
    c.add_argument("--emit", action="store_true", help="embed the path object in the report")

    c = sub.add_parser("lift", parents=[common], help="solve a lifting problem")
    c.add_argument("--square", required=True)

    c = sub.add_parser("univalence", parents=[common], help="check univalence instances")
    c.add_argument("--universe", required=True, help="finset:N or delooping:GROUP")
    c.add_argument("--base")
    c.add_argument("--method", choices=("auto", "search", "construction"), default="auto")
    c.add_argument("--path-method", choices=("factor", "arrow"), default="factor")
    c.add_argument("--witnesses", choices=("none", "first", "all"), default="first")

    k = sub.add_parser("kraus", parents=[common], help="homogeneity and the monomorphism argument")
    ks = k.add_subparsers(dest="kraus_command", required=True)
    c = ks.add_parser("theta", parents=[common])
    c.add_argument("--group", required=True)
    c.add_argument("--triple", help="comma separated element ids")
    c.add_argument("--emit", action="store_true")
    c = ks.add_parser("homogeneity", parents=[common])
    c.add_argument("--groupoid", required=True)
    c.add_argument("--emit", action="store_true")
    c = ks.add_parser("pipeline", parents=[common])
    c.add_argument("--universe", default="finset:2")
    c.add_argument("--map", help="cofibration m (default: discrete(2) into the interval)")
    c.add_argument("--name")
    c.add_argument("--section", help="map s back to the domain of m")
    c.add_argument("--point", default="0", help="object for the constant section")
    c = ks.add_parser("trunc-mono", parents=[common])
    c.add_argument("--group", required=True)
    c = ks.add_parser("nonsmall", parents=[common])
    c.add_argument("--group", required=True)
    c.add_argument("--universe")

    c = sub.add_parser("axioms", parents=[common], help="randomized axiom suite")
    c.add_argument("--size", type=int, default=4)
    c.add_argument("--count", type=int, default=200)
    return p


def run(argv: list[str]) -> tuple[Report, str]:
    """Parse ``argv``, run the command; returns the report and the output format."""
    args = build_parser().parse_args(argv)
    for name, default in (("format", "text"), ("cap", None), ("seed", None), ("timing", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    rep = Report(command=["pathcat", *argv])
    handler = KRAUS[args.kraus_command] if args.command == "kraus" else COMMANDS[args.command]
    t0 = time.perf_counter()
    try:
        handler(args, rep)
    except SearchBoundExceeded as e:
        rep.status = EXIT_BOUND
        rep.results["error"] = str(e)
    except InternalInconsistency as e:
        rep.status = EXIT_ASSERTION
        rep.results["error"] = f"internal inconsistency: {e}"
    except (FormatError, StructuralError, GroupError, DomainMismatch, PreconditionError, ValueError) as e:
        rep.status = EXIT_INPUT
        rep.results["error"] = f"{type(e).__name__}: {e}"
    except PathcatError as e:
        rep.status = EXIT_INPUT
        rep.results["error"] = f"{type(e).__name__}: {e}"
    if args.timing:
        rep.timing = {"seconds": round(time.perf_counter() - t0, 4)}
    return rep, args.format


COMMANDS = {
    "check": cmd_check,
    "classify": cmd_classify,
    "truncate": cmd_truncate,
    "pathobj": cmd_pathobj,
    "lift": cmd_lift,
    "univalence": cmd_univalence,
    "axioms": cmd_axioms,
}


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    rep, fmt = run(argv)
    sys.stdout.write(rep.render_json() if fmt == "json" else rep.render_text())
    return rep.status


if __name__ == "__main__":
    sys.exit(main())
