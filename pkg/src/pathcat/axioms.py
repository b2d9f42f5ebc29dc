"""Randomized sweep over the path-category axioms for groupoids."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .classifiers import (
    check_two_out_of_six,
    is_equivalence,
    is_hproposition,
    is_isofibration,
    is_trivial_fibration,
    section_of_trivial_fibration,
)
from .constructions import factor_we_fib, path_object, pullback, truncate
from .corpus import random_functor, random_groupoid
from .groupoids import (
    NaturalIso,
    codiscrete,
    compose_maps,
    constant_map,
    identity_map,
    pairing,
    product,
    validate_natural_iso,
)
from .search import find_natural_iso

CHECKS = (
    "path object",
    "factorization",
    "truncation",
    "trivial fibration pullback",
    "section",
    "two out of six",
    "homotopy equivalence relation",
    "homotopy congruence",
)


@dataclass
class AxiomReport:
    seed: int
    count: int
    size: int
    passed: dict = field(default_factory=lambda: {c: 0 for c in CHECKS})
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, check: str, ok: bool, sample: int, detail: str = ""):
        if ok:
            self.passed[check] += 1
        else:
            self.failures.append((check, sample, detail))


def _random_trivial_fibration(rng, z, size):
    """A trivial fibration onto ``z``: a projection off a codiscrete factor or ``p0``."""
    if rng.random() < 0.5:
        k = rng.randint(1, max(1, min(3, size)))
        prod = product(z, codiscrete(k))
        return prod.projections[0]
    return path_object(z).p0


def _random_equivalence(rng, a, size):
    """An equivalence out of ``a`` that keeps the object count within ``size``."""
    choice = rng.randrange(3)
    if choice == 1:
        for _ in range(5):
            f = random_functor(rng, a, a)
            if f is not None and is_equivalence(f, False):
                return f
    if choice == 2 and 0 < 2 * a.n_objects <= size:
        prod = product(a, codiscrete(2))
        return pairing(prod, identity_map(a), constant_map(a, codiscrete(2), 0))
    return identity_map(a)


def _chain(rng, size):
    """Composable ``f, g, h``; equivalences most of the time so 2-out-of-6 is not vacuous."""
    a = random_groupoid(rng, size, 4)
    maps = []
    cur = a
    for _ in range(3):
        if rng.random() < 0.75:
            f = _random_equivalence(rng, cur, size)
        else:
            f = random_functor(rng, cur, random_groupoid(rng, size, 4)) or identity_map(cur)
        maps.append(f)
        cur = f.codomain
    return maps


def _homotopy_checks(report, rng, sample, size):
    a = random_groupoid(rng, size, 4)
    b = random_groupoid(rng, size, 4)
    fs = [random_functor(rng, a, b) for _ in range(3)]
    if any(f is None for f in fs):
        return
    f, g, h = fs
    refl = NaturalIso.identity(f)
    ok = not validate_natural_iso(refl)
    fg, gh = find_natural_iso(f, g), find_natural_iso(g, h)
    gf = find_natural_iso(g, f)
    ok &= (fg is None) == (gf is None)
    if fg is not None:
        ok &= not validate_natural_iso(fg.inverse())
    if fg is not None and gh is not None:
        fh = fg.then(gh)
        ok &= not validate_natural_iso(fh) and find_natural_iso(f, h) is not None
    report.record("homotopy equivalence relation", ok, sample)
    # congruence: pre- and postcomposition preserve homotopy
    c = random_groupoid(rng, size, 4)
    k = random_functor(rng, b, c)
    l = random_functor(rng, random_groupoid(rng, size, 4), a)
    ok = True
    if fg is not None:
        if k is not None:
            post = fg.postcompose(k)
            ok &= not validate_natural_iso(post) and post.source == compose_maps(k, f)
        if l is not None:
            pre = fg.whisker(l)
            ok &= not validate_natural_iso(pre) and pre.target == compose_maps(g, l)
    report.record("homotopy congruence", ok, sample)


def run_axiom_suite(seed: int = 0, count: int = 200, size: int = 4) -> AxiomReport:
    """Check the axioms on ``count`` seeded random samples with at most ``size`` objects."""
    rng = random.Random(seed)
    report = AxiomReport(seed, count, size)
    for sample in range(count):
        b = random_groupoid(rng, size, 4)
        po = path_object(b)
        bad = po.check()
        report.record("path object", not bad, sample, ", ".join(bad))

        f = random_functor(rng, random_groupoid(rng, size, 4), b)
        if f is not None:
            bad = factor_we_fib(f).check()
            report.record("factorization", not bad, sample, ", ".join(bad))
            fib = factor_we_fib(f).fib_part
            i, fp, _ = truncate(fib)
            ok = compose_maps(fp, i) == fib and bool(is_hproposition(fp))
            report.record("truncation", ok, sample)

        t = _random_trivial_fibration(rng, b, size)
        g = random_functor(rng, random_groupoid(rng, size, 4), b)
        if g is not None:
            sq = pullback(t, g, certify=sample % 10 == 0)
            ok = bool(is_trivial_fibration(sq.left, False)) and sq.certificate.commutes
            if sq.certificate.probes:
                ok &= sq.certificate.valid
            report.record("trivial fibration pullback", ok, sample)

        s = section_of_trivial_fibration(t)
        report.record("section", compose_maps(t, s).is_identity(), sample)

        f1, g1, h1 = _chain(rng, size)
        rep = check_two_out_of_six(f1, g1, h1)
        report.record("two out of six", rep.holds, sample, repr(rep.verdicts))

        _homotopy_checks(report, rng, sample, size)
    return report

