import random

import pytest

from pathcat.classifiers import is_cofibration, is_equivalence, is_monomorphism
from pathcat.constructions import delooping_universe, finset_universe
from pathcat.corpus import random_functor, random_groupoid
from pathcat.errors import PreconditionError, UnivalenceFailure
from pathcat.groupoids import (
    GroupoidMap,
    NaturalIso,
    compose_maps,
    constant_map,
    delooping,
    discrete,
    identity_map,
    interval,
    terminal,
    validate_natural_iso,
)
from pathcat.groups import (
    abelian_groups_up_to,
    cyclic_group,
    dihedral_group,
    klein_four,
    symmetric_group,
    trivial_group,
)
from pathcat.kraus import (
    abelian_nonsmallness_report,
    abelian_theta,
    kraus_main,
    pointed_section,
    rectangle_instance,
    search_homogeneity,
    theta_value,
    truncation_mono_check,
    u_homogenize,
)
from pathcat.univalence import smallness_witness

Z2, Z3, S3 = cyclic_group(2), cyclic_group(3), symmetric_group(3)
I = interval()
INCL = GroupoidMap(discrete(2), I, [0, 1], [0, 3])
SWAP = (1, 0)


# theta


def test_theta_values():
    assert theta_value(abelian_theta(Z2), (1, 0, 1)) == (1, 0, 0)
    assert theta_value(abelian_theta(Z3), (1, 2, 1)) == (1, 2, 2)


@pytest.mark.parametrize("grp", abelian_groups_up_to(8), ids=lambda g: g.name)
def test_theta_on_abelian_corpus(grp):
    hw = abelian_theta(grp)
    e = grp.identity
    assert theta_value(hw, (e, e, e)) == (e, e, e)
    assert hw.check() == []
    assert hw.notes["automorphism"] and hw.notes["over_base"] and hw.notes["theta_s0_eq_s1"]
    assert compose_maps(hw.e, hw.s0) == hw.s1
    assert len(set(hw.e.mor_map.tolist())) == hw.cube.groupoid.n_morphisms
    # the symmetric equation only survives for the trivial group
    assert hw.notes["theta_s0_eq_theta_s1"] == (grp.order == 1)


def test_theta_rejects_nonabelian():
    with pytest.raises(PreconditionError):
        abelian_theta(S3)


# homogeneity search


def test_search_homogeneity_terminal():
    hw = search_homogeneity(terminal())
    assert hw.e.is_identity()


def test_search_homogeneity_discrete_two():
    hw = search_homogeneity(discrete(2))
    assert hw is not None and hw.check() == []
    C = hw.cube.groupoid
    # the third coordinate of (a, b, a) goes to b
    for x, (a, b, c) in enumerate(C.objects):
        if a == c:
            assert C.objects[hw.e.obj_map[x]] == (a, b, b)


@pytest.mark.parametrize("grp", [Z2, Z3, cyclic_group(4), klein_four()], ids=lambda g: g.name)
def test_search_homogeneity_agrees_on_abelian_deloopings(grp):
    hw = search_homogeneity(delooping(grp))
    assert hw is not None and hw.check() == []
    assert is_equivalence(hw.e)


def test_search_homogeneity_bs3_finds_nothing():
    # not a claim from the literature, only what exhaustive search reports
    assert search_homogeneity(delooping(S3)) is None


# U-homogeneity


def test_u_homogenize_discrete_two():
    u = finset_universe(2)
    A = discrete(2)
    sw = smallness_witness(A, u)
    uhw = u_homogenize(search_homogeneity(A), sw, u)
    assert uhw.check() == []
    sq = uhw.square.groupoid
    for x, (a, b) in enumerate(sq.objects):
        x_dot = u.small_part.morphisms[uhw.homotopy.components[x]]
        _, sigma = x_dot
        assert sigma == ((0, 1) if a == b else SWAP)


def test_u_homogenize_terminal():
    u = finset_universe(1)
    sw = smallness_witness(terminal(), u)
    uhw = u_homogenize(search_homogeneity(terminal()), sw, u)
    assert uhw.homotopy.source == uhw.homotopy.target
    assert uhw.homotopy == NaturalIso.identity(uhw.homotopy.source)


def test_u_homogenize_fails_for_abelian_delooping():
    u = delooping_universe(Z2)
    sw = smallness_witness(delooping(Z2), u)
    with pytest.raises(UnivalenceFailure) as info:
        u_homogenize(abelian_theta(Z2), sw, u)
    assert info.value.instance is not None
    assert info.value.instance.check() == []


def test_rectangle_instance_is_a_pullback():
    u = delooping_universe(Z3)
    sw = smallness_witness(delooping(Z3), u)
    inst = rectangle_instance(abelian_theta(Z3), sw, u)
    assert inst.wa.square.certificate.valid
    assert inst.check() == []


# the monomorphism pipeline


@pytest.fixture(scope="module")
def discrete_pipeline():
    u = finset_universe(2)
    A = discrete(2)
    sw = smallness_witness(A, u)
    uhw = u_homogenize(search_homogeneity(A), sw, u)
    return u, sw, uhw


def test_kraus_main_interval_section_at_zero(discrete_pipeline):
    u, sw, uhw = discrete_pipeline
    s = constant_map(I, discrete(2), 0)
    cert = kraus_main(uhw, sw, INCL, s)
    assert cert.strict and cert.iota_monic and cert.m_monic
    iso = u.small_part.morphisms[cert.j.mor_map[1]]
    assert iso[1] == SWAP


def test_kraus_main_section_at_one_gives_same_j(discrete_pipeline):
    u, sw, uhw = discrete_pipeline
    c0 = kraus_main(uhw, sw, INCL, constant_map(I, discrete(2), 0))
    c1 = kraus_main(uhw, sw, INCL, constant_map(I, discrete(2), 1))
    assert c1.strict and c1.m_monic
    # j is forced by j o m = iota, only the filler into the path object moves
    assert c0.j == c1.j
    assert c0.realignment.filler != c1.realignment.filler


def test_kraus_main_identity(discrete_pipeline):
    u, sw, uhw = discrete_pipeline
    A = discrete(2)
    cert = kraus_main(uhw, sw, identity_map(A), identity_map(A))
    assert cert.j == sw.iota and cert.m_monic


def test_kraus_main_rejects_non_cofibration(discrete_pipeline):
    u, sw, uhw = discrete_pipeline
    m = GroupoidMap(discrete(2), discrete(1), [0, 0], [0, 0])
    with pytest.raises(PreconditionError):
        kraus_main(uhw, sw, m, constant_map(discrete(1), discrete(2), 0))


@pytest.mark.parametrize("seed", range(15))
def test_kraus_main_never_contradicts_mono_check(seed, discrete_pipeline):
    u, sw, uhw = discrete_pipeline
    rng = random.Random(seed)
    A = discrete(2)
    B = random_groupoid(rng, 4, 4)
    if B.n_objects < 2:
        return
    targets = rng.sample(range(B.n_objects), 2)
    m = random_functor(rng, A, B, fixed_objects={0: targets[0], 1: targets[1]})
    s = random_functor(rng, B, A)
    assert is_cofibration(m)
    cert = kraus_main(uhw, sw, m, s)
    assert cert.strict
    assert cert.m_monic and bool(is_monomorphism(m))


def test_pointed_section_feeds_pipeline(discrete_pipeline):
    u, sw, uhw = discrete_pipeline
    s = pointed_section(discrete(2), I, 1)
    assert kraus_main(uhw, sw, INCL, s).m_monic


# truncation of deloopings


def test_truncation_mono_examples():
    r = truncation_mono_check(trivial_group())
    assert r.monic and r.truncation_isomorphism
    r = truncation_mono_check(Z2)
    assert not r.monic and r.collapsed == ((1, 0),)
    assert not truncation_mono_check(S3).monic


@pytest.mark.parametrize(
    "grp", abelian_groups_up_to(8) + [S3, dihedral_group(4)], ids=lambda g: g.name
)
def test_truncation_mono_matches_triviality(grp):
    r = truncation_mono_check(grp)
    assert r.monic == (grp.order == 1)
    assert r.consistent
    assert len(r.collapsed) == grp.order - 1


# non-smallness


def test_nonsmall_refutes_delooping_universe():
    u = delooping_universe(Z2)
    sw = smallness_witness(delooping(Z2), u)
    rep = abelian_nonsmallness_report(Z2, u, sw)
    assert rep.branch == "refutation" and rep.refutes
    base = rep.base_instance
    left, top, e = base.wa.fibration.mor_map, base.i.mor_map, base.e.mor_map
    # the twist (c, x) -> (c, c + x)
    assert all(left[e[k]] == left[k] and top[e[k]] == (left[k] + top[k]) % 2 for k in range(len(e)))


def test_nonsmall_contradiction_with_asserted_witness():
    u = delooping_universe(Z2)
    sw = smallness_witness(delooping(Z2), u)

    def asserted(inst):
        # claims the identity component works, without checking naturality
        je = compose_maps(inst.j, inst.e)
        return NaturalIso(je, inst.i, [0] * je.domain.n_objects)

    rep = abelian_nonsmallness_report(Z2, u, sw, oracle=asserted)
    assert rep.branch == "contradiction"
    assert rep.claimed_monic is True and rep.observed_monic is False
    assert rep.refutes
    assert rep.diagnostics


def test_asserted_witness_is_not_natural():
    u = delooping_universe(Z2)
    sw = smallness_witness(delooping(Z2), u)
    inst = rectangle_instance(abelian_theta(Z2), sw, u)
    je = compose_maps(inst.j, inst.e)
    assert validate_natural_iso(NaturalIso(je, inst.i, [0]))


def test_nonsmall_needs_nontrivial_group():
    u = delooping_universe(trivial_group())
    sw = smallness_witness(terminal(), u)
    with pytest.raises(PreconditionError):
        abelian_nonsmallness_report(trivial_group(), u, sw)
