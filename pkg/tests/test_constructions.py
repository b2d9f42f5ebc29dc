import numpy as np
import pytest

from oracles import isomorphic, naive_functors, pointed_path_count
from pathcat.classifiers import (
    is_cofibration,
    is_equivalence,
    is_full_and_faithful,
    is_hproposition,
    is_isofibration,
    is_isomorphism,
    is_trivial_fibration,
)
from pathcat.constructions import (
    coherent_path_object,
    delooping_universe,
    factor_we_fib,
    finset_universe,
    path_object,
    probe_catalog,
    pullback,
    truncate,
)
from pathcat.corpus import map_corpus
from pathcat.errors import DomainMismatch, PreconditionError
from pathcat.groupoids import (
    GroupoidMap,
    codiscrete,
    compose_maps,
    constant_map,
    deloop_homomorphism,
    delooping,
    discrete,
    identity_map,
    interval,
    product,
    terminal,
    terminal_map,
    validate_groupoid,
    validate_map,
)
from pathcat.groups import cyclic_group, symmetric_group, trivial_group

Z2, Z3, S3 = cyclic_group(2), cyclic_group(3), symmetric_group(3)
BZ2, BS3 = delooping(Z2), delooping(S3)


def hom_profile(g):
    """Sorted hom-set sizes over all ordered pairs, an isomorphism invariant."""
    counts = np.zeros((g.n_objects, g.n_objects), dtype=int)
    np.add.at(counts, (g.src, g.dst), 1)
    return sorted(counts.ravel().tolist())


# pullbacks


def test_pullback_of_projection_along_point_is_fibre():
    prod = product(BZ2, BZ2)
    pt = constant_map(terminal(), BZ2, "*")
    sq = pullback(prod.projections[0], pt)
    assert sq.certificate.valid
    assert isomorphic(sq.apex, BZ2)
    assert is_isofibration(sq.left)


def test_pullback_of_identity_along_identity():
    for g in (BZ2, interval(), codiscrete(3)):
        ident = identity_map(g)
        sq = pullback(ident, ident)
        assert sq.certificate.valid
        assert is_isomorphism(sq.left) and is_isomorphism(sq.top)


def test_pullback_against_terminal_is_product():
    f = terminal_map(BS3)
    g = terminal_map(discrete(2))
    sq = pullback(f, g)
    assert (sq.apex.n_objects, sq.apex.n_morphisms) == (2, 12)
    assert hom_profile(sq.apex) == [0, 0, 6, 6]
    assert sq.certificate.valid
    assert is_isofibration(sq.left)
    # on each fibre the top leg is an isomorphism onto B(S3)
    for y in range(2):
        idx = np.nonzero(sq.left.mor_map == y)[0]
        assert sorted(sq.top.mor_map[idx].tolist()) == list(range(6))


def test_pullback_rejects_non_fibration():
    f = constant_map(terminal(), interval(), 0)
    with pytest.raises(PreconditionError):
        pullback(f, identity_map(interval()))


def test_pullback_rejects_non_cospan():
    with pytest.raises(DomainMismatch):
        pullback(terminal_map(BZ2), identity_map(BZ2))


def test_pullback_commutes_and_left_leg_is_fibration_on_corpus():
    for f in map_corpus(seed=3, count=25, max_objects=3, max_hom=3):
        t = terminal_map(f.codomain)
        sq = pullback(t, terminal_map(f.domain), certify=False)
        assert sq.certificate.commutes
        fib = factor_we_fib(f).fib_part
        sq = pullback(fib, identity_map(f.codomain))
        assert sq.certificate.valid
        assert is_isofibration(sq.left)
        assert not validate_groupoid(sq.apex)


def test_probe_catalog_covers_loop_orders():
    names = [n for n, _ in probe_catalog(BS3)]
    assert names == ["1", "I", "BZ2", "BZ3"]


def test_pullback_of_trivial_fibration_is_trivial():
    t = product(BZ2, codiscrete(2)).projections[0]
    assert is_trivial_fibration(t)
    g = deloop_homomorphism(Z2, Z2, lambda x: 0)
    sq = pullback(t, g)
    assert sq.certificate.valid
    assert is_trivial_fibration(sq.left)


# path objects


def test_path_object_of_bz2():
    po = path_object(BZ2)
    assert po.total.n_objects == 2
    assert hom_profile(po.total) == [2, 2, 2, 2]
    assert po.check() == []
    assert is_equivalence(po.r)


def test_path_object_of_interval():
    po = path_object(interval())
    assert po.total.n_objects == 4
    assert hom_profile(po.total) == [1] * 16
    assert po.check() == []


@pytest.mark.parametrize("n", [0, 1, 3])
def test_path_object_of_discrete(n):
    po = path_object(discrete(n))
    assert (po.total.n_objects, po.total.n_morphisms) == (n, n)
    assert is_isomorphism(po.r)


def test_path_object_squares_commute():
    # every morphism (a, c): phi -> psi satisfies c o phi = psi o a
    b = product(BZ2, interval()).groupoid
    po = path_object(b)
    T = po.total
    for k in range(T.n_morphisms):
        phi = po.total.objects[T.src[k]]
        psi = po.total.objects[T.dst[k]]
        a = int(po.p0.mor_map[k])
        c = int(po.p1.mor_map[k])
        assert b.cmp(c, b.mor_index[phi]) == b.cmp(b.mor_index[psi], a)


def test_path_object_square_count_matches_enumeration():
    b = delooping(S3)
    po = path_object(b)
    m = b.n_morphisms
    naive = sum(
        1
        for phi in range(m) for a in range(m) for c in range(m)
        if b.src[a] == b.src[phi] and b.src[c] == b.dst[phi]
    )
    assert po.total.n_morphisms == naive == 216


def test_homotopy_map_lands_over_endpoints():
    from pathcat.search import iter_natural_isos

    f = deloop_homomorphism(S3, S3, lambda x: x)
    for eta in iter_natural_isos(f, f):
        h = path_object(BS3).homotopy_map(eta)
        assert not validate_map(h)
        po = path_object(BS3)
        assert compose_maps(po.p0, h) == f and compose_maps(po.p1, h) == f
        assert po.natural_iso(h).components.tolist() == eta.components.tolist()


# factorizations


def test_factor_discrete_to_point():
    f = terminal_map(discrete(2))
    fac = factor_we_fib(f)
    assert fac.middle.n_objects == 2
    assert fac.check() == []
    assert compose_maps(fac.fib_part, fac.we_part) == f


def test_factor_identity_parts_are_equivalences():
    f = identity_map(BS3)
    fac = factor_we_fib(f)
    assert is_equivalence(fac.we_part) and is_equivalence(fac.fib_part)


def test_factor_point_of_bz2():
    f = constant_map(terminal(), BZ2, "*")
    fac = factor_we_fib(f)
    mid = fac.middle
    assert mid.n_objects == 2
    assert hom_profile(mid) == [1, 1, 1, 1]  # codiscrete, in particular connected
    assert is_isofibration(fac.fib_part)
    assert fac.check() == []


def test_factor_we_part_sends_x_to_identity():
    f = deloop_homomorphism(Z3, S3, lambda x: [(0, 1, 2), (1, 2, 0), (2, 0, 1)][x])
    fac = factor_we_fib(f)
    for x in range(f.domain.n_objects):
        ox, beta = fac.middle.objects[fac.we_part.obj_map[x]]
        assert ox == f.domain.objects[x]
        assert beta == (0, 1, 2)


def test_factor_on_corpus():
    for f in map_corpus(seed=11, count=40):
        fac = factor_we_fib(f)
        assert fac.check() == []
        assert not validate_groupoid(fac.middle)


# truncations


def test_truncate_bz2_to_point():
    i, fp, tr = truncate(terminal_map(BZ2))
    assert isomorphic(tr, terminal())
    assert i.mor_map.tolist() == [0, 0]


def test_truncate_identity():
    f = identity_map(BS3)
    i, fp, tr = truncate(f)
    assert is_isomorphism(i) and is_isomorphism(fp)
    assert compose_maps(fp, i) == f


def test_truncate_discrete_to_point_is_interval():
    i, fp, tr = truncate(terminal_map(discrete(2)))
    assert isomorphic(tr, interval())


def test_truncate_rejects_non_fibration():
    with pytest.raises(PreconditionError):
        truncate(constant_map(terminal(), interval(), 0))


def test_truncate_on_corpus():
    for f in map_corpus(seed=5, count=40):
        fib = factor_we_fib(f).fib_part
        i, fp, tr = truncate(fib)
        assert compose_maps(fp, i) == fib
        assert is_cofibration(i)
        assert i.domain.n_objects == tr.n_objects
        assert is_full_and_faithful(fp)
        assert is_hproposition(fp)
        # truncating again changes nothing up to isomorphism
        i2, fp2, tr2 = truncate(fp)
        assert is_isomorphism(i2)
        assert hom_profile(tr2) == hom_profile(tr)


# universes


def test_finset_universe_sizes():
    u0, u1, u2 = finset_universe(0), finset_universe(1), finset_universe(2)
    assert (u0.base_part.n_objects, u0.small_part.n_objects) == (1, 0)
    assert (u1.base_part.n_objects, u1.small_part.n_objects) == (2, 1)
    assert u2.base_part.n_objects == 3 and u2.small_part.n_objects == 3
    U = u2.base_part
    autos = [int(np.sum((U.src == k) & (U.dst == k))) for k in range(3)]
    assert autos == [1, 1, 2]
    for u in (u0, u1, u2, finset_universe(3)):
        assert is_isofibration(u.projection)
        assert u.check() == []


def test_finset_universe_morphisms_preserve_points():
    u = finset_universe(3)
    Ud = u.small_part
    for k, (x, sigma) in enumerate(Ud.morphisms):
        assert Ud.objects[Ud.src[k]] == (len(sigma), x)
        assert Ud.objects[Ud.dst[k]] == (len(sigma), sigma[x])


def test_delooping_universe_shapes():
    for grp, n in ((trivial_group(), 1), (S3, 6), (Z2, 2)):
        u = delooping_universe(grp)
        assert (u.base_part.n_objects, u.base_part.n_morphisms) == (1, 1)
        assert (u.small_part.n_objects, u.small_part.n_morphisms) == (1, n)
        assert is_isofibration(u.projection)


def test_coherent_path_delooping_s3():
    u = delooping_universe(S3)
    arrow = u.coherent("arrow")
    assert arrow.total.n_objects == 6
    assert arrow.base.total.n_objects == 1
    factor = u.coherent("factor")
    # the mapping path groupoid is larger but equivalent to the arrow groupoid
    assert factor.total.n_objects == 36
    assert is_equivalence(factor.from_arrow)


def test_coherent_path_finset_one_is_contractible():
    u = coherent_path_object(finset_universe(1))
    cp = u.coherent_path
    assert is_isomorphism(cp.comparison)
    assert cp.total.n_objects == 1


@pytest.mark.parametrize("n", [2, 3])
def test_coherent_path_finset_object_count(n):
    u = coherent_path_object(finset_universe(n))
    assert u.coherent_path.total.n_objects == pointed_path_count(n)
    assert u.check() == []


@pytest.mark.parametrize("method", ["factor", "arrow"])
def test_coherent_path_invariants(method):
    for u in (finset_universe(2), delooping_universe(Z2), delooping_universe(S3)):
        cp = u.coherent(method)
        assert is_isofibration(cp.to_base)
        assert is_isofibration(cp.comparison)
        assert u.check() == []


def test_coherent_path_rejects_unknown_method():
    with pytest.raises(ValueError):
        coherent_path_object(finset_universe(1), method="cylinder")


def test_naive_oracle_agrees_on_path_object_of_interval():
    po = path_object(interval())
    # every functor 1 -> P(I) is a square; there are as many as objects
    assert len(naive_functors(terminal(), po.total)) == 4
    assert isinstance(po.r, GroupoidMap)
