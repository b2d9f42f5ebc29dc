
import pytest

from oracles import left_cancellable
from pathcat.classifiers import (
    check_two_out_of_six,
    is_cofibration,
    is_equivalence,
    is_hproposition,
    is_isofibration,
    is_isomorphism,
    is_monomorphism,
    is_trivial_fibration,
    recheck,
    section_of_trivial_fibration,
)
from pathcat.constructions import truncate
from pathcat.corpus import map_corpus
from pathcat.errors import PreconditionError
from pathcat.groupoids import (
    GroupoidMap,
    compose_maps,
    constant_map,
    deloop_homomorphism,
    delooping,
    discrete,
    identity_map,
    interval,
    terminal,
    terminal_map,
)
from pathcat.groups import cyclic_group, trivial_group

Z2, Z3, Z4 = cyclic_group(2), cyclic_group(3), cyclic_group(4)
INCL = GroupoidMap(discrete(2), interval(), [0, 1], [0, 3])  # the two endpoints
CORPUS = map_corpus(seed=7, count=60)


def test_maps_into_terminal_are_fibrations():
    for g in (interval(), delooping(Z3), discrete(3)):
        assert is_isofibration(terminal_map(g))


def test_surjective_homomorphism_is_fibration():
    f = deloop_homomorphism(Z4, Z2, lambda x: x % 2)
    assert is_isofibration(f)


def test_endpoint_of_interval_is_not_fibration():
    f = constant_map(terminal(), interval(), 0)
    cert = is_isofibration(f)
    assert not cert
    assert cert.witness["unliftable"] == (0, 1)
    assert recheck(cert, f)


def test_equivalence_examples():
    assert is_equivalence(terminal_map(interval()))
    cert = is_equivalence(terminal_map(delooping(Z2), delooping(trivial_group())))
    assert not cert and cert.witness["reason"] == "not faithful"
    assert recheck(cert, terminal_map(delooping(Z2), delooping(trivial_group())))
    # the endpoint inclusion is not full: hom(0, 1) is empty upstairs
    cert = is_equivalence(INCL)
    assert not cert and cert.witness["reason"] == "not full"
    assert recheck(cert, INCL)


def test_truncation_map_classification():
    i = truncate(terminal_map(delooping(Z2))).i
    assert is_cofibration(i)
    mono = is_monomorphism(i)
    assert not mono and set(mono.witness["morphisms"]) == {0, 1}


def test_discrete_inclusion_is_monic_cofibration():
    assert is_cofibration(INCL) and is_monomorphism(INCL)


def test_truncated_leg_is_hproposition():
    fp = truncate(terminal_map(delooping(Z2))).f_prime
    assert is_hproposition(fp)


def test_hproposition_needs_fibration():
    with pytest.raises(PreconditionError):
        is_hproposition(constant_map(terminal(), interval(), 0))


def test_two_out_of_six_examples():
    b = delooping(Z3)
    r = check_two_out_of_six(identity_map(b), identity_map(b), identity_map(b))
    assert r.hypothesis_met and all(r.verdicts.values())
    g = terminal_map(interval())
    h = terminal_map(terminal(), delooping(trivial_group()))
    r = check_two_out_of_six(constant_map(terminal(), interval(), 0), g, h)
    assert r.hypothesis_met and len(r.verdicts) == 6 and all(r.verdicts.values())
    # with the endpoint inclusion g o f is not an equivalence, so nothing is claimed
    r = check_two_out_of_six(INCL, g, h)
    assert not r.hypothesis_met and r.holds
    f = terminal_map(delooping(Z2))
    r = check_two_out_of_six(f, identity_map(terminal()), identity_map(terminal()))
    assert not r.hypothesis_met and r.holds


@pytest.mark.parametrize("k", range(len(CORPUS)))
def test_trivial_fibration_is_fibration_and_equivalence(k):
    f = CORPUS[k]
    assert bool(is_trivial_fibration(f)) == (bool(is_isofibration(f)) and bool(is_equivalence(f)))


@pytest.mark.parametrize("k", range(len(CORPUS)))
def test_certificates_recheck(k):
    f = CORPUS[k]
    for cert in (is_isofibration(f), is_equivalence(f), is_cofibration(f), is_monomorphism(f)):
        assert recheck(cert, f)


@pytest.mark.parametrize("k", range(len(CORPUS)))
def test_monomorphism_matches_left_cancellation(k):
    f = CORPUS[k]
    orders = {f.domain.loop_orders() and max(f.domain.loop_orders()) or 1}
    probes = [terminal(), interval()] + [delooping(cyclic_group(n)) for n in range(2, max(orders) + 1)]
    assert bool(is_monomorphism(f)) == left_cancellable(f, probes)


def test_sections_of_trivial_fibrations():
    for f in CORPUS:
        if is_trivial_fibration(f):
            s = section_of_trivial_fibration(f)
            assert compose_maps(f, s).is_identity()
    with pytest.raises(PreconditionError):
        section_of_trivial_fibration(terminal_map(delooping(Z2)))


def test_isomorphisms_are_trivial_fibrations():
    b = delooping(Z3)
    inv = GroupoidMap(b, b, [0], [0, 2, 1])
    assert is_isomorphism(inv) and is_trivial_fibration(inv)
    swap = GroupoidMap(interval(), interval(), [1, 0], [3, 2, 1, 0])
    assert is_isomorphism(swap) and is_trivial_fibration(swap)
