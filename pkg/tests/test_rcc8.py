import itertools
import random

import pytest

from helpers import disc_composition, disc_relation, random_rcc8_atomic
from qstbox.qualnet import QualNetwork
from qstbox.rcc8 import (
    ATOMS, CONVERSE, UNIVERSAL, check_relation, compose, compose_rel, consistent,
    converse_rel, is_algebraically_closed, path_consistency,
)


@pytest.fixture(scope="module")
def disc_table():
    return disc_composition()


def test_identity_law():
    for a in ATOMS:
        assert compose("EQ", a) == {a}
        assert compose(a, "EQ") == {a}


def test_composition_converse_law():
    for a, b in itertools.product(ATOMS, repeat=2):
        assert converse_rel(compose(a, b)) == compose(CONVERSE[b], CONVERSE[a])


def test_converse_involution_on_random_relations():
    rng = random.Random(4)
    for _ in range(50):
        r = frozenset(rng.sample(ATOMS, rng.randint(0, 8)))
        assert converse_rel(converse_rel(r)) == r


def test_table_matches_disc_configurations(disc_table):
    # discs realise every RCC8 composition, so the sampled table must be exact
    for a, b in itertools.product(ATOMS, repeat=2):
        assert compose(a, b) == disc_table[(a, b)], (a, b)


@pytest.mark.parametrize("a,b,expected", [
    ("TPP", "TPP", {"TPP", "NTPP"}),
    ("NTPP", "NTPP", {"NTPP"}),
    ("DC", "DC", set(ATOMS)),
    ("EC", "NTPP", {"PO", "TPP", "NTPP"}),
    ("TPPi", "TPP", {"PO", "TPP", "TPPi", "EQ"}),
])
def test_composition_examples(a, b, expected):
    assert compose(a, b) == expected


def test_compose_rel_distributes():
    assert compose_rel({"TPP", "NTPP"}, {"NTPP"}) == {"NTPP"}
    assert compose_rel(set(), UNIVERSAL) == set()


def test_check_relation_rejects_unknown_atoms():
    with pytest.raises(ValueError):
        check_relation({"EC", "XX"})


def _net(*triples):
    net = QualNetwork(2)
    for u, v, rel in triples:
        net.add((u, v), rel)
    return net


def test_ec_ntpp_tpp_triangle_is_satisfiable():
    net = _net(("a", "b", {"EC"}), ("b", "c", {"NTPP"}), ("a", "c", {"TPP"}))
    sat, scenario = consistent(net)
    assert sat and is_algebraically_closed(scenario)


def test_tpp_ntpp_clash():
    net = _net(("a", "b", {"TPP"}), ("a", "b", {"NTPP"}))
    assert not consistent(net)[0]
    net = _net(("x", "y", {"TPP"}), ("y", "x", {"NTPPi"}))
    assert not consistent(net)[0]


def test_path_consistency_refines():
    net = _net(("a", "b", {"NTPP"}), ("b", "c", {"NTPP"}))
    ok, refined = path_consistency(net)
    assert ok and refined.get(("a", "c")) == {"NTPP"}


def test_path_consistency_detects_empty_triangle():
    net = _net(("a", "b", {"NTPP"}), ("b", "c", {"NTPP"}), ("a", "c", {"DC"}))
    assert not path_consistency(net)[0]


def test_consistent_agrees_with_path_consistency_on_atomic_networks():
    rng = random.Random(11)
    seen = set()
    for k in range(500):
        net = random_rcc8_atomic(rng, rng.randint(2, 5), planted_discs=k % 2 == 0)
        pc = path_consistency(net)[0]
        sat, scenario = consistent(net)
        assert sat == pc
        if k % 2 == 0:
            assert sat  # planted on discs
        if sat:
            assert is_algebraically_closed(scenario)
        seen.add(sat)
    assert seen == {True, False}


def test_disjunctive_scenario_refines_input():
    rng = random.Random(2)
    for _ in range(100):
        n = rng.randint(2, 5)
        discs = [(rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(n)]
        net = QualNetwork(2, range(n))
        for i, j in itertools.combinations(range(n), 2):
            extra = rng.sample(ATOMS, rng.randint(0, 3))
            net.add((i, j), {disc_relation(discs[i], discs[j]), *extra})
        sat, scenario = consistent(net)
        assert sat and scenario.is_atomic and is_algebraically_closed(scenario)
        for args, rel in net:
            assert scenario.get(args) <= rel


def test_scenario_is_complete():
    sat, scenario = consistent(_net(("a", "b", {"EC", "DC"}), ("c", "d", UNIVERSAL)))
    assert sat
    assert len(scenario) == 6


def test_not_closed_scenarios_are_rejected():
    bad = _net(("a", "b", {"NTPP"}), ("b", "c", {"NTPP"}), ("a", "c", {"DC"}))
    assert not is_algebraically_closed(bad)
