"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` (the lines are printed even
without ``-s``) or directly with ``python tests/test_acceptance.py``.
"""

import io
import itertools
import random
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from helpers import (  # noqa: E402
    CORPUS, brute_force_sat, planted_network, random_cyct_network, random_rcc8_atomic,
    random_tbox, sampling_sat,
)
from qstbox import cyct, rcc8  # noqa: E402
from qstbox.allen import (  # noqa: E402
    PARTITION_ATOMS, PUBLISHED_TABLE, AllenAtom, derived_symbols, errata, partition_of,
    translate_atom,
)
from qstbox.cli import main  # noqa: E402
from qstbox.intervals import NEG_INF, interval  # noqa: E402
from qstbox.qualnet import QualNetwork  # noqa: E402
from qstbox.reasoner import decide  # noqa: E402
from qstbox.stp import StpNetwork, check_assignment, classify_pair, closure, extract_solution  # noqa: E402
from qstbox.tbox import parse_tbox  # noqa: E402
from qstbox.witness import verify_witness  # noqa: E402


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
        assert ok, detail
    return emit


def test_criterion_1_moving_scene_unsat(report):
    out = io.StringIO()
    start = time.perf_counter()
    sys.stdout, saved = out, sys.stdout
    try:
        code = main(["check", str(CORPUS / "example1.tbox")])
    finally:
        sys.stdout = saved
    elapsed = time.perf_counter() - start
    lines = out.getvalue().splitlines()
    ok = code == 1 and lines[0] == "UNSAT" and \
        lines[1] == "conflict: spatial conflict C1/C3 on (g1,g3)" and elapsed < 1.0
    report(1, ok, f"{lines[1] if len(lines) > 1 else lines} in {elapsed:.3f}s")


def test_criterion_2_modified_scene_sat(report):
    start = time.perf_counter()
    t = parse_tbox((CORPUS / "example1-tpp.tbox").read_text())
    v = decide(t)
    good = v.sat and verify_witness(t, v.witness)
    elapsed = time.perf_counter() - start
    report(2, good and elapsed < 1.0, f"SAT={v.sat}, witness verified={good}, {elapsed:.3f}s")


def test_criterion_3_translation_table(report):
    agree = sum(derived_symbols(a) == PUBLISHED_TABLE[a] for a in AllenAtom)
    flagged = {a.value for a, _, _ in errata()}
    converse_ok = all(translate_atom(a.converse) == translate_atom(a).converse() for a in AllenAtom)
    ok = agree == 11 and flagged == {"oi", "eq"} and converse_ok
    report(3, ok, f"{agree}/13 agree, errata {sorted(flagged)}, converse law {converse_ok}")


def test_criterion_4_partition_laws(report):
    blocks = list(PARTITION_ATOMS.values())
    jepd = all(sum(a in b for b in blocks) == 1 for a in AllenAtom)
    single = []
    for a in AllenAtom:
        net = StpNetwork().add_interval("I").add_interval("J").add_role("I", "J", translate_atom(a))
        ok, minimal = closure(net)
        single.append(ok and classify_pair(minimal, "I", "J") == {partition_of(a)})
    report(4, jepd and all(single), f"JEPD={jepd}, classify_pair exact on {sum(single)}/13 atoms")


def _zero_cycle_instance(rng):
    net, values = planted_network(rng, rng.randint(2, 12))
    u, v, w = rng.sample(list(values), 3)
    a = values[v] - values[u]
    b = values[w] - values[v]
    # the cycle u -> v -> w -> u sums to exactly zero with one strict edge
    net.constrain(u, v, interval(NEG_INF, a))
    net.constrain(v, w, interval(NEG_INF, b))
    net.constrain(w, u, interval(NEG_INF, -a - b, hi_strict=True))
    return net


def test_criterion_5_stp_solver(report):
    rng = random.Random(2024)
    planted_ok = idempotent = 0
    for _ in range(1000):
        net, values = planted_network(rng, rng.randint(1, 12))
        ok, minimal = closure(net)
        if ok and check_assignment(net, extract_solution(minimal)):
            planted_ok += 1
        again_ok, again = closure(minimal)
        idempotent += again_ok and again == minimal
    rejected = sum(not closure(_zero_cycle_instance(rng))[0] for _ in range(100))
    ok = planted_ok == 1000 and idempotent == 1000 and rejected == 100
    report(5, ok, f"planted {planted_ok}/1000 solved, idempotent {idempotent}/1000, "
                  f"strict zero-cycles rejected {rejected}/100")


def test_criterion_6_rcc8(report):
    A = rcc8.ATOMS
    identity = all(rcc8.compose("EQ", a) == {a} == rcc8.compose(a, "EQ") for a in A)
    converse = all(rcc8.converse_rel(rcc8.compose(a, b))
                   == rcc8.compose(rcc8.CONVERSE[b], rcc8.CONVERSE[a])
                   for a, b in itertools.product(A, repeat=2))
    rng = random.Random(6)
    agree = 0
    for k in range(500):
        net = random_rcc8_atomic(rng, rng.randint(2, 5), planted_discs=k % 2 == 0)
        agree += rcc8.consistent(net)[0] == rcc8.path_consistency(net)[0]
    tri = QualNetwork(2).add(("a", "b"), {"EC"}).add(("b", "c"), {"NTPP"}).add(("a", "c"), {"TPP"})
    clash = QualNetwork(2).add(("a", "b"), {"TPP"}).add(("b", "a"), {"NTPPi"})
    tri_ok = rcc8.consistent(tri)[0]
    clash_ok = not rcc8.consistent(clash)[0]
    ok = identity and converse and agree == 500 and tri_ok and clash_ok
    report(6, ok, f"identity {identity}, converse {converse}, consistent=PC on {agree}/500, "
                  f"triangle sat {tri_ok}, clash unsat {clash_ok}")


def test_criterion_7_cyct(report):
    n_atoms = len(cyct.realizable_atoms())
    rng = random.Random(7)
    nprng = np.random.default_rng(7)
    disagree = 0
    for _ in range(200):
        net = random_cyct_network(rng, rng.randint(1, 4))
        sat, placement = cyct.consistent(net)
        if sat and not cyct.placement_satisfies(net, placement):
            disagree += 1
        elif not sat and sampling_sat(net, nprng, 100_000):
            disagree += 1
    report(7, n_atoms == 24 and disagree == 0,
           f"{n_atoms} atoms, {disagree} disagreements with sampling on 200 networks")


def test_criterion_8_reasoner_vs_oracle(report):
    rng = random.Random(8)
    start = time.perf_counter()
    disagree = bad_witness = 0
    for _ in range(500):
        t = random_tbox(rng)
        v = decide(t)
        disagree += v.sat != brute_force_sat(t)
        bad_witness += v.sat and not verify_witness(t, v.witness)
    elapsed = time.perf_counter() - start
    report(8, disagree == 0 and bad_witness == 0,
           f"{disagree} disagreements, {bad_witness} bad witnesses on 500 TBoxes in {elapsed:.1f}s")


def test_criterion_9_homogeneity_chain(report):
    t = parse_tbox((CORPUS / "chain.tbox").read_text())
    v = decide(t)
    ok = not v.sat and v.conflict.stage == "spatial"
    report(9, ok, f"chain instance {'UNSAT' if not v.sat else 'SAT'}: {v.conflict}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
