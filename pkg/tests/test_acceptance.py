"""Acceptance criteria 1-10; the terminal summary prints one PASS/FAIL line each.

Run alone with ``pytest tests/test_acceptance.py`` (or ``python tests/test_acceptance.py``).
"""

import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

from indexcoding.bounds import chromatic_lower_bound, clique_cover_bound, field_change_bound
from indexcoding.coloring import chromatic_number, fractional_chromatic
from indexcoding.digraph import complement, digraph_code, enumerate_digraphs, underlying
from indexcoding.hfamily import build_hk, build_matrix_A, explicit_code_hk, hk_vertex_count
from indexcoding.homsearch import precedes, verify_homomorphism
from indexcoding.lincode import extract_homomorphism, is_valid_linear_code, lind, minrank, pad_code
from indexcoding.sweeps import blow_up, random_digraph
from indexcoding.translate import (
    group_code_from_linear,
    relabel_broadcast,
    translate_group,
    translate_linear,
    verify_group_code,
)

from oracles import bidirected_cycle

FIXTURES = Path(__file__).parent / "fixtures"
GRAPHS4 = list(enumerate_digraphs(4))
HK_INSTANCES = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (4, 2), (5, 2)]


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


@pytest.fixture(scope="session")
def lind4():
    """Exact lind_2 and lind_3 (with witness codes) of every 4-vertex digraph."""
    return {q: [lind(G, q, 4) for G in GRAPHS4] for q in (2, 3)}


@pytest.fixture(scope="session")
def equivalence_sweep():
    """Run both sides of the equivalence for m in {3, 4}, k in {1, 2}; keep the codes found."""
    rows = []
    with Timer() as t:
        for m in (3, 4):
            for k in (1, 2):
                hk = build_hk(2, k).graph
                for G in enumerate_digraphs(m):
                    found = lind(G, 2, k)
                    phi = precedes(G, hk)
                    rows.append((G, k, found, phi))
    return rows, t.elapsed


@pytest.mark.criterion(1, "H^2_2 and its matrix A match the reference adjacency")
def test_criterion_1_reference_adjacency():
    with Timer() as t:
        assert build_matrix_A(2).tolist() == [[1, 0, 1], [0, 1, 1], [1, 1, 0]]
        hk = build_hk(2, 2)
        G = hk.graph
        assert G.m == 6
        labels = list(G.labels)
        assert G.has_arc(labels.index("({1},{1})"), labels.index("({2},{1,2})"))
        expected = {
            "({1},{1})": ["({1},{1,2})", "({2},{1,2})", "({1,2},{1})"],
            "({1},{1,2})": ["({1},{1})", "({2},{1,2})", "({1,2},{1})"],
            "({2},{2})": ["({1},{1,2})", "({2},{1,2})", "({1,2},{2})"],
            "({2},{1,2})": ["({1},{1,2})", "({2},{2})", "({1,2},{2})"],
            "({1,2},{1})": ["({1},{1})", "({2},{2})", "({1,2},{2})"],
            "({1,2},{2})": ["({1},{1})", "({2},{2})", "({1,2},{1})"],
        }
        for v, name in enumerate(labels):
            assert sorted(labels[w] for w in G.out_neighbors(v)) == sorted(expected[name])
    assert t.elapsed < 1


@pytest.mark.criterion(2, "vertex counts of H^q_k")
def test_criterion_2_vertex_counts():
    with Timer() as t:
        for q, k in HK_INSTANCES:
            assert build_hk(q, k).graph.m == (q**k - 1) // (q - 1) * q ** (k - 1) == hk_vertex_count(q, k)
    assert t.elapsed < 10


@pytest.mark.criterion(3, "explicit length-k code for every H^q_k instance")
def test_criterion_3_explicit_codes():
    with Timer() as t:
        for q, k in HK_INSTANCES:
            code = explicit_code_hk(q, k)
            assert code.length == k
            assert is_valid_linear_code(build_hk(q, k).graph, code.encoder) is not None
    assert t.elapsed < 30


@pytest.mark.criterion(4, "code of length k exists iff G maps into H^2_k (m = 3, 4; k = 1, 2)")
def test_criterion_4_equivalence(equivalence_sweep):
    rows, elapsed = equivalence_sweep
    assert len(rows) == 2 * (64 + 4096)
    bad = [(digraph_code(G), k) for G, k, found, phi in rows if (found is None) != (phi is None)]
    assert bad == []
    assert elapsed < 300


@pytest.mark.criterion(5, "lind_2 equals minrank_2 on all 4-vertex digraphs")
def test_criterion_5_minrank(lind4):
    with Timer() as t:
        bad = [digraph_code(G) for G, (k, _) in zip(GRAPHS4, lind4[2]) if minrank(G, 2) != k]
    assert bad == []
    assert t.elapsed < 300


@pytest.mark.criterion(6, "extracted maps are certified and C_J classes partition [1:m]")
def test_criterion_6_extraction(equivalence_sweep):
    failures = 0
    checked = 0
    for G, k, found, _ in equivalence_sweep[0]:
        if found is None:
            continue
        # the search returns the shortest code; pad it to length k as well
        for code in {found[1], pad_code(found[1], k)}:
            ext = extract_homomorphism(G, code)
            hk = build_hk(2, code.length).graph
            ok = ext.certified and verify_homomorphism(complement(G), complement(hk), ext.map)
            members = [v for group in ext.classes.values() for v in group]
            ok = ok and sorted(members) == list(range(G.m))
            failures += not ok
            checked += 1
    assert checked > 0 and failures == 0


def _translation_triples(rng, count):
    triples = []
    while len(triples) < count:
        mode = len(triples) % 3
        if mode == 0:
            k = rng.choice([1, 2])
            H = build_hk(2, k).graph
            code_H = explicit_code_hk(2, k)
            G, phi = blow_up(H, rng.randint(1, 5), rng)
        elif mode == 1:
            q = rng.choice([2, 3, 4])
            H = random_digraph(rng.randint(1, 4), rng)
            code_H = lind(H, q, H.m)[1]
            G, phi = blow_up(H, rng.randint(1, 5), rng)
        else:
            q = rng.choice([2, 3])
            H = random_digraph(rng.randint(1, 4), rng)
            G = random_digraph(rng.randint(1, 5), rng, density=0.7)
            phi = precedes(G, H)
            if phi is None:
                continue
            code_H = lind(H, q, H.m)[1]
        assert verify_homomorphism(complement(G), complement(H), phi)
        triples.append((G, H, phi, code_H))
    return triples


@pytest.mark.criterion(7, "translation along homomorphisms keeps codes valid and lengths equal")
def test_criterion_7_translation():
    rng = random.Random(20261015)
    failures = 0
    for G, H, phi, code_H in _translation_triples(rng, 200):
        out = translate_linear(G, H, phi, code_H)
        if out.length != code_H.length or is_valid_linear_code(G, out.encoder) is None:
            failures += 1
    group_checks = 0
    for X in (2, 3):
        for G, H, phi, _ in _translation_triples(random.Random(X), 60):
            if G.m > 4:
                continue
            code_H = group_code_from_linear(H, lind(H, X, H.m)[1])
            words = sorted(set(code_H.encoder))
            variants = [code_H, relabel_broadcast(code_H, dict(zip(words, words[::-1])))]
            for c in variants:
                out = translate_group(G, H, phi, c)
                group_checks += 1
                if out.length != c.length or not verify_group_code(G, out):
                    failures += 1
    assert group_checks > 50
    assert failures == 0


@pytest.mark.criterion(8, "chromatic lower bound <= lind <= clique cover, with spot checks")
def test_criterion_8_sandwich(lind4):
    for q in (2, 3):
        for G, (k, _) in zip(GRAPHS4, lind4[q]):
            assert chromatic_lower_bound(G, q).report_value(G.m) <= k <= clique_cover_bound(G, q)
    C5 = bidirected_cycle(5)
    assert fractional_chromatic(underlying(complement(C5))) == fractional_chromatic(underlying(C5))
    assert str(fractional_chromatic(underlying(C5))) == "5/2"
    assert chromatic_number(underlying(C5))[0] == 3
    assert lind(C5, 2, 5)[0] == 3
    for k in (1, 2, 3):
        assert chromatic_number(underlying(complement(build_hk(2, k).graph)))[0] <= 2**k


@pytest.mark.criterion(9, "field-change bound from GF(2) to GF(3) is never below lind_3")
def test_criterion_9_field_change(lind4):
    with Timer() as t:
        violations = []
        for G, (k2, _), (k3, _) in zip(GRAPHS4, lind4[2], lind4[3]):
            if k2 > 2:
                continue
            fc = field_change_bound(G, 2, 3)
            if fc.value < k3:
                violations.append(digraph_code(G))
    assert violations == []
    assert t.elapsed < 600


def _cli(*args):
    proc = subprocess.run([sys.executable, "-m", "indexcoding.cli", *args], capture_output=True, check=True)
    return proc.stdout


@pytest.mark.criterion(10, "repeated CLI runs give byte-identical JSON")
def test_criterion_10_determinism():
    fixtures = sorted(str(p) for p in FIXTURES.iterdir())
    for argv in (["classify", "--m", "3", "--k", "1"], ["bounds", *fixtures, "--q", "2,3", "--exact"]):
        first, second = _cli(*argv), _cli(*argv)
        assert first and first == second


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
