import random
from fractions import Fraction

import pytest

from indexcoding.bounds import (
    COMPLEMENT_CHROMATIC,
    BoundsReport,
    BoundEntry,
    LogBound,
    bounds_report,
    chromatic_lower_bound,
    clique_cover_bound,
    clique_cover_certificate,
    field_change_bound,
    identity_table,
    increasing_function_lower_bound,
    increasing_violations,
    power_table,
    register_increasing,
    registered,
)
from indexcoding.coloring import (
    chromatic_number,
    fractional_chromatic,
    fractional_chromatic_certificate,
    independence_number,
    is_proper_coloring,
)
from indexcoding.digraph import Digraph, UndirectedGraph, enumerate_digraphs, underlying
from indexcoding.errors import PropertyViolation, UnverifiedFunction
from indexcoding.hfamily import complete_digraph, kneser_graph
from indexcoding.lincode import is_valid_linear_code, lind

from oracles import bidirected_cycle, chromatic_oracle, cover_is_feasible, weights_are_feasible


def cycle_graph(n):
    return UndirectedGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def test_chromatic_number_matches_oracle():
    rng = random.Random(4)
    for _ in range(150):
        n = rng.randint(1, 7)
        U = UndirectedGraph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.5])
        chi, col = chromatic_number(U)
        assert chi == chromatic_oracle(U)
        assert is_proper_coloring(U, col) and max(col) + 1 == chi


def test_fractional_values():
    assert fractional_chromatic(cycle_graph(5)) == Fraction(5, 2)
    assert fractional_chromatic(cycle_graph(7)) == Fraction(7, 3)
    assert fractional_chromatic(cycle_graph(6)) == 2
    petersen = underlying(kneser_graph(5, 2))
    assert fractional_chromatic(petersen) == Fraction(5, 2)
    assert independence_number(petersen) == 4
    assert chromatic_number(cycle_graph(5))[0] == 3


def test_fractional_certificate_is_optimal():
    # a feasible cover and feasible vertex weights with equal totals prove optimality
    rng = random.Random(9)
    for _ in range(60):
        n = rng.randint(1, 8)
        U = UndirectedGraph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.45])
        value, cover, y = fractional_chromatic_certificate(U)
        assert cover_is_feasible(U, cover)
        assert weights_are_feasible(U, y)
        assert sum(cover.values()) == value == sum(y)


def test_log_bound_is_exact_integer():
    assert LogBound(5, 2).min_admissible_k == 3
    assert LogBound(4, 2).min_admissible_k == 2
    assert LogBound(1, 3).report_value(3) == 1
    assert chromatic_lower_bound(bidirected_cycle(5), 2).chi == 3


@pytest.mark.parametrize("q", [2, 3])
def test_sandwich_on_three_vertices(q):
    for G in enumerate_digraphs(3):
        k = lind(G, q, 3)[0]
        assert chromatic_lower_bound(G, q).report_value(3) <= k <= clique_cover_bound(G, q)


def test_clique_cover_certificate():
    for G in list(enumerate_digraphs(3))[::5]:
        cert = clique_cover_certificate(G)
        assert cert.code.length == cert.r == clique_cover_bound(G)
        assert is_valid_linear_code(G, cert.code.encoder) is not None


def test_registered_functions_are_increasing():
    graphs = [G for m in (1, 2, 3) for G in enumerate_digraphs(m)]
    for name in ("complement_chromatic", "complement_clique", "max_acyclic_induced"):
        assert increasing_violations(registered(name), graphs) == []


def test_registration_refuses_decreasing_function():
    with pytest.raises(PropertyViolation):
        register_increasing("arc_count", lambda G: G.num_arcs, verify_m=2)


def test_unregistered_function_is_refused():
    with pytest.raises(UnverifiedFunction):
        increasing_function_lower_bound(Digraph.empty(2), lambda G: G.m, identity_table(2))


def test_increasing_function_bound_is_sound():
    table = power_table(2, 4)
    for G in enumerate_digraphs(3):
        lb = increasing_function_lower_bound(G, COMPLEMENT_CHROMATIC, table)
        assert lb <= lind(G, 2, 3)[0]


def test_field_change_examples():
    fc = field_change_bound(complete_digraph(3), 2, 3)
    assert fc.value == 1 and fc.k == 1
    fc = field_change_bound(bidirected_cycle(4), 2, 3)
    assert fc.k == 2 and fc.value >= lind(bidirected_cycle(4), 3, 4)[0]


def test_report_and_invariant():
    rep = bounds_report(bidirected_cycle(5), [2, 3])
    data = rep.to_json()
    assert data["chi_complement"] == 3
    assert data["fractional_chi_complement"] == "5/2"
    assert [e["exact"] for e in data["entries"]] == [3, 3]
    broken = BoundsReport("x", 1, [2], 1, (0,), None, [BoundEntry(2, lower=3, upper=1)])
    with pytest.raises(PropertyViolation):
        broken.check()
