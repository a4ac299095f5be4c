import pytest

from indexcoding.digraph import is_biclique, parse_digraph, format_digraph, underlying
from indexcoding.errors import BadParameters, TooLarge
from indexcoding.hfamily import (
    build_hk,
    build_hk_bilinear,
    build_matrix_A,
    complete_digraph,
    explicit_code_hk,
    hk_vertex_count,
    kneser_graph,
)
from indexcoding.lincode import is_valid_linear_code

H22_LABELS = ["({1},{1})", "({1},{1,2})", "({2},{2})", "({2},{1,2})", "({1,2},{1})", "({1,2},{2})"]
H22_OUT = [[1, 3, 4], [0, 3, 4], [1, 3, 5], [1, 2, 5], [0, 2, 5], [0, 2, 4]]


def test_matrix_A_for_two_symbols():
    assert build_matrix_A(2).tolist() == [[1, 0, 1], [0, 1, 1], [1, 1, 0]]
    assert build_matrix_A(1).tolist() == [[1]]


def test_h22_reference_adjacency():
    hk = build_hk(2, 2)
    assert hk.graph.m == 6
    assert list(hk.graph.labels) == H22_LABELS
    assert [hk.graph.out_neighbors(v) for v in range(6)] == H22_OUT
    src = H22_LABELS.index("({1},{1})")
    dst = H22_LABELS.index("({2},{1,2})")
    assert hk.graph.has_arc(src, dst)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_subset_and_bilinear_builders_agree(k):
    a, b = build_hk(2, k), build_hk_bilinear(2, k)
    assert a.vertex_labels == b.vertex_labels
    assert a.graph == b.graph


@pytest.mark.parametrize("q,k", [(2, 3), (3, 2), (4, 2)])
def test_rows_and_columns_are_bicliques(q, k):
    hk = build_hk(q, k)
    by_u, by_v = {}, {}
    for i, (u, v) in enumerate(hk.vertex_labels):
        by_u.setdefault(u, []).append(i)
        by_v.setdefault(v, []).append(i)
    for group in list(by_u.values()) + list(by_v.values()):
        assert is_biclique(hk.graph, group)


@pytest.mark.parametrize("q,k", [(2, 1), (2, 3), (3, 2), (4, 2), (5, 2), (7, 2), (8, 2)])
def test_counts_and_explicit_code(q, k):
    hk = build_hk(q, k)
    assert hk.graph.m == hk_vertex_count(q, k) == (q**k - 1) // (q - 1) * q ** (k - 1)
    code = explicit_code_hk(q, k)
    assert code.length == k
    assert is_valid_linear_code(hk.graph, code.encoder) is not None


def test_text_output_round_trips():
    G = build_hk(3, 2).graph
    assert parse_digraph(format_digraph(G)) == G


def test_size_guards():
    with pytest.raises(BadParameters):
        build_hk(2, 0)
    with pytest.raises(TooLarge):
        build_hk(16, 3)


def test_petersen():
    P = kneser_graph(5, 2)
    U = underlying(P)
    assert U.m == 10 and len(U.edges()) == 15
    assert all(U.degree(v) == 3 for v in range(10))
    # girth 5: no triangles and no 4-cycles
    for a in range(10):
        nb = U.neighbors(a)
        assert not any(U.adj[b] >> c & 1 for b in nb for c in nb)
        for b in range(a + 1, 10):
            if not U.adj[a] >> b & 1:
                assert bin(U.adj[a] & U.adj[b]).count("1") <= 1


def test_complete_digraph():
    K = complete_digraph(3)
    assert K.num_arcs == 6
