"""The universal digraphs H^q_k and other generator families.

Vectors of GF(q)^k are ordered as base-q counters with coordinate 0 least
significant; for q = 2 a vector is the indicator of a subset of ``[1:k]``
(coordinate ``j`` stands for element ``j + 1``), so subsets come in
binary-counter order ``{1}, {2}, {1,2}, {3}, ...``.

Vertices of H^q_k are pairs ``(u, v)`` with ``u`` a projective point
(first nonzero coordinate 1) and ``<u, v> = 1``, ordered by ``u`` then ``v``.
There is an arc ``(u, v) -> (u', v')`` iff ``<u, v'> != 0``.  Over GF(2)
this is the pair ``(I, J)`` with ``|I & J|`` odd and arcs given by the
parity matrix ``A``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .digraph import Digraph
from .errors import BadParameters, TooLarge
from .field import FieldMatrix, dot, make_field, projective_points, vectors
from .lincode import LinearCode, decoder_from_alpha

MAX_HK_VERTICES = 2000
MAX_A_K = 5
_DIGITS = "0123456789abcdef"


def hk_vertex_count(q: int, k: int) -> int:
    return (q**k - 1) // (q - 1) * q ** (k - 1)


def nonempty_subsets(k: int) -> list[frozenset[int]]:
    """Non-empty subsets of ``[1:k]`` in binary-counter order."""
    return [frozenset(j + 1 for j in range(k) if code >> j & 1) for code in range(1, 1 << k)]


def format_subset(s) -> str:
    return "{" + ",".join(str(x) for x in sorted(s)) + "}"


def _indicator(s, k: int) -> tuple[int, ...]:
    return tuple(int(j + 1 in s) for j in range(k))


def build_matrix_A(k: int) -> FieldMatrix:
    """Binary matrix with ``A[I][J] = 1`` iff ``|I & J|`` is odd."""
    if not 1 <= k <= MAX_A_K:
        raise TooLarge(f"matrix A is built for 1 <= k <= {MAX_A_K}, got {k}")
    subsets = nonempty_subsets(k)
    # row I is the xor of the rows of B (indicator columns) indexed by I
    B = [[int(i in J) for J in subsets] for i in range(1, k + 1)]
    rows = []
    for I in subsets:
        row = [0] * len(subsets)
        for i in I:
            row = [a ^ b for a, b in zip(row, B[i - 1])]
        rows.append(row)
    return FieldMatrix.from_rows(make_field(2), rows)


@dataclass(frozen=True)
class HkGraph:
    q: int
    k: int
    graph: Digraph
    # (u, v) vector pair per vertex
    vertex_labels: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    def __post_init__(self):
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.vertex_labels)})

    def index_of(self, u: Sequence[int], v: Sequence[int]) -> int:
        return self._index[(tuple(u), tuple(v))]

    def subset_label(self, i: int) -> tuple[frozenset[int], frozenset[int]]:
        """The ``(I, J)`` pair of vertex i (GF(2) only)."""
        if self.q != 2:
            raise ValueError("subset labels exist only for q = 2")
        u, v = self.vertex_labels[i]
        return (
            frozenset(j + 1 for j, x in enumerate(u) if x),
            frozenset(j + 1 for j, x in enumerate(v) if x),
        )


def _check_size(q: int, k: int) -> None:
    make_field(q)
    if k < 1:
        raise BadParameters(f"k must be positive, got {k}")
    if hk_vertex_count(q, k) > MAX_HK_VERTICES:
        raise TooLarge(f"H^{q}_{k} would have {hk_vertex_count(q, k)} vertices (cap {MAX_HK_VERTICES})")


def _vector_label(u, v) -> str:
    return f"(u={''.join(_DIGITS[x] for x in u)}, v={''.join(_DIGITS[x] for x in v)})"


def _arcs_from_pairs(pairs, q: int, k: int) -> tuple[int, ...]:
    F = make_field(q)
    by_v: dict = {}
    for idx, (_, v) in enumerate(pairs):
        by_v[v] = by_v.get(v, 0) | 1 << idx
    out = []
    for idx, (u, _) in enumerate(pairs):
        mask = 0
        for v, vmask in by_v.items():
            if dot(u, v, F):
                mask |= vmask
        out.append(mask & ~(1 << idx))
    return tuple(out)


def _build_h2_subsets(k: int) -> HkGraph:
    A = build_matrix_A(k)
    subsets = nonempty_subsets(k)
    cells = [(a, b) for a in range(len(subsets)) for b in range(len(subsets)) if A[a, b]]
    by_col: dict = {}
    for idx, (_, b) in enumerate(cells):
        by_col[b] = by_col.get(b, 0) | 1 << idx
    out = []
    for idx, (a, _) in enumerate(cells):
        mask = 0
        for b, cmask in by_col.items():
            if A[a, b]:
                mask |= cmask
        out.append(mask & ~(1 << idx))
    pairs = tuple((_indicator(subsets[a], k), _indicator(subsets[b], k)) for a, b in cells)
    labels = tuple(f"({format_subset(subsets[a])},{format_subset(subsets[b])})" for a, b in cells)
    return HkGraph(2, k, Digraph(len(cells), tuple(out), labels), pairs)


@lru_cache(maxsize=None)
def build_hk_bilinear(q: int, k: int) -> HkGraph:
    """H^q_k from the bilinear form; valid for every supported q including 2."""
    _check_size(q, k)
    F = make_field(q)
    pairs = tuple((u, v) for u in projective_points(F, k) for v in vectors(F, k) if dot(u, v, F) == 1)
    labels = tuple(_vector_label(u, v) for u, v in pairs)
    return HkGraph(q, k, Digraph(len(pairs), _arcs_from_pairs(pairs, q, k), labels), pairs)


@lru_cache(maxsize=None)
def build_hk(q: int, k: int) -> HkGraph:
    _check_size(q, k)
    if q == 2:
        if k > MAX_A_K:
            raise TooLarge(f"H^2_k is built for k <= {MAX_A_K}")
        return _build_h2_subsets(k)
    return build_hk_bilinear(q, k)


@lru_cache(maxsize=None)
def explicit_code_hk(q: int, k: int) -> LinearCode:
    """Length-k code for H^q_k: column ``v`` at vertex ``(u, v)``, receiver decodes ``u . y``."""
    hk = build_hk(q, k)
    F = make_field(q)
    columns = [v for _, v in hk.vertex_labels]
    M = FieldMatrix.from_rows(F, [[c[j] for c in columns] for j in range(k)], hk.graph.m)
    decoders = []
    for i, (u, _) in enumerate(hk.vertex_labels):
        dec = decoder_from_alpha(hk.graph, M, i, u)
        if dec is None:
            raise AssertionError(f"explicit decoder fails at vertex {i}")
        decoders.append(dec)
    return LinearCode(M, tuple(decoders))


def complete_digraph(r: int) -> Digraph:
    if r < 1:
        raise BadParameters(f"complete digraph needs r >= 1, got {r}")
    full = (1 << r) - 1
    return Digraph(r, tuple(full & ~(1 << v) for v in range(r)))


def kneser_graph(n: int, r: int) -> Digraph:
    """Bidirectional Kneser graph: r-subsets of ``[1:n]``, adjacent when disjoint."""
    if r < 1 or n < 2 * r:
        raise BadParameters(f"Kneser graph needs r >= 1 and n >= 2r, got n={n}, r={r}")
    subsets = [frozenset(c) for c in itertools.combinations(range(1, n + 1), r)]
    out = []
    for s in subsets:
        out.append(sum(1 << t for t, o in enumerate(subsets) if not s & o))
    return Digraph(len(subsets), tuple(out), tuple(format_subset(s) for s in subsets))
