"""Exact colouring, cliques and the fractional chromatic number of small graphs."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator

from .digraph import UndirectedGraph, _bits
from .errors import BudgetExceeded

MAX_COLORING_VERTICES = 40
MAX_FRACTIONAL_VERTICES = 20
DEFAULT_NODE_BUDGET = 5_000_000


def maximal_cliques(adj: tuple[int, ...]) -> Iterator[int]:
    """Bron-Kerbosch with pivoting; yields each maximal clique as a bitmask."""
    n = len(adj)

    def expand(R: int, P: int, X: int):
        if not P and not X:
            yield R
            return
        pivot = max(_bits(P | X), key=lambda u: bin(P & adj[u]).count("1"))
        for v in _bits(P & ~adj[pivot]):
            yield from expand(R | 1 << v, P & adj[v], X & adj[v])
            P &= ~(1 << v)
            X |= 1 << v

    if n == 0:
        return
    yield from expand(0, (1 << n) - 1, 0)


def maximal_independent_sets(U: UndirectedGraph) -> list[int]:
    """All maximal independent sets as bitmasks, sorted."""
    return sorted(maximal_cliques(U.complement().adj))


def clique_number(U: UndirectedGraph) -> int:
    return max((bin(c).count("1") for c in maximal_cliques(U.adj)), default=0)


def independence_number(U: UndirectedGraph) -> int:
    return clique_number(U.complement())


def dsatur(U: UndirectedGraph) -> tuple[int, ...]:
    """Greedy DSATUR colouring; ties go to higher degree, then lower index."""
    n = U.m
    color = [-1] * n
    seen: list[set] = [set() for _ in range(n)]
    degree = [U.degree(v) for v in range(n)]
    for _ in range(n):
        v = max((u for u in range(n) if color[u] < 0), key=lambda u: (len(seen[u]), degree[u], -u))
        c = 0
        while c in seen[v]:
            c += 1
        color[v] = c
        for u in _bits(U.adj[v]):
            seen[u].add(c)
    return tuple(color)


def chromatic_number(U: UndirectedGraph, budget: int = DEFAULT_NODE_BUDGET) -> tuple[int, tuple[int, ...]]:
    """Exact chromatic number and an optimal colouring.

    Branch and bound in DSATUR order, started from the greedy DSATUR colouring
    as upper bound and stopped as soon as it meets the clique number.
    """
    n = U.m
    if n > MAX_COLORING_VERTICES:
        raise BudgetExceeded(n, MAX_COLORING_VERTICES, "exact colouring (vertices)")
    if n == 0:
        return 0, ()
    best_coloring = dsatur(U)
    best = max(best_coloring) + 1
    lower = clique_number(U)
    if lower == best:
        return best, best_coloring
    adj = U.adj
    degree = [U.degree(v) for v in range(n)]
    color = [-1] * n
    # per vertex: bitmask of colours used by its neighbours
    used_near = [0] * n
    nodes = 0

    def search(colored: int, ncolors: int) -> bool:
        nonlocal best, best_coloring, nodes
        if colored == n:
            best, best_coloring = ncolors, tuple(color)
            return best == lower
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(nodes, budget, "exact colouring")
        v = max(
            (u for u in range(n) if color[u] < 0),
            key=lambda u: (bin(used_near[u]).count("1"), degree[u], -u),
        )
        limit = min(ncolors + 1, best - 1)
        for c in range(limit):
            if used_near[v] >> c & 1:
                continue
            color[v] = c
            touched = [u for u in _bits(adj[v]) if not used_near[u] >> c & 1]
            for u in touched:
                used_near[u] |= 1 << c
            done = search(colored + 1, max(ncolors, c + 1))
            for u in touched:
                used_near[u] &= ~(1 << c)
            color[v] = -1
            if done:
                return True
            limit = min(ncolors + 1, best - 1)
            if c >= limit:
                break
        return False

    search(0, 0)
    return best, best_coloring


def is_proper_coloring(U: UndirectedGraph, coloring) -> bool:
    return len(coloring) == U.m and all(coloring[u] != coloring[v] for u, v in U.edges())


# -- exact rational LP ---------------------------------------------------------

def _simplex_max(A: list[list[Fraction]], b: list[Fraction], c: list[Fraction]):
    """Maximize ``c.y`` subject to ``A y <= b``, ``y >= 0``, with ``b >= 0``.

    Dense tableau with Bland's rule; slack basis is feasible so no phase one.
    Returns the optimum, the primal solution and the dual prices of the rows.
    """
    rows, cols = len(A), len(c)
    T = [list(A[i]) + [Fraction(int(i == j)) for j in range(rows)] + [b[i]] for i in range(rows)]
    z = [-x for x in c] + [Fraction(0)] * rows + [Fraction(0)]
    basis = [cols + i for i in range(rows)]
    width = cols + rows
    while True:
        enter = next((j for j in range(width) if z[j] < 0), None)
        if enter is None:
            break
        ratios = [(T[i][-1] / T[i][enter], basis[i], i) for i in range(rows) if T[i][enter] > 0]
        if not ratios:
            raise ArithmeticError("unbounded LP")
        _, _, leave = min(ratios)
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        for i in range(rows):
            if i != leave and T[i][enter]:
                f = T[i][enter]
                T[i] = [x - f * y for x, y in zip(T[i], T[leave])]
        if z[enter]:
            f = z[enter]
            z = [x - f * y for x, y in zip(z, T[leave])]
        basis[leave] = enter
    y = [Fraction(0)] * cols
    for i, var in enumerate(basis):
        if var < cols:
            y[var] = T[i][-1]
    duals = z[cols:cols + rows]
    return z[-1], y, duals


def fractional_chromatic_certificate(U: UndirectedGraph):
    """``(chi_f, weights per maximal independent set, vertex weights)``.

    Solves the vertex-weighting LP (max total weight, every maximal
    independent set weighs at most 1); its dual prices are an optimal
    fractional cover by independent sets.
    """
    n = U.m
    if n > MAX_FRACTIONAL_VERTICES:
        raise BudgetExceeded(n, MAX_FRACTIONAL_VERTICES, "fractional chromatic number (vertices)")
    if n == 0:
        return Fraction(0), {}, []
    sets = maximal_independent_sets(U)
    A = [[Fraction(s >> v & 1) for v in range(n)] for s in sets]
    value, y, duals = _simplex_max(A, [Fraction(1)] * len(sets), [Fraction(1)] * n)
    cover = {s: w for s, w in zip(sets, duals) if w}
    return value, cover, y


def fractional_chromatic(U: UndirectedGraph) -> Fraction:
    return fractional_chromatic_certificate(U)[0]


def max_acyclic_induced(adj_out: tuple[int, ...]) -> int:
    """Largest vertex set inducing an acyclic digraph (exhaustive, small graphs)."""
    n = len(adj_out)
    best = 0
    for mask in range(1 << n):
        size = bin(mask).count("1")
        if size > best and _is_acyclic(adj_out, mask):
            best = size
    return best


def _is_acyclic(adj_out, mask: int) -> bool:
    remaining = mask
    while remaining:
        sink = next((v for v in _bits(remaining) if not adj_out[v] & remaining), None)
        if sink is None:
            return False
        remaining &= ~(1 << sink)
    return True
