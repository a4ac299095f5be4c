"""Digraph homomorphisms and the complement pre-order.

``find_homomorphism`` is a complete backtracking search with forward
checking: every assignment immediately narrows the candidate sets of the
unassigned neighbours to out-/in-neighbours of the chosen image.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .digraph import Digraph, _bits, complement
from .errors import SizeMismatch


@dataclass(frozen=True)
class VertexMap:
    source_size: int
    target_size: int
    map: tuple[int, ...]

    def __post_init__(self):
        if len(self.map) != self.source_size:
            raise SizeMismatch(f"map has {len(self.map)} entries for {self.source_size} vertices")
        for t in self.map:
            if not 0 <= t < self.target_size:
                raise SizeMismatch(f"image {t} outside [0, {self.target_size})")

    @classmethod
    def from_list(cls, images: Sequence[int], target_size: int) -> "VertexMap":
        return cls(len(images), target_size, tuple(int(t) for t in images))

    def __getitem__(self, v: int) -> int:
        return self.map[v]

    def fiber(self, w: int) -> list[int]:
        return [v for v, t in enumerate(self.map) if t == w]

    def fibers(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.target_size)]
        for v, t in enumerate(self.map):
            out[t].append(v)
        return out

    def then(self, other: "VertexMap") -> "VertexMap":
        """Composition ``other o self``."""
        if other.source_size != self.target_size:
            raise SizeMismatch("maps do not compose")
        return VertexMap(self.source_size, other.target_size, tuple(other.map[t] for t in self.map))

    def to_json(self) -> dict:
        return {"map": list(self.map)}

    @classmethod
    def from_json(cls, data, target_size: int) -> "VertexMap":
        return cls.from_list(data["map"], target_size)


def identity_map(m: int) -> VertexMap:
    return VertexMap(m, m, tuple(range(m)))


def verify_homomorphism(G: Digraph, H: Digraph, phi: VertexMap) -> bool:
    if phi.source_size != G.m or phi.target_size != H.m:
        raise SizeMismatch(
            f"map {phi.source_size}->{phi.target_size} does not fit graphs {G.m}->{H.m}"
        )
    img = phi.map
    h_out = H.out_adj
    return all(h_out[img[u]] >> img[v] & 1 for u, v in G.arcs())


def find_homomorphism(G: Digraph, H: Digraph) -> Optional[VertexMap]:
    """A homomorphism G -> H, or None when none exists."""
    m, n = G.m, H.m
    if m == 0:
        return VertexMap(0, n, ())
    if n == 0:
        return None
    g_out, g_in = G.out_adj, G.in_adj
    h_out, h_in = H.out_adj, H.in_adj
    has_out = sum(1 << t for t in range(n) if h_out[t])
    has_in = sum(1 << t for t in range(n) if h_in[t])
    has_two_cycle = sum(1 << t for t in range(n) if h_out[t] & h_in[t])
    domains = []
    for v in range(m):
        dom = (1 << n) - 1
        if g_out[v]:
            dom &= has_out
        if g_in[v]:
            dom &= has_in
        if g_out[v] & g_in[v]:
            dom &= has_two_cycle
        if not dom:
            return None
        domains.append(dom)

    degree = [bin(g_out[v] | g_in[v]).count("1") for v in range(m)]
    order = sorted(range(m), key=lambda v: (-degree[v], v))
    assignment = [-1] * m

    def search(depth: int, doms: list[int]) -> bool:
        if depth == m:
            return True
        v = order[depth]
        for t in _bits(doms[v]):
            new = list(doms)
            ok = True
            for u in _bits(g_out[v]):
                if assignment[u] < 0:
                    new[u] &= h_out[t]
                    ok = ok and bool(new[u])
            for u in _bits(g_in[v]):
                if assignment[u] < 0:
                    new[u] &= h_in[t]
                    ok = ok and bool(new[u])
            if not ok:
                continue
            assignment[v] = t
            new[v] = 1 << t
            if search(depth + 1, new):
                return True
            assignment[v] = -1
        return False

    if not search(0, domains):
        return None
    return VertexMap(m, n, tuple(assignment))


def precedes(G: Digraph, H: Digraph) -> Optional[VertexMap]:
    """Witness for ``G <= H``: a homomorphism from the complement of G to that of H."""
    return find_homomorphism(complement(G), complement(H))
