"""Side-information digraphs, complements, file formats and enumeration.

Vertex ``i`` is receiver ``i`` and also message ``x_i``; an arc ``(i, j)``
means receiver ``i`` already holds ``x_j``.  Adjacency is stored as one
integer bitmask of out-neighbours per vertex.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .errors import LoopError, ParseError, RangeError, TooLarge

MAX_ENUMERATION = 5


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Digraph:
    m: int
    out_adj: tuple[int, ...]
    labels: Optional[tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.out_adj) != self.m:
            raise ValueError("out_adj must have one bitmask per vertex")
        full = (1 << self.m) - 1
        for v, mask in enumerate(self.out_adj):
            if mask & ~full:
                raise RangeError(f"vertex {v} has an out-neighbour outside [0, {self.m})")
            if mask >> v & 1:
                raise LoopError(f"loop at vertex {v}")
        if self.labels is not None and len(self.labels) != self.m:
            raise ValueError("labels must have one entry per vertex")

    @classmethod
    def from_arcs(cls, m: int, arcs: Iterable[Sequence[int]], labels=None) -> "Digraph":
        out = [0] * m
        for u, v in arcs:
            if not (0 <= u < m and 0 <= v < m):
                raise RangeError(f"arc ({u}, {v}) outside [0, {m})")
            if u == v:
                raise LoopError(f"loop at vertex {u}")
            out[u] |= 1 << v
        return cls(m, tuple(out), tuple(labels) if labels is not None else None)

    @classmethod
    def empty(cls, m: int) -> "Digraph":
        return cls(m, (0,) * m)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_adj[u] >> v & 1)

    def out_neighbors(self, v: int) -> list[int]:
        return list(_bits(self.out_adj[v]))

    @property
    def in_adj(self) -> tuple[int, ...]:
        ins = [0] * self.m
        for u, mask in enumerate(self.out_adj):
            for v in _bits(mask):
                ins[v] |= 1 << u
        return tuple(ins)

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.m) for v in _bits(self.out_adj[u])]

    @property
    def num_arcs(self) -> int:
        return sum(bin(mask).count("1") for mask in self.out_adj)

    def with_labels(self, labels: Sequence[str]) -> "Digraph":
        return Digraph(self.m, self.out_adj, tuple(labels))

    def __repr__(self):
        return f"Digraph(m={self.m}, arcs={self.arcs()})"


@dataclass(frozen=True)
class UndirectedGraph:
    m: int
    adj: tuple[int, ...]

    def __post_init__(self):
        for u, mask in enumerate(self.adj):
            if mask >> u & 1:
                raise LoopError(f"loop at vertex {u}")
            for v in _bits(mask):
                if v >= self.m or not self.adj[v] >> u & 1:
                    raise ValueError("adjacency must be symmetric and in range")

    @classmethod
    def from_edges(cls, m: int, edges: Iterable[Sequence[int]]) -> "UndirectedGraph":
        adj = [0] * m
        for u, v in edges:
            if u == v:
                raise LoopError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(m, tuple(adj))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.m) for v in _bits(self.adj[u]) if u < v]

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    def complement(self) -> "UndirectedGraph":
        full = (1 << self.m) - 1
        return UndirectedGraph(self.m, tuple(full & ~mask & ~(1 << v) for v, mask in enumerate(self.adj)))


def complement(G: Digraph) -> Digraph:
    """Directional complement: ``(u, v)`` is an arc iff ``u != v`` and it is not an arc of G."""
    full = (1 << G.m) - 1
    return Digraph(G.m, tuple(full & ~mask & ~(1 << v) for v, mask in enumerate(G.out_adj)), G.labels)


def underlying(G: Digraph) -> UndirectedGraph:
    ins = G.in_adj
    return UndirectedGraph(G.m, tuple(o | i for o, i in zip(G.out_adj, ins)))


def is_biclique(G: Digraph, S: Iterable[int]) -> bool:
    """Every pair of distinct members of S is joined by arcs in both directions."""
    members = sorted(set(S))
    mask = sum(1 << v for v in members)
    return all((G.out_adj[v] | (1 << v)) & mask == mask for v in members)


def bidirectional(U: UndirectedGraph) -> Digraph:
    return Digraph(U.m, U.adj)


def enumerate_digraphs(m: int) -> Iterator[Digraph]:
    """All 2**(m(m-1)) labelled loop-free digraphs on m vertices.

    Bit ``t`` of a counter switches the t-th off-diagonal pair in row-major
    order, so graph number ``n`` is the binary expansion of ``n``.
    """
    if m > MAX_ENUMERATION:
        raise TooLarge(f"enumeration limited to m <= {MAX_ENUMERATION}")
    pairs = [(u, v) for u in range(m) for v in range(m) if u != v]
    for code in range(1 << len(pairs)):
        out = [0] * m
        for t, (u, v) in enumerate(pairs):
            if code >> t & 1:
                out[u] |= 1 << v
        yield Digraph(m, tuple(out))


def digraph_code(G: Digraph) -> int:
    """Index of G in :func:`enumerate_digraphs` order."""
    code, t = 0, 0
    for u in range(G.m):
        for v in range(G.m):
            if u != v:
                if G.has_arc(u, v):
                    code |= 1 << t
                t += 1
    return code


# -- file formats -----------------------------------------------------------

def parse_digraph(text: str) -> Digraph:
    """Parse the edge-list format: ``n=<m>`` then one ``u v`` arc per line."""
    m = None
    arcs = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if m is None:
            key, sep, value = line.partition("=")
            if key.strip() != "n" or not sep:
                raise ParseError(f"line {lineno}: expected 'n=<m>', got {raw!r}")
            try:
                m = int(value)
            except ValueError:
                raise ParseError(f"line {lineno}: bad vertex count {value!r}") from None
            if m < 0:
                raise ParseError(f"line {lineno}: negative vertex count")
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer vertex in {raw!r}") from None
        if u == v:
            raise LoopError(f"line {lineno}: loop {u} {v}")
        if not (0 <= u < m and 0 <= v < m):
            raise RangeError(f"line {lineno}: vertex out of range [0, {m})")
        arcs.append((u, v))
    if m is None:
        raise ParseError("missing 'n=<m>' header")
    return Digraph.from_arcs(m, arcs)


def format_digraph(G: Digraph) -> str:
    lines = [f"n={G.m}"]
    if G.labels is not None:
        lines += [f"# {v} {label}" for v, label in enumerate(G.labels)]
    lines += [f"{u} {v}" for u, v in G.arcs()]
    return "\n".join(lines) + "\n"


def digraph_to_json(G: Digraph) -> dict:
    data = {"n": G.m, "edges": [[u, v] for u, v in G.arcs()]}
    if G.labels is not None:
        data["labels"] = list(G.labels)
    return data


def digraph_from_json(data) -> Digraph:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        m = int(data["n"])
        edges = [(int(u), int(v)) for u, v in data.get("edges", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed digraph JSON: {exc}") from None
    labels = data.get("labels")
    return Digraph.from_arcs(m, edges, labels)


def load_digraph(path) -> Digraph:
    """Read a graph file; ``.json`` selects the JSON mirror, anything else the edge list."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if str(path).endswith(".json"):
        try:
            return digraph_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from None
    return parse_digraph(text)
