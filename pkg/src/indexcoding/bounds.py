"""Upper and lower bounds on scalar linear indices, and the combined report.

Colourings of a digraph complement are colourings of its underlying
undirected graph: a map into the complete digraph ``K_r`` must separate the
ends of every arc, whichever its direction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Sequence

from .coloring import (
    chromatic_number,
    clique_number,
    dsatur,
    fractional_chromatic,
    max_acyclic_induced,
)
from .digraph import Digraph, complement, digraph_code, enumerate_digraphs, underlying
from .errors import BudgetExceeded, PropertyViolation, TooLarge, UnverifiedFunction
from .field import FieldMatrix, make_field
from .hfamily import build_hk, complete_digraph
from .homsearch import VertexMap, precedes, verify_homomorphism
from .lincode import DEFAULT_BUDGET, LinearCode, lind
from .translate import translate_linear

SCHEMA = "indexcoding.bounds/1"


def complement_chromatic(G: Digraph) -> tuple[int, tuple[int, ...]]:
    """Chromatic number of the complement (as an undirected graph) with a colouring."""
    return chromatic_number(underlying(complement(G)))


@dataclass(frozen=True)
class LogBound:
    """The bound ``lind_q(G) >= log_q(chi)`` kept in exact integer form."""

    chi: int
    q: int

    def admits(self, k: int) -> bool:
        return self.q**k >= self.chi

    @property
    def min_admissible_k(self) -> int:
        k = 0
        while self.q**k < self.chi:
            k += 1
        return k

    def report_value(self, m: int) -> int:
        # every receiver needs at least one symbol when m >= 1
        return max(self.min_admissible_k, 1 if m >= 1 else 0)


def chromatic_lower_bound(G: Digraph, q: int) -> LogBound:
    make_field(q)
    chi, _ = complement_chromatic(G)
    return LogBound(chi, q)


@dataclass(frozen=True)
class CliqueCover:
    r: int
    coloring: tuple[int, ...]
    # homomorphism from the complement of G into the complete digraph K_r
    map: VertexMap
    code: LinearCode


def clique_cover_bound(G: Digraph, q: int = 2) -> int:
    return complement_chromatic(G)[0]


def clique_cover_certificate(G: Digraph, q: int = 2) -> CliqueCover:
    """Colouring of the complement, the map into ``K_r``, and the length-r code it yields.

    The code is the identity code of the edgeless digraph on r vertices (whose
    complement is ``K_r``) translated back to G, i.e. one sum per colour class.
    """
    r, coloring = complement_chromatic(G)
    phi = VertexMap(G.m, r, coloring)
    K_r = complete_digraph(r)
    if not verify_homomorphism(complement(G), K_r, phi):
        raise PropertyViolation("colouring is not a homomorphism into K_r")
    edgeless = complement(K_r)
    F = make_field(q)
    ident = LinearCode(FieldMatrix.identity(F, r))
    return CliqueCover(r, coloring, phi, translate_linear(G, edgeless, phi, ident))


# -- increasing functions --------------------------------------------------------

@dataclass(frozen=True)
class IncreasingFunction:
    name: str
    func: Callable[[Digraph], int]

    def __call__(self, G: Digraph) -> int:
        return self.func(G)


_REGISTRY: dict[str, IncreasingFunction] = {}


def increasing_violations(func: Callable[[Digraph], int], graphs: Sequence[Digraph]) -> list[tuple[int, int]]:
    """Index pairs ``(a, b)`` with ``graphs[a] <= graphs[b]`` but ``func`` decreasing."""
    values = [func(G) for G in graphs]
    bad = []
    for a, G in enumerate(graphs):
        for b, H in enumerate(graphs):
            if values[a] > values[b] and precedes(G, H) is not None:
                bad.append((a, b))
    return bad


def register_increasing(name: str, func: Callable[[Digraph], int], verify_m: Optional[int] = None) -> IncreasingFunction:
    """Register ``func`` as increasing; optionally check it on every pair of graphs with up to ``verify_m`` vertices."""
    if verify_m is not None:
        graphs = [G for m in range(1, verify_m + 1) for G in enumerate_digraphs(m)]
        bad = increasing_violations(func, graphs)
        if bad:
            a, b = bad[0]
            raise PropertyViolation(f"{name} decreases from {graphs[a]} to {graphs[b]}")
    entry = IncreasingFunction(name, func)
    _REGISTRY[name] = entry
    return entry


def registered(name: str) -> IncreasingFunction:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnverifiedFunction(f"no increasing function registered as {name!r}") from None


def increasing_function_lower_bound(G: Digraph, h, r_of_k: dict) -> int:
    """Largest ``k + 1`` with ``h(G) > r_of_k[k]``, or 0.

    ``r_of_k[k]`` must bound ``h`` on the universal graph of length k; then
    ``h(G) > r_of_k[k]`` rules out every code of length k.
    """
    if isinstance(h, str):
        h = registered(h)
    if not isinstance(h, IncreasingFunction) or _REGISTRY.get(h.name) is not h:
        raise UnverifiedFunction("h must be a registered increasing function")
    value = h(G)
    return max((k + 1 for k, r in r_of_k.items() if value > r), default=0)


def power_table(q: int, k_max: int) -> dict:
    return {k: q**k for k in range(k_max + 1)}


def identity_table(k_max: int) -> dict:
    return {k: k for k in range(k_max + 1)}


COMPLEMENT_CHROMATIC = register_increasing("complement_chromatic", lambda G: complement_chromatic(G)[0])
COMPLEMENT_CLIQUE = register_increasing("complement_clique", lambda G: clique_number(underlying(complement(G))))
MAX_ACYCLIC = register_increasing("max_acyclic_induced", lambda G: max_acyclic_induced(G.out_adj))


# -- change of field -------------------------------------------------------------

@dataclass(frozen=True)
class FieldChangeBound:
    value: int
    q1: int
    q2: int
    k: int
    method: str

    def __int__(self):
        return self.value

    def to_json(self) -> dict:
        return {"from_q": self.q1, "value": self.value, "k": self.k, "method": self.method}


@lru_cache(maxsize=None)
def _hk_index(q1: int, k: int, q2: int, budget: int) -> tuple[int, str]:
    if q1 == q2:
        return k, "explicit_code"
    H = build_hk(q1, k).graph
    try:
        cover = clique_cover_bound(H)
        method = "clique_cover"
    except BudgetExceeded:
        cover = max(dsatur(underlying(complement(H)))) + 1
        method = "greedy_clique_cover"
    try:
        found = lind(H, q2, cover - 1, budget) if cover > 1 else None
    except BudgetExceeded:
        return cover, method
    if found is not None:
        return found[0], "exact"
    # nothing shorter than the cover exists, so the cover is exact
    return cover, "exact" if method == "clique_cover" else method


def field_change_bound(G: Digraph, q1: int, q2: int, budget: int = DEFAULT_BUDGET) -> FieldChangeBound:
    """``lind_{q2}(G) <= lind_{q2}(H^{q1}_k)`` with ``k = lind_{q1}(G)``."""
    make_field(q1)
    make_field(q2)
    found = lind(G, q1, G.m, budget)
    assert found is not None
    k = found[0]
    try:
        value, method = _hk_index(q1, k, q2, budget)
    except TooLarge:
        # H^{q1}_k too big to build: fall back to the trivial bound
        return FieldChangeBound(G.m, q1, q2, k, "trivial")
    return FieldChangeBound(value, q1, q2, k, method)


# -- report ----------------------------------------------------------------------

@dataclass
class BoundEntry:
    q: int
    lower: Optional[int] = None
    upper: Optional[int] = None
    exact: Optional[int] = None
    field_change: list = field(default_factory=list)
    code: Optional[LinearCode] = None
    errors: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "lower": {"chromatic_log": self.lower},
            "exact": self.exact,
            "upper": {
                "clique_cover": self.upper,
                "field_change": [fc.to_json() for fc in self.field_change],
            },
            "witness_code": self.code.to_json() if self.code is not None else None,
            "errors": dict(sorted(self.errors.items())),
        }


@dataclass
class BoundsReport:
    graph_id: str
    m: int
    qs: list
    chi_complement: Optional[int]
    coloring: Optional[tuple]
    fractional: Optional[Fraction]
    entries: list

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "graph": self.graph_id,
            "m": self.m,
            "qs": list(self.qs),
            "chi_complement": self.chi_complement,
            "fractional_chi_complement": None if self.fractional is None else str(self.fractional),
            "witnesses": {"coloring": None if self.coloring is None else list(self.coloring)},
            "entries": [e.to_json() for e in self.entries],
        }

    def check(self) -> None:
        """Every lower bound is at most every upper bound; an exact value sits between."""
        for e in self.entries:
            uppers = [u for u in [e.upper] + [fc.value for fc in e.field_change] if u is not None]
            low = e.lower
            if low is not None and any(low > u for u in uppers):
                raise PropertyViolation(f"q={e.q}: lower bound {low} exceeds an upper bound {uppers}")
            if e.exact is not None:
                if (low is not None and e.exact < low) or any(e.exact > u for u in uppers):
                    raise PropertyViolation(f"q={e.q}: exact {e.exact} outside [{low}, {uppers}]")


def bounds_report(
    G: Digraph,
    qs: Sequence[int],
    budget: int = DEFAULT_BUDGET,
    exact: bool = True,
    graph_id: Optional[str] = None,
) -> BoundsReport:
    """Run every applicable bound per field; budget failures are recorded per entry."""
    if graph_id is None:
        graph_id = f"m{G.m}-{digraph_code(G)}" if G.m <= 5 else f"m{G.m}"
    qs = list(qs)
    for q in qs:
        make_field(q)
    chi = coloring = frac = None
    errors = {}
    try:
        chi, coloring = complement_chromatic(G)
    except BudgetExceeded as exc:
        errors["chromatic"] = str(exc)
    try:
        frac = fractional_chromatic(underlying(complement(G)))
    except BudgetExceeded as exc:
        errors["fractional"] = str(exc)
    entries = []
    for q in qs:
        e = BoundEntry(q, errors=dict(errors))
        if chi is not None:
            e.lower = LogBound(chi, q).report_value(G.m)
            e.upper = chi
        if exact and G.m:
            try:
                found = lind(G, q, G.m, budget)
                e.exact, e.code = found
            except BudgetExceeded as exc:
                e.errors["exact"] = str(exc)
        for q1 in qs:
            if q1 == q or not G.m:
                continue
            try:
                e.field_change.append(field_change_bound(G, q1, q, budget))
            except BudgetExceeded as exc:
                e.errors[f"field_change_from_{q1}"] = str(exc)
        entries.append(e)
    report = BoundsReport(graph_id, G.m, qs, chi, coloring, frac, entries)
    report.check()
    return report
