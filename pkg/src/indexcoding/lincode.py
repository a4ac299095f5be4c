"""Scalar linear index codes: validity, exact search, minrank, extraction.

A code is an ``l x m`` encoder ``M`` over GF(q); the broadcast is ``y = M x``.
Receiver ``i`` decodes iff ``e_i`` lies in ``rowspace(M) + span{e_j : j in
N+(i)}``, which is tested by restricting every row to the columns receiver
``i`` does not know and asking whether the restricted ``e_i`` is in their
span.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .digraph import Digraph, _bits, complement
from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    InvalidCode,
    InvalidInput,
    UnsupportedField,
)
from .field import (
    Field,
    FieldMatrix,
    gaussian_binomial,
    in_affine_span,
    iter_rref,
    lin_comb,
    make_field,
    normalize,
)
from .homsearch import VertexMap, verify_homomorphism

DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class Decoder:
    """``x_i = alpha . y + sum(coef * x_j for j, coef in beta)``."""

    alpha: tuple[int, ...]
    beta: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {"alpha": list(self.alpha), "beta": {str(j): c for j, c in self.beta}}

    @classmethod
    def from_json(cls, data) -> "Decoder":
        beta = tuple(sorted((int(j), int(c)) for j, c in data.get("beta", {}).items()))
        return cls(tuple(int(a) for a in data["alpha"]), beta)


@dataclass(frozen=True)
class LinearCode:
    encoder: FieldMatrix
    decoders: Optional[tuple[Decoder, ...]] = None

    def __post_init__(self):
        if self.encoder.rows < 1 or self.encoder.cols < 1:
            raise InvalidInput("a linear code needs at least one symbol and one message")

    @property
    def field(self) -> Field:
        return self.encoder.field

    @property
    def q(self) -> int:
        return self.encoder.field.q

    @property
    def length(self) -> int:
        return self.encoder.rows

    @property
    def m(self) -> int:
        return self.encoder.cols

    def encode(self, x: Sequence[int]) -> tuple[int, ...]:
        return self.encoder.apply(x)

    def decode(self, i: int, y: Sequence[int], x: Sequence[int]) -> int:
        """Run receiver i's decoder; only side-information entries of ``x`` are read."""
        if self.decoders is None:
            raise InvalidCode("code carries no decoders")
        F = self.field
        dec = self.decoders[i]
        acc = lin_comb(dec.alpha, [(v,) for v in y], F, 1)[0]
        for j, c in dec.beta:
            acc = F.add(acc, F.mul(c, x[j]))
        return acc

    def to_json(self) -> dict:
        data = {
            "q": self.q,
            "l": self.length,
            "m": self.m,
            "encoder": self.encoder.tolist(),
        }
        if self.field.degree > 1:
            data["modulus"] = list(self.field.modulus)
        if self.decoders is not None:
            data["decoders"] = [d.to_json() for d in self.decoders]
        return data

    @classmethod
    def from_json(cls, data) -> "LinearCode":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            F = make_field(int(data["q"]))
            enc = FieldMatrix.from_rows(F, data["encoder"], int(data["m"]))
            decoders = data.get("decoders")
            decs = tuple(Decoder.from_json(d) for d in decoders) if decoders is not None else None
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed code JSON: {exc}") from None
        if "modulus" in data and tuple(data["modulus"]) != F.modulus:
            raise UnsupportedField(f"code uses modulus {data['modulus']}, expected {list(F.modulus)}")
        if enc.rows != int(data.get("l", enc.rows)):
            raise DimensionMismatch("'l' disagrees with encoder rows")
        return cls(enc, decs)


@dataclass(frozen=True)
class SufficientFamily:
    receiver: int
    J: frozenset[int]
    # coefficients of the single combination of y_j, j in sorted(J)
    coefficients: tuple[int, ...]


# -- decodability ------------------------------------------------------------

def _bitrows(rows: Sequence[Sequence[int]]) -> list[int]:
    return [sum(1 << c for c, x in enumerate(r) if x) for r in rows]


def _gf2_decodable(bitrows: Sequence[int], coord: int, visible: int) -> bool:
    basis: dict[int, int] = {}
    for r in bitrows:
        r &= visible
        while r:
            top = r.bit_length() - 1
            if top in basis:
                r ^= basis[top]
            else:
                basis[top] = r
                break
    t = 1 << coord
    while t:
        top = t.bit_length() - 1
        if top not in basis:
            return False
        t ^= basis[top]
    return True


def _restricted_solve(rows, field: Field, coord: int, visible: Sequence[int]):
    target = tuple(int(c == coord) for c in visible)
    gens = [tuple(r[c] for c in visible) for r in rows]
    return in_affine_span(target, gens, field)


def _demands(G: Digraph) -> list[tuple[int, int]]:
    full = (1 << G.m) - 1
    return [(i, full & ~G.out_adj[i]) for i in range(G.m)]


def _all_decodable(rows, field: Field, demands, bitrows=None) -> bool:
    if field.q == 2:
        if bitrows is None:
            bitrows = _bitrows(rows)
        return all(_gf2_decodable(bitrows, c, vis) for c, vis in demands)
    return all(_restricted_solve(rows, field, c, list(_bits(vis))) is not None for c, vis in demands)


def decoder_from_alpha(G: Digraph, M: FieldMatrix, i: int, alpha: Sequence[int]) -> Optional[Decoder]:
    """Decoder for receiver i using ``alpha . y``; None if that combination does not work."""
    F = M.field
    c = M.left_apply(alpha)
    if c[i] != 1:
        return None
    known = G.out_adj[i]
    beta = []
    for j, cj in enumerate(c):
        if j == i or not cj:
            continue
        if not known >> j & 1:
            return None
        beta.append((j, F.neg(cj)))
    return Decoder(tuple(alpha), tuple(beta))


def is_valid_linear_code(G: Digraph, M: FieldMatrix) -> Optional[tuple[Decoder, ...]]:
    """Canonical decoders for every receiver, or None if some receiver cannot decode."""
    if M.cols != G.m:
        raise DimensionMismatch(f"encoder has {M.cols} columns for {G.m} vertices")
    decoders = []
    for i, visible in _demands(G):
        alpha = _restricted_solve(M.entries, M.field, i, list(_bits(visible)))
        if alpha is None:
            return None
        dec = decoder_from_alpha(G, M, i, alpha)
        assert dec is not None
        decoders.append(dec)
    return tuple(decoders)


def validated(G: Digraph, M: FieldMatrix) -> LinearCode:
    decoders = is_valid_linear_code(G, M)
    if decoders is None:
        raise InvalidCode("encoder is not a valid index code for this graph")
    return LinearCode(M, decoders)


def pad_code(code: LinearCode, length: int) -> LinearCode:
    """Append zero symbols up to ``length``; decoders ignore them."""
    extra = length - code.length
    if extra < 0:
        raise DimensionMismatch("cannot shorten a code by padding")
    rows = code.encoder.entries + ((0,) * code.m,) * extra
    decoders = None
    if code.decoders is not None:
        decoders = tuple(Decoder(d.alpha + (0,) * extra, d.beta) for d in code.decoders)
    return LinearCode(FieldMatrix(code.field, rows, code.m), decoders)


def check_decoders(G: Digraph, code: LinearCode) -> bool:
    """Re-derive each decoder's output symbolically: alpha.M + beta must equal e_i."""
    if code.decoders is None or len(code.decoders) != G.m:
        return False
    F = code.field
    for i, dec in enumerate(code.decoders):
        if len(dec.alpha) != code.length:
            return False
        c = list(code.encoder.left_apply(dec.alpha))
        for j, b in dec.beta:
            if j == i or not G.has_arc(i, j):
                return False
            c[j] = F.add(c[j], b)
        if c != [int(j == i) for j in range(G.m)]:
            return False
    return True


# -- exact search ------------------------------------------------------------

def _has_zero_column(bitrows_or_rows, m: int, q: int) -> bool:
    if q == 2:
        acc = 0
        for r in bitrows_or_rows:
            acc |= r
        return acc != (1 << m) - 1
    return any(not any(r[c] for r in bitrows_or_rows) for c in range(m))


def _search_rowspaces(field: Field, n: int, k: int, demands) -> Optional[tuple]:
    q = field.q
    for rows in iter_rref(field, k, n):
        if q == 2:
            br = _bitrows(rows)
            # a message absent from every symbol can never be decoded
            if _has_zero_column(br, n, 2):
                continue
            if _all_decodable(rows, field, demands, br):
                return rows
        else:
            if _has_zero_column(rows, n, q):
                continue
            if _all_decodable(rows, field, demands):
                return rows
    return None


def lind(G: Digraph, q: int, k_max: int, budget: int = DEFAULT_BUDGET) -> Optional[tuple[int, LinearCode]]:
    """Least length ``k <= k_max`` of a valid GF(q)-linear code, with a witness.

    One reduced row echelon representative is tried per row space, since
    validity only depends on ``rowspace(M)``.  ``budget`` caps the total
    number of row spaces examined.
    """
    if G.m == 0:
        raise InvalidInput("the empty vertex set has no index code")
    F = make_field(q)
    demands = _demands(G)
    spent = 0
    for k in range(1, min(k_max, G.m) + 1):
        spent += gaussian_binomial(G.m, k, q)
        if spent > budget:
            raise BudgetExceeded(spent, budget, f"lind_{q} search up to k={k}")
        rows = _search_rowspaces(F, G.m, k, demands)
        if rows is not None:
            return k, validated(G, FieldMatrix(F, rows, G.m))
    return None


def lind_value(G: Digraph, q: int, budget: int = DEFAULT_BUDGET) -> int:
    found = lind(G, q, G.m, budget)
    assert found is not None, "the identity code always exists"
    return found[0]


def minrank(G: Digraph, q: int, budget: int = DEFAULT_BUDGET) -> int:
    """Minimum rank of a matrix fitting G over GF(q).

    Row ``i`` is ``e_i`` plus any combination of ``e_j`` for arcs ``(i, j)``
    (a nonzero diagonal can be scaled to 1 without changing rank).  Rows are
    chosen depth first while an incremental echelon basis tracks the rank,
    and branches whose rank already reaches the best found are cut.
    ``budget`` caps the number of search nodes.
    """
    m = G.m
    if m == 0:
        return 0
    F = make_field(q)
    add, mul, neg = F.add_table, F.mul_table, F.neg_table
    options = []
    for i in range(m):
        nbrs = G.out_neighbors(i)
        rows = []
        for coeffs in itertools.product(range(q), repeat=len(nbrs)):
            v = [0] * m
            v[i] = 1
            for j, c in zip(nbrs, coeffs):
                v[j] = c
            rows.append(v)
        options.append(rows)

    if q == 2:
        options = [[sum(1 << c for c, x in enumerate(v) if x) for v in rows] for rows in options]

        def reduce(basis, v):
            while v:
                top = v.bit_length() - 1
                if top not in basis:
                    return v, top
                v ^= basis[top]
            return 0, -1
    else:

        def reduce(basis, v):
            v = list(v)
            for piv, b in basis.items():
                if v[piv]:
                    f = mul[neg[v[piv]]]
                    v = [add[x][f[y]] for x, y in zip(v, b)]
            for c, x in enumerate(v):
                if x:
                    s = F.inv(x)
                    return [mul[s][y] for y in v], c
            return None, -1

    best = m
    nodes = 0

    def search(i: int, basis: dict) -> None:
        nonlocal best, nodes
        if len(basis) >= best:
            return
        if i == m:
            best = len(basis)
            return
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(nodes, budget, f"minrank_{q} search")
        fresh = []
        for v in options[i]:
            red, piv = reduce(basis, v)
            if piv < 0:
                search(i + 1, basis)
                return  # staying inside the span is never worse
            fresh.append((piv, red))
        if len(basis) + 1 >= best:
            return
        for piv, red in fresh:
            if q != 2:
                # keep the basis fully reduced on pivot columns
                nb = {}
                for p, b in basis.items():
                    if b[piv]:
                        f = mul[neg[b[piv]]]
                        b = [add[x][f[y]] for x, y in zip(b, red)]
                    nb[p] = b
                nb[piv] = red
            else:
                nb = dict(basis)
                nb[piv] = red
            search(i + 1, nb)
            if len(basis) + 1 >= best:
                return

    search(0, {})
    return best


# -- sufficient families and extraction --------------------------------------

def _family_solution(code: LinearCode, G: Digraph, i: int, J: Sequence[int]):
    visible = list(_bits(((1 << G.m) - 1) & ~G.out_adj[i]))
    rows = [code.encoder.row(j) for j in J]
    return _restricted_solve(rows, code.field, i, visible)


def minimal_sufficient_families(G: Digraph, code: LinearCode, i: int) -> list[SufficientFamily]:
    """All inclusion-minimal sets of broadcast symbols from which receiver i decodes."""
    if is_valid_linear_code(G, code.encoder) is None:
        raise InvalidCode("code is not valid for this graph")
    found: list[SufficientFamily] = []
    for size in range(1, code.length + 1):
        for J in itertools.combinations(range(code.length), size):
            Jset = frozenset(J)
            if any(f.J <= Jset for f in found):
                continue
            coeffs = _family_solution(code, G, i, J)
            if coeffs is None:
                continue
            # minimality forces every coefficient to be nonzero
            if not all(coeffs):
                raise AssertionError(f"minimal family {J} decodes with a zero coefficient")
            found.append(SufficientFamily(i, Jset, tuple(coeffs)))
    return found


def smallest_then_lex(families: Sequence[SufficientFamily]) -> SufficientFamily:
    return min(families, key=lambda f: (len(f.J), sorted(f.J)))


@dataclass(frozen=True)
class Extraction:
    map: VertexMap
    k: int
    q: int
    gamma: tuple[frozenset[int], ...]
    # C_J: messages whose column support is exactly J (only non-empty classes)
    classes: dict
    certified: bool

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "k": self.k,
            "map": list(self.map.map),
            "gamma": [sorted(j + 1 for j in g) for g in self.gamma],
            "classes": [
                {"J": sorted(j + 1 for j in J), "members": sorted(members)}
                for J, members in sorted(self.classes.items(), key=lambda kv: (sorted(kv[0]), kv[1]))
            ],
            "certified": self.certified,
        }


def support_classes(code: LinearCode) -> dict:
    """Partition messages by the exact set of symbols whose support contains them.

    Built literally as ``C_J = (intersection of M_j, j in J) minus (union of M_l, l not in J)``.
    """
    k, m = code.length, code.m
    supports = [frozenset(i for i in range(m) if code.encoder[j, i]) for j in range(k)]
    classes = {}
    everyone = frozenset(range(m))
    for size in range(1, k + 1):
        for J in itertools.combinations(range(k), size):
            inside = everyone
            for j in J:
                inside &= supports[j]
            for l in range(k):
                if l not in J:
                    inside -= supports[l]
            if inside:
                classes[frozenset(J)] = tuple(sorted(inside))
    return classes


def extract_homomorphism(
    G: Digraph,
    code: LinearCode,
    tie_break: Callable[[Sequence[SufficientFamily]], SufficientFamily] = smallest_then_lex,
    general_field: bool = False,
) -> Extraction:
    """Map each vertex to a vertex of H^q_k, where k is the code length.

    Over GF(2) vertex ``i`` goes to ``(gamma(i), J(i))``: a chosen minimal
    sufficient family and the class ``C_J`` containing ``i``.  Over larger
    fields (``general_field=True``) the pair is (normalized decoding
    combination on gamma(i), rescaled column i).  The result is checked
    against the complements before returning.
    """
    from .hfamily import build_hk

    q = code.q
    if q != 2 and not general_field:
        raise UnsupportedField("extraction over GF(q), q > 2, requires general_field=True")
    if code.m != G.m:
        raise DimensionMismatch("code and graph disagree on the number of messages")
    if is_valid_linear_code(G, code.encoder) is None:
        raise InvalidCode("code is not valid for this graph")
    k = code.length
    F = code.field
    hk = build_hk(q, k)
    gamma = []
    images = []
    classes = support_classes(code)
    member_class = {i: J for J, members in classes.items() for i in members}
    for i in range(G.m):
        fam = tie_break(minimal_sufficient_families(G, code, i))
        gamma.append(fam.J)
        alpha = [0] * k
        for j, c in zip(sorted(fam.J), fam.coefficients):
            alpha[j] = c
        column = code.encoder.column(i)
        if q == 2:
            J = member_class[i]
            assert set(J) == {j for j in range(k) if column[j]}
            images.append(hk.index_of(tuple(alpha), column))
        else:
            lam, u = normalize(alpha, F)
            v = tuple(F.mul(lam, x) for x in column)
            images.append(hk.index_of(u, v))
    phi = VertexMap(G.m, hk.graph.m, tuple(images))
    certified = verify_homomorphism(complement(G), complement(hk.graph), phi)
    return Extraction(phi, k, q, tuple(gamma), classes, certified)


# -- micro-scale vector linear index ------------------------------------------

def vlind_micro(G: Digraph, q: int, t: int, l_max: int, budget: int = DEFAULT_BUDGET) -> Optional[Fraction]:
    """Least ``l / t`` over GF(q)-linear codes on blocks of t symbols per message."""
    if G.m == 0 or t < 1:
        raise InvalidInput("need at least one message and block length t >= 1")
    F = make_field(q)
    n = G.m * t
    full = (1 << n) - 1
    demands = []
    for i in range(G.m):
        known = 0
        for j in G.out_neighbors(i):
            known |= ((1 << t) - 1) << (j * t)
        for s in range(t):
            demands.append((i * t + s, full & ~known))
    spent = 0
    for ell in range(1, min(l_max, n) + 1):
        spent += gaussian_binomial(n, ell, q)
        if spent > budget:
            raise BudgetExceeded(spent, budget, f"vector linear search up to l={ell}")
        if _search_rowspaces(F, n, ell, demands) is not None:
            return Fraction(ell, t)
    return None
