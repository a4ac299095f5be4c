"""Carry index codes backwards along a homomorphism of complements.

Given ``phi`` from the complement of G to the complement of H, every fiber
``phi^-1(w)`` is a bidirectional clique of G, and an arc ``w -> w'`` of H
lifts to all arcs between the two fibers.  A code for H therefore becomes a
code for G of the same length by feeding H's encoder one combined value per
fiber.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Callable, Sequence

from .digraph import Digraph, complement
from .errors import BudgetExceeded, InvalidCode, InvalidInput, InvalidWitness
from .field import FieldMatrix
from .homsearch import VertexMap, verify_homomorphism
from .lincode import LinearCode, check_decoders, decoder_from_alpha, is_valid_linear_code

DEFAULT_TABLE_BUDGET = 100_000


def cw_one_to_one(x_size: int, m: int) -> Callable[..., int]:
    """Sum modulo ``x_size``: bijective in each argument once the others are fixed."""
    if x_size < 1 or m < 1:
        raise InvalidInput("need x_size >= 1 and m >= 1")

    def f(*args: int) -> int:
        if len(args) != m:
            raise InvalidInput(f"expected {m} arguments, got {len(args)}")
        return sum(args) % x_size

    f.x_size = x_size
    f.arity = m
    return f


def is_coordinatewise_one_to_one(f: Callable[..., int], x_size: int, m: int) -> bool:
    for j in range(m):
        for rest in itertools.product(range(x_size), repeat=m - 1):
            images = {f(*rest[:j], a, *rest[j:]) for a in range(x_size)}
            if len(images) != x_size:
                return False
    return True


def _check_witness(G: Digraph, H: Digraph, phi: VertexMap) -> None:
    if phi.source_size != G.m or phi.target_size != H.m:
        raise InvalidWitness("map sizes do not match the graphs")
    if not verify_homomorphism(complement(G), complement(H), phi):
        raise InvalidWitness("map is not a homomorphism between the complements")


def translate_linear(G: Digraph, H: Digraph, phi: VertexMap, code_H: LinearCode) -> LinearCode:
    """Replace each H-message ``x_w`` by the fiber sum over ``phi^-1(w)``."""
    _check_witness(G, H, phi)
    if code_H.m != H.m or is_valid_linear_code(H, code_H.encoder) is None:
        raise InvalidCode("code_H is not a valid code for H")
    enc_H = code_H.encoder
    rows = [[enc_H[r, phi[v]] for v in range(G.m)] for r in range(enc_H.rows)]
    M = FieldMatrix.from_rows(code_H.field, rows, G.m)
    alphas = code_H.decoders
    if alphas is None or not check_decoders(H, code_H):
        alphas = is_valid_linear_code(H, enc_H)
    decoders = []
    for v in range(G.m):
        # receiver v reuses the decoding combination of its fiber's receiver
        dec = decoder_from_alpha(G, M, v, alphas[phi[v]].alpha)
        if dec is None:
            raise AssertionError(f"lifted decoder fails at vertex {v}")
        decoders.append(dec)
    return LinearCode(M, tuple(decoders))


@dataclass(frozen=True)
class GroupCode:
    """Index code over the alphabet ``Z_X`` stored as explicit tables.

    ``encoder[idx]`` is the broadcast for the message tuple number ``idx`` in
    ``itertools.product`` order; ``decoders[i]`` maps ``(y, side)`` to ``x_i``
    where ``side`` lists the messages of ``side_info[i]`` in increasing order.
    """

    alphabet_size: int
    n: int
    length: int
    encoder: tuple[tuple[int, ...], ...]
    side_info: tuple[tuple[int, ...], ...]
    decoders: tuple[dict, ...]

    def encode(self, x: Sequence[int]) -> tuple[int, ...]:
        return self.encoder[_tuple_index(x, self.alphabet_size)]

    def decode(self, i: int, y: Sequence[int], x: Sequence[int]) -> int:
        side = tuple(x[j] for j in self.side_info[i])
        return self.decoders[i][(tuple(y), side)]

    def to_json(self) -> dict:
        return {
            "alphabet": self.alphabet_size,
            "n": self.n,
            "l": self.length,
            "encoder": [list(y) for y in self.encoder],
            "side_info": [list(s) for s in self.side_info],
            "decoders": [
                [list(y) + list(side) + [x] for (y, side), x in sorted(table.items())]
                for table in self.decoders
            ],
        }

    @classmethod
    def from_json(cls, data) -> "GroupCode":
        if isinstance(data, str):
            data = json.loads(data)
        ell = int(data["l"])
        side_info = tuple(tuple(s) for s in data["side_info"])
        decoders = []
        for i, rows in enumerate(data["decoders"]):
            k = len(side_info[i])
            decoders.append({(tuple(r[:ell]), tuple(r[ell:ell + k])): r[ell + k] for r in rows})
        return cls(
            int(data["alphabet"]),
            int(data["n"]),
            ell,
            tuple(tuple(y) for y in data["encoder"]),
            side_info,
            tuple(decoders),
        )


def _tuple_index(x: Sequence[int], base: int) -> int:
    idx = 0
    for a in x:
        idx = idx * base + a
    return idx


def _all_inputs(base: int, n: int, budget: int):
    if base**n > budget:
        raise BudgetExceeded(base**n, budget, "exhaustive table")
    return itertools.product(range(base), repeat=n)


def tabulate_code(
    G: Digraph,
    alphabet_size: int,
    encode: Callable[[tuple], tuple],
    decode: Callable[[int, tuple, tuple], int],
    budget: int = DEFAULT_TABLE_BUDGET,
) -> GroupCode:
    """Build the tables of a code and check every receiver on every input."""
    side_info = tuple(tuple(G.out_neighbors(i)) for i in range(G.m))
    encoder = []
    tables: list[dict] = [{} for _ in range(G.m)]
    length = None
    for x in _all_inputs(alphabet_size, G.m, budget):
        y = tuple(encode(x))
        length = len(y) if length is None else length
        encoder.append(y)
        for i in range(G.m):
            side = tuple(x[j] for j in side_info[i])
            got = decode(i, y, x)
            if got != x[i]:
                raise InvalidCode(f"receiver {i} decodes {got} instead of {x[i]} on input {x}")
            prev = tables[i].setdefault((y, side), got)
            if prev != got:
                raise InvalidCode(f"receiver {i} cannot separate inputs sharing broadcast {y}")
    return GroupCode(alphabet_size, G.m, length or 0, tuple(encoder), side_info, tuple(tables))


def verify_group_code(G: Digraph, code: GroupCode, budget: int = DEFAULT_TABLE_BUDGET) -> bool:
    """Exhaustive check that every receiver recovers its message from its table."""
    if code.n != G.m:
        return False
    side_info = tuple(tuple(G.out_neighbors(i)) for i in range(G.m))
    if any(set(code.side_info[i]) - set(side_info[i]) for i in range(G.m)):
        return False
    for x in _all_inputs(code.alphabet_size, G.m, budget):
        y = code.encode(x)
        for i in range(G.m):
            try:
                if code.decode(i, y, x) != x[i]:
                    return False
            except KeyError:
                return False
    return True


def group_code_from_linear(H: Digraph, code: LinearCode, budget: int = DEFAULT_TABLE_BUDGET) -> GroupCode:
    """Tabulate a linear code over a prime field as a code over ``Z_q``."""
    if code.field.degree != 1:
        raise InvalidInput("only prime fields coincide with Z_q")
    if code.decoders is None:
        code = LinearCode(code.encoder, is_valid_linear_code(H, code.encoder))
    return tabulate_code(H, code.q, code.encode, lambda i, y, x: code.decode(i, y, x), budget)


def relabel_broadcast(code: GroupCode, perm: dict) -> GroupCode:
    """Compose the encoder with a bijection of broadcast words (a non-linear code)."""
    encoder = tuple(perm[y] for y in code.encoder)
    decoders = tuple({(perm[y], side): x for (y, side), x in t.items()} for t in code.decoders)
    return GroupCode(code.alphabet_size, code.n, code.length, encoder, code.side_info, decoders)


def translate_group(
    G: Digraph,
    H: Digraph,
    phi: VertexMap,
    code_H: GroupCode,
    make_summary: Callable[[int, int], Callable[..., int]] = cw_one_to_one,
    budget: int = DEFAULT_TABLE_BUDGET,
) -> GroupCode:
    """Translate a table code for H into one for G over the same alphabet.

    Fiber ``w`` is summarized as ``s_w = f(fiber values)`` with f built by
    ``make_summary(alphabet_size, fiber_size)`` (0 for an empty fiber).  Receiver ``v`` in fiber ``w`` evaluates the summaries of the
    fibers of ``N+_H(w)`` from its side information, runs H's decoder for
    ``w`` to obtain ``s_w``, then inverts f in its own coordinate using the
    other fiber members it already knows.
    """
    _check_witness(G, H, phi)
    X = code_H.alphabet_size
    if code_H.n != H.m or not verify_group_code(H, code_H, budget):
        raise InvalidCode("code_H is not a valid code for H")
    fibers = phi.fibers()
    summaries = {w: make_summary(X, len(fib)) for w, fib in enumerate(fibers) if fib}

    def summary(w: int, x: Sequence[int]) -> int:
        fib = fibers[w]
        return summaries[w](*(x[v] for v in fib)) if fib else 0

    def encode(x):
        return code_H.encode([summary(w, x) for w in range(H.m)])

    def decode(v, y, x):
        w = phi[v]
        known = {u: x[u] for u in G.out_neighbors(v)}
        side = tuple(summary(w2, [known.get(u, 0) for u in range(G.m)]) for w2 in code_H.side_info[w])
        s_w = code_H.decoders[w][(tuple(y), side)]
        fib = fibers[w]
        pos = fib.index(v)
        args = [known[u] if u != v else 0 for u in fib]
        for a in range(X):
            args[pos] = a
            if summaries[w](*args) == s_w:
                return a
        raise AssertionError("summary function is not invertible in its coordinate")

    return tabulate_code(G, X, encode, decode, budget)
