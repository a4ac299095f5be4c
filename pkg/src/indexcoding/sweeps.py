"""Exhaustive and seeded sweeps that exercise both directions of the classification."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .digraph import Digraph, digraph_code, enumerate_digraphs
from .hfamily import build_hk, explicit_code_hk
from .homsearch import VertexMap, precedes
from .lincode import DEFAULT_BUDGET, extract_homomorphism, is_valid_linear_code, lind, pad_code
from .translate import translate_linear


@dataclass
class ClassifyResult:
    m: int
    k: int
    graphs: int = 0
    consistent: int = 0
    extraction_certified: int = 0
    translation_valid: int = 0
    counterexamples: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples and not self.failures

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "q": 2,
            "graphs": self.graphs,
            "consistent": self.consistent,
            "extraction_certified": self.extraction_certified,
            "translation_valid": self.translation_valid,
            "counterexamples": self.counterexamples,
            "failures": self.failures,
            "summary": f"{self.consistent}/{self.graphs} graphs consistent",
        }


def classify(m: int, k: int, budget: int = DEFAULT_BUDGET) -> ClassifyResult:
    """For every digraph on m vertices: a length-k binary code exists iff G <= H^2_k.

    Each positive answer is also pushed through the constructive direction
    that produced it: codes are turned into homomorphisms (and certified),
    homomorphisms are turned into codes (and validated).
    """
    hk = build_hk(2, k)
    code_hk = explicit_code_hk(2, k)
    res = ClassifyResult(m, k)
    for G in enumerate_digraphs(m):
        gid = digraph_code(G)
        res.graphs += 1
        found = lind(G, 2, k, budget)
        phi = precedes(G, hk.graph)
        if (found is not None) == (phi is not None):
            res.consistent += 1
        else:
            res.counterexamples.append({"graph": gid, "code": found is not None, "hom": phi is not None})
        if found is not None:
            # the found code may be shorter than k; extract at its own length and padded to k
            codes = {found[1].length: found[1], k: pad_code(found[1], k)}
            if all(extract_homomorphism(G, c).certified for c in codes.values()):
                res.extraction_certified += 1
            else:
                res.failures.append({"graph": gid, "stage": "extraction"})
        if phi is not None:
            translated = translate_linear(G, hk.graph, phi, code_hk)
            if translated.length == k and is_valid_linear_code(G, translated.encoder) is not None:
                res.translation_valid += 1
            else:
                res.failures.append({"graph": gid, "stage": "translation"})
    return res


def random_digraph(m: int, rng: random.Random, density: float = 0.5) -> Digraph:
    arcs = [(u, v) for u in range(m) for v in range(m) if u != v and rng.random() < density]
    return Digraph.from_arcs(m, arcs)


def blow_up(H: Digraph, m: int, rng: random.Random):
    """A random G on m vertices with a random map phi making ``G <= H``.

    Pairs in the same fiber, or over an arc of H, must be arcs of G; every
    other pair is decided by a coin flip.
    """
    images = tuple(rng.randrange(H.m) for _ in range(m))
    arcs = []
    for u in range(m):
        for v in range(m):
            if u == v:
                continue
            a, b = images[u], images[v]
            if a == b or H.has_arc(a, b) or rng.random() < 0.5:
                arcs.append((u, v))
    return Digraph.from_arcs(m, arcs), VertexMap(m, H.m, images)


@dataclass
class MonotoneResult:
    seed: int
    q: int
    pairs: int = 0
    comparable: int = 0
    violations: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "q": self.q,
            "pairs": self.pairs,
            "comparable": self.comparable,
            "violations": self.violations,
        }


def monotonicity_sweep(m: int, pairs: int, q: int, seed: int, budget: int = DEFAULT_BUDGET) -> MonotoneResult:
    """Sample digraph pairs on m vertices and check ``lind_q`` never drops along ``<=``."""
    rng = random.Random(seed)
    res = MonotoneResult(seed, q)
    cache: dict = {}

    def index(G):
        key = digraph_code(G)
        if key not in cache:
            cache[key] = lind(G, q, G.m, budget)[0]
        return cache[key]

    for _ in range(pairs):
        G, H = random_digraph(m, rng), random_digraph(m, rng)
        res.pairs += 1
        if precedes(G, H) is None:
            continue
        res.comparable += 1
        if index(G) > index(H):
            res.violations.append([digraph_code(G), digraph_code(H)])
    return res
