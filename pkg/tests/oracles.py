"""Slow, obviously-correct reference implementations used only by the tests."""

import itertools
from fractions import Fraction

from indexcoding.digraph import Digraph


def poly_mul_oracle(a, b, p, modulus):
    """Multiply field elements a, b given as integers in base p, reduce by modulus."""
    d = len(modulus) - 1
    da = [(a // p**i) % p for i in range(d)]
    db = [(b // p**i) % p for i in range(d)]
    prod = [0] * (2 * d)
    for i in range(d):
        for j in range(d):
            prod[i + j] += da[i] * db[j]
    # x^d = -(modulus[0] + ... + modulus[d-1] x^{d-1})
    for top in reversed(range(d, 2 * d)):
        c = prod[top]
        prod[top] = 0
        for i in range(d):
            prod[top - d + i] -= c * modulus[i]
    return sum((prod[i] % p) * p**i for i in range(d))


def span(rows, F):
    n = len(rows[0]) if rows else 0
    out = set()
    for coeffs in itertools.product(range(F.q), repeat=len(rows)):
        v = [0] * n
        for c, r in zip(coeffs, rows):
            v = [F.add(x, F.mul(c, y)) for x, y in zip(v, r)]
        out.add(tuple(v))
    return out


def rank_oracle(rows, F):
    size = len(span(rows, F)) if rows else 1
    r = 0
    while F.q**r < size:
        r += 1
    return r


def decodable_oracle(G: Digraph, rows, F):
    """Receiver i fails iff some kernel vector vanishes on its side information but not at i."""
    m = G.m
    kernel = [z for z in itertools.product(range(F.q), repeat=m) if all(_dot(F, r, z) == 0 for r in rows)]
    for i in range(m):
        side = G.out_neighbors(i)
        for z in kernel:
            if z[i] and not any(z[j] for j in side):
                return False
    return True


def _dot(F, r, z):
    acc = 0
    for a, b in zip(r, z):
        acc = F.add(acc, F.mul(a, b))
    return acc


def lind_oracle(G: Digraph, F):
    """Shortest length of a valid scalar linear code, by trying every matrix."""
    m = G.m
    for ell in range(1, m + 1):
        for entries in itertools.product(range(F.q), repeat=ell * m):
            rows = [entries[r * m:(r + 1) * m] for r in range(ell)]
            if decodable_oracle(G, rows, F):
                return ell
    return m


def hom_oracle(G: Digraph, H: Digraph):
    for images in itertools.product(range(H.m), repeat=G.m):
        if all(H.has_arc(images[u], images[v]) for u, v in G.arcs()):
            return images
    return None


def chromatic_oracle(U):
    for c in range(U.m + 1):
        for col in itertools.product(range(c), repeat=U.m):
            if all(col[u] != col[v] for u, v in U.edges()):
                return c
    return U.m


def cover_is_feasible(U, cover):
    """Every vertex gets total weight >= 1 from independent sets."""
    for s in cover:
        members = [v for v in range(U.m) if s >> v & 1]
        if any(U.adj[a] >> b & 1 for a in members for b in members):
            return False
    return all(sum(w for s, w in cover.items() if s >> v & 1) >= 1 for v in range(U.m))


def weights_are_feasible(U, y):
    """No independent set carries more than 1 in total."""
    for mask in range(1 << U.m):
        members = [v for v in range(U.m) if mask >> v & 1]
        if any(U.adj[a] >> b & 1 for a in members for b in members):
            continue
        if sum((y[v] for v in members), Fraction(0)) > 1:
            return False
    return True


def cycle(m):
    return Digraph.from_arcs(m, [(i, (i + 1) % m) for i in range(m)])


def bidirected_cycle(m):
    return Digraph.from_arcs(m, [(i, (i + s) % m) for i in range(m) for s in (1, m - 1)])
