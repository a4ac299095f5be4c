"""Finite fields GF(q), q <= 16, and dense matrices over them.

Elements are integers in ``[0, q)``.  For prime ``q`` they are residues; for
``q = p**d`` the integer ``sum(c_i * p**i)`` encodes the polynomial
``sum(c_i * x**i)`` reduced modulo a pinned irreducible polynomial, namely the
monic irreducible of degree ``d`` whose lower coefficients, read as a base-p
integer, are smallest.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .errors import DimensionMismatch, NotPrimePower, Unsupported

MAX_Q = 16

Vector = tuple


def _factor_prime_power(q: int) -> Optional[tuple[int, int]]:
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    d, rest = 0, q
    while rest % p == 0:
        rest //= p
        d += 1
    return (p, d) if rest == 1 else None


def _poly_mulmod(a: list[int], b: list[int], modulus: list[int], p: int) -> list[int]:
    d = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # modulus is monic
    for top in range(len(prod) - 1, d - 1, -1):
        c = prod[top]
        if c:
            for i in range(d + 1):
                prod[top - d + i] = (prod[top - d + i] - c * modulus[i]) % p
    return (prod + [0] * d)[:d]


def _digits(x: int, p: int, d: int) -> list[int]:
    out = []
    for _ in range(d):
        x, r = divmod(x, p)
        out.append(r)
    return out


def _from_digits(ds: Sequence[int], p: int) -> int:
    return sum(c * p**i for i, c in enumerate(ds))


def _is_irreducible(modulus: list[int], p: int) -> bool:
    """True iff the monic polynomial is irreducible over GF(p) (degree <= 4)."""
    d = len(modulus) - 1
    # a reducible polynomial of degree d has a monic factor of degree <= d // 2
    for fd in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=fd):
            factor = list(low) + [1]
            if _poly_divides(factor, modulus, p):
                return False
    return True


def _poly_divides(f: list[int], g: list[int], p: int) -> bool:
    r = list(g)
    df = len(f) - 1
    for top in range(len(r) - 1, df - 1, -1):
        c = r[top]
        if c:
            for i in range(df + 1):
                r[top - df + i] = (r[top - df + i] - c * f[i]) % p
    return not any(r[:df])


def least_irreducible(p: int, d: int) -> tuple[int, ...]:
    """Monic irreducible of degree ``d`` over GF(p), coefficients low to high."""
    for code in range(p**d):
        modulus = _digits(code, p, d) + [1]
        if modulus[0] and _is_irreducible(modulus, p):
            return tuple(modulus)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True, eq=False)
class Field:
    q: int
    p: int
    degree: int
    modulus: tuple[int, ...]
    add_table: tuple[tuple[int, ...], ...]
    mul_table: tuple[tuple[int, ...], ...]
    neg_table: tuple[int, ...]
    inv_table: tuple[int, ...]
    exp_table: tuple[int, ...]
    log_table: tuple[int, ...]

    def __eq__(self, other):
        return isinstance(other, Field) and (self.q, self.modulus) == (other.q, other.modulus)

    def __hash__(self):
        return hash((self.q, self.modulus))

    def __repr__(self):
        return f"GF({self.q})"

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.inv_table[a]

    def div(self, a: int, b: int) -> int:
        return self.mul_table[a][self.inv(b)]

    @property
    def generator(self) -> int:
        return self.exp_table[1] if self.q > 2 else 1

    def describe(self) -> dict:
        """JSON-friendly identity of the field, pinned modulus included."""
        return {"q": self.q, "p": self.p, "degree": self.degree, "modulus": list(self.modulus)}


def _check_field_axioms(q, add, mul, neg, inv):
    for a in range(q):
        if add[a][0] != a or mul[a][1] != a or add[a][neg[a]] != 0:
            raise AssertionError("identity/negation failure")
        if a and mul[a][inv[a]] != 1:
            raise AssertionError("inverse failure")
        for b in range(q):
            if add[a][b] != add[b][a] or mul[a][b] != mul[b][a]:
                raise AssertionError("commutativity failure")
            for c in range(q):
                if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
                    raise AssertionError("distributivity failure")


@lru_cache(maxsize=None)
def make_field(q: int) -> Field:
    """Build GF(q) with verified arithmetic tables."""
    if not isinstance(q, int) or isinstance(q, bool):
        raise NotPrimePower(f"field order must be an integer, got {q!r}")
    pd = _factor_prime_power(q)
    if pd is None:
        raise NotPrimePower(f"{q} is not a prime power")
    if q > MAX_Q:
        raise Unsupported(f"fields larger than {MAX_Q} are not supported (q={q})")
    p, d = pd
    modulus = least_irreducible(p, d) if d > 1 else ()
    digits = [_digits(a, p, d) for a in range(q)]
    add = tuple(
        tuple(_from_digits([(x + y) % p for x, y in zip(digits[a], digits[b])], p) for b in range(q))
        for a in range(q)
    )
    neg = tuple(_from_digits([(-x) % p for x in digits[a]], p) for a in range(q))
    if d == 1:
        poly_mul = [[(a * b) % p for b in range(q)] for a in range(q)]
    else:
        poly_mul = [
            [_from_digits(_poly_mulmod(digits[a], digits[b], list(modulus), p), p) for b in range(q)]
            for a in range(q)
        ]
    # log/antilog tables from the smallest primitive element
    exp_table: list[int] = [1]
    for g in range(2, q) if q > 2 else [1]:
        powers = [1]
        x = g
        while x != 1:
            powers.append(x)
            x = poly_mul[x][g]
        if len(powers) == q - 1:
            exp_table = powers
            break
    log_table = [0] * q
    for e, x in enumerate(exp_table):
        log_table[x] = e

    def tmul(a, b):
        if a == 0 or b == 0:
            return 0
        return exp_table[(log_table[a] + log_table[b]) % (q - 1)]

    mul = tuple(tuple(tmul(a, b) for b in range(q)) for a in range(q))
    if [list(r) for r in mul] != poly_mul:
        raise AssertionError("log tables disagree with polynomial arithmetic")
    inv = tuple(0 if a == 0 else exp_table[(-log_table[a]) % (q - 1)] for a in range(q))
    _check_field_axioms(q, add, mul, neg, inv)
    return Field(q, p, d, tuple(modulus), add, mul, neg, inv, tuple(exp_table), tuple(log_table))


@dataclass(frozen=True)
class FieldMatrix:
    """Dense immutable matrix over a :class:`Field`."""

    field: Field
    entries: tuple[tuple[int, ...], ...]
    cols: int

    def __post_init__(self):
        q = self.field.q
        for row in self.entries:
            if len(row) != self.cols:
                raise DimensionMismatch("ragged matrix rows")
            for x in row:
                if not 0 <= x < q:
                    raise ValueError(f"entry {x} outside GF({q})")

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "FieldMatrix":
        entries = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            if not entries:
                raise DimensionMismatch("cannot infer width of an empty matrix")
            cols = len(entries[0])
        return cls(field, entries, cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "FieldMatrix":
        return cls.from_rows(field, [[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "FieldMatrix":
        return cls(field, tuple((0,) * cols for _ in range(rows)), cols)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix(self.field, tuple(self.columns()), self.rows)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def apply(self, x: Sequence[int]) -> Vector:
        """Matrix-vector product ``M @ x``."""
        if len(x) != self.cols:
            raise DimensionMismatch(f"vector of length {len(x)} for {self.cols} columns")
        return tuple(dot(r, x, self.field) for r in self.entries)

    def left_apply(self, a: Sequence[int]) -> Vector:
        """Row-vector product ``a @ M``."""
        if len(a) != self.rows:
            raise DimensionMismatch(f"vector of length {len(a)} for {self.rows} rows")
        return lin_comb(a, self.entries, self.field, self.cols)


def dot(u: Sequence[int], v: Sequence[int], field: Field) -> int:
    add, mul = field.add_table, field.mul_table
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = add[acc][mul[a][b]]
    return acc


def lin_comb(coeffs: Sequence[int], vectors: Sequence[Sequence[int]], field: Field, length: int) -> Vector:
    add, mul = field.add_table, field.mul_table
    acc = [0] * length
    for c, vec in zip(coeffs, vectors):
        if c:
            mc = mul[c]
            for t, x in enumerate(vec):
                if x:
                    acc[t] = add[acc[t]][mc[x]]
    return tuple(acc)


def row_reduce(rows: Sequence[Sequence[int]], field: Field) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form (zero rows dropped) and pivot columns."""
    add, mul, neg, inv = field.add_table, field.mul_table, field.neg_table, field.inv_table
    work = [list(r) for r in rows]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(work)) if work[i][c]), None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        s = inv[work[r][c]]
        if s != 1:
            ms = mul[s]
            work[r] = [ms[x] for x in work[r]]
        prow = work[r]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = mul[neg[work[i][c]]]
                row = work[i]
                work[i] = [add[x][f[y]] for x, y in zip(row, prow)]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rank(M: FieldMatrix) -> int:
    """Rank over the matrix's field by Gaussian elimination with table lookups."""
    return len(row_reduce(M.entries, M.field)[1])


def in_affine_span(
    target: Sequence[int], generators: Sequence[Sequence[int]], field: Field
) -> Optional[Vector]:
    """Coefficients ``c`` with ``sum(c[j] * generators[j]) == target``, or None.

    The solution is canonical: pivots are taken at the lowest-index generators
    and every free coefficient is zero.
    """
    n = len(target)
    for g in generators:
        if len(g) != n:
            raise DimensionMismatch(f"generator of length {len(g)}, target of length {n}")
    k = len(generators)
    # one equation per coordinate: sum_j g_j[t] c_j = target[t]
    aug = [[generators[j][t] for j in range(k)] + [target[t]] for t in range(n)]
    red, pivots = row_reduce(aug, field) if aug else ([], [])
    if k in pivots:
        return None
    coeffs = [0] * k
    for row, c in zip(red, pivots):
        coeffs[c] = row[k]
    return tuple(coeffs)


def vectors(field: Field, n: int) -> Iterator[Vector]:
    """All of GF(q)^n in base-q counter order (coordinate 0 least significant)."""
    for digits in itertools.product(range(field.q), repeat=n):
        yield tuple(reversed(digits))


def vector_index(v: Sequence[int], q: int) -> int:
    return sum(x * q**i for i, x in enumerate(v))


def projective_points(field: Field, n: int) -> list[Vector]:
    """Nonzero vectors whose first nonzero coordinate is 1, in counter order."""
    return [v for v in vectors(field, n) if any(v) and v[next(i for i, x in enumerate(v) if x)] == 1]


def normalize(v: Sequence[int], field: Field) -> tuple[int, Vector]:
    """Split nonzero ``v`` as ``lam * u`` with ``u`` projectively normalized."""
    lam = next(x for x in v if x)
    s = field.inv(lam)
    return lam, tuple(field.mul(s, x) for x in v)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def iter_rref(field: Field, k: int, n: int) -> Iterator[tuple[Vector, ...]]:
    """Every full-rank k x n reduced row echelon matrix, one per row space.

    Order: pivot tuples lexicographically, then free entries in product order.
    """
    q = field.q
    for pivots in itertools.combinations(range(n), k):
        pivot_set = set(pivots)
        free = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, n) if c not in pivot_set]
        base = [[0] * n for _ in range(k)]
        for r, p in enumerate(pivots):
            base[r][p] = 1
        for values in itertools.product(range(q), repeat=len(free)):
            for (r, c), x in zip(free, values):
                base[r][c] = x
            yield tuple(tuple(row) for row in base)
