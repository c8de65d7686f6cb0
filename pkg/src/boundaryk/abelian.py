"""Finitely generated abelian groups over the integers.

Everything here is exact: matrices are lists of lists of Python ``int`` and
no floating point is involved anywhere.  The central tool is the Smith
normal form, from which canonical forms, cokernels and kernels follow.

>>> G = FgAbGroup.parse("Z^2 + Z/2 + Z/3")
>>> str(G)
'Z^2 + Z/6'
>>> str(hom(FgAbGroup.cyclic(6), FgAbGroup.cyclic(4)))
'Z/2'
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from math import gcd, prod
from typing import Iterable, Sequence

Matrix = list[list[int]]

DEFAULT_EXTENSION_CAP = 10_000


class OracleRefused(Exception):
    """Raised when a brute-force computation would exceed its size cap."""


# ---------------------------------------------------------------------------
# integer matrices


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix, inner: int | None = None) -> Matrix:
    """Product of integer matrices.

    ``inner`` gives the shared dimension explicitly, which matters when one of
    the factors has no rows (a 0 x k matrix carries no width information).
    """
    if inner is None:
        inner = len(b) if b else (len(a[0]) if a else 0)
    cols = len(b[0]) if b else 0
    return [
        [sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)]
        for row in a
    ]


def determinant(m: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class IntMatrix:
    """Shape-carrying integer matrix (rows x cols), stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    def to_rows(self) -> Matrix:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return IntMatrix.from_rows(
            matmul(self.to_rows(), other.to_rows(), inner=self.cols), other.cols
        )

    def det(self) -> int:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return determinant(self.to_rows())

    def diagonal(self) -> list[int]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]


def _smallest_nonzero(d: Matrix, t: int) -> tuple[int, int] | None:
    best = None
    best_val = 0
    for i in range(t, len(d)):
        for j in range(t, len(d[i])):
            v = abs(d[i][j])
            if v and (best is None or v < best_val):
                best, best_val = (i, j), v
                if v == 1:
                    return best
    return best


def _smith_rows(m: Matrix, rows: int, cols: int) -> tuple[Matrix, Matrix, Matrix]:
    d = [row[:] for row in m]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i: int, j: int) -> None:
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src: int, dst: int, q: int) -> None:
        # row[dst] += q * row[src]
        d[dst] = [a + q * b for a, b in zip(d[dst], d[src])]
        u[dst] = [a + q * b for a, b in zip(u[dst], u[src])]

    def add_col(src: int, dst: int, q: int) -> None:
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(rows, cols)):
        while True:
            pos = _smallest_nonzero(d, t)
            if pos is None:
                return u, d, v
            swap_rows(t, pos[0])
            swap_cols(t, pos[1])
            if d[t][t] < 0:
                d[t] = [-x for x in d[t]]
                u[t] = [-x for x in u[t]]
            p = d[t][t]
            clean = True
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // p))
                    clean = clean and d[i][t] == 0
            for j in range(t + 1, cols):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // p))
                    clean = clean and d[t][j] == 0
            if not clean:
                # a remainder is now smaller than the pivot; re-pivot on it
                continue
            bad = next(
                (i for i in range(t + 1, rows)
                 if any(d[i][j] % p for j in range(t + 1, cols))),
                None,
            )
            if bad is None:
                break
            # pull the offending row up so its entries get reduced mod p
            add_row(bad, t, 1)
    return u, d, v


def snf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``U @ M @ V == D``.

    ``U`` and ``V`` are unimodular and ``D`` is diagonal with non-negative
    entries forming a divisibility chain (zeros last).
    """
    u, d, v = _smith_rows(m.to_rows(), m.rows, m.cols)
    return (
        IntMatrix.from_rows(u, m.rows),
        IntMatrix.from_rows(d, m.cols),
        IntMatrix.from_rows(v, m.cols),
    )


# ---------------------------------------------------------------------------
# groups

_TERM = re.compile(r"^Z(?:\^(\d+)|/(\d+))?$")


@dataclass(frozen=True)
class FgAbGroup:
    """``Z^rank + Z/d1 + ... + Z/dk`` with ``d1 | d2 | ... | dk`` and each ``di >= 2``.

    Instances are always canonical, so ``==`` is isomorphism.
    """

    rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "invariant_factors", tuple(self.invariant_factors))
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        fs = self.invariant_factors
        if any(f < 2 for f in fs):
            raise ValueError(f"invariant factors must be >= 2, got {fs}")
        if any(b % a for a, b in zip(fs, fs[1:])):
            raise ValueError(f"invariant factors must form a divisibility chain, got {fs}")

    @classmethod
    def free(cls, rank: int) -> FgAbGroup:
        return cls(rank)

    @classmethod
    def cyclic(cls, order: int) -> FgAbGroup:
        """``Z/order``; order 0 means ``Z``."""
        return cls.from_cyclic([order])

    @classmethod
    def from_cyclic(cls, orders: Iterable[int]) -> FgAbGroup:
        """Canonical form of a direct sum of cyclic groups (0 stands for Z)."""
        orders = [abs(int(o)) for o in orders]
        rank = orders.count(0)
        finite = [o for o in orders if o > 1]
        if not finite:
            return cls(rank)
        n = len(finite)
        diag = [[finite[i] if i == j else 0 for j in range(n)] for i in range(n)]
        return cls(rank) + cokernel(IntMatrix.from_rows(diag, n))

    @classmethod
    def parse(cls, text: str) -> FgAbGroup:
        """Parse ``0``, ``Z``, ``Z^r``, ``Z/d`` and ``+``-separated sums of those."""
        text = text.strip()
        if text == "0":
            return cls()
        if not text:
            raise ValueError("empty group expression")
        orders: list[int] = []
        for term in text.split("+"):
            term = term.strip().replace(" ", "")
            if term == "0":
                continue
            match = _TERM.match(term)
            if match is None:
                raise ValueError(f"malformed group term {term!r} in {text!r}")
            power, modulus = match.groups()
            if modulus is not None:
                if int(modulus) == 0:
                    raise ValueError(f"Z/0 is not allowed, write Z ({text!r})")
                orders.append(int(modulus))
            else:
                orders.extend([0] * (int(power) if power is not None else 1))
        return cls.from_cyclic(orders)

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"

    def __add__(self, other: FgAbGroup) -> FgAbGroup:
        return direct_sum(self, other)

    def cyclic_orders(self) -> list[int]:
        """Orders of the canonical generators, free ones first (as 0)."""
        return [0] * self.rank + list(self.invariant_factors)

    def relations(self) -> Matrix:
        """Relation matrix on the canonical generators (one column per factor)."""
        gens = self.num_generators
        return [
            [self.invariant_factors[j] if i == self.rank + j else 0
             for j in range(len(self.invariant_factors))]
            for i in range(gens)
        ]

    @property
    def num_generators(self) -> int:
        return self.rank + len(self.invariant_factors)

    @property
    def torsion(self) -> FgAbGroup:
        return FgAbGroup(0, self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.invariant_factors

    @property
    def is_free(self) -> bool:
        return not self.invariant_factors


TRIVIAL = FgAbGroup()
Z = FgAbGroup(1)


def cokernel(m: IntMatrix) -> FgAbGroup:
    """``Z^rows / image(M)`` in canonical form."""
    _, d, _ = snf(m)
    diag = d.diagonal()
    nonzero = [x for x in diag if x]
    return FgAbGroup(m.rows - len(nonzero), tuple(x for x in nonzero if x > 1))


def direct_sum(a: FgAbGroup, b: FgAbGroup) -> FgAbGroup:
    if not b.invariant_factors:
        return FgAbGroup(a.rank + b.rank, a.invariant_factors)
    if not a.invariant_factors:
        return FgAbGroup(a.rank + b.rank, b.invariant_factors)
    return FgAbGroup(a.rank + b.rank) + FgAbGroup.from_cyclic(
        a.invariant_factors + b.invariant_factors
    )


def sum_groups(groups: Iterable[FgAbGroup]) -> FgAbGroup:
    total = TRIVIAL
    for g in groups:
        total = total + g
    return total


def is_isomorphic(a: FgAbGroup, b: FgAbGroup) -> bool:
    return a == b


def torsion_order(a: FgAbGroup) -> int:
    return prod(a.invariant_factors)


def torsion_generator_count(a: FgAbGroup) -> int:
    return len(a.invariant_factors)


# ---------------------------------------------------------------------------
# functors, computed summand by summand on cyclic decompositions
# (order 0 stands for Z throughout)


def _hom_cyclic(m: int, n: int) -> int | None:
    if m == 0:
        return n
    if n == 0:
        return None
    return gcd(m, n)


def _ext_cyclic(m: int, n: int) -> int | None:
    if m == 0:
        return None
    return gcd(m, n) if n else m


def _tor_cyclic(m: int, n: int) -> int | None:
    if m == 0 or n == 0:
        return None
    return gcd(m, n)


def _tensor_cyclic(m: int, n: int) -> int | None:
    if m == 0:
        return n
    if n == 0:
        return m
    return gcd(m, n)


def _bilinear(rule, a: FgAbGroup, b: FgAbGroup) -> FgAbGroup:
    orders = []
    for m in a.cyclic_orders():
        for n in b.cyclic_orders():
            c = rule(m, n)
            if c is not None and c != 1:
                orders.append(c)
    return FgAbGroup.from_cyclic(orders)


def hom(a: FgAbGroup, b: FgAbGroup) -> FgAbGroup:
    """``Hom(a, b)``."""
    return _bilinear(_hom_cyclic, a, b)


def ext(a: FgAbGroup, b: FgAbGroup) -> FgAbGroup:
    """``Ext^1(a, b)``."""
    return _bilinear(_ext_cyclic, a, b)


def tor(a: FgAbGroup, b: FgAbGroup) -> FgAbGroup:
    return _bilinear(_tor_cyclic, a, b)


def tensor(a: FgAbGroup, b: FgAbGroup) -> FgAbGroup:
    return _bilinear(_tensor_cyclic, a, b)


# ---------------------------------------------------------------------------
# homomorphisms between groups in canonical presentation


def _nullspace(m: Matrix, rows: int, cols: int) -> Matrix:
    """Columns spanning the integer kernel of ``m`` (cols x k)."""
    u, d, v = _smith_rows(m, rows, cols)
    r = sum(1 for i in range(min(rows, cols)) if d[i][i])
    return [row[r:] for row in v]


@dataclass(frozen=True)
class GroupMap:
    """A homomorphism ``source -> target`` given on canonical generators.

    ``matrix`` has one row per target generator and one column per source
    generator.
    """

    source: FgAbGroup
    target: FgAbGroup
    matrix: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in r) for r in self.matrix)
        if not rows and self.target.num_generators:
            rows = tuple((0,) * self.source.num_generators
                         for _ in range(self.target.num_generators))
        object.__setattr__(self, "matrix", rows)
        if len(rows) != self.target.num_generators or any(
            len(r) != self.source.num_generators for r in rows
        ):
            raise ValueError("map matrix does not match generator counts")
        # well-defined: relations of the source must land in im(target relations)
        images = matmul([list(r) for r in rows], self.source.relations(),
                        inner=self.source.num_generators)
        rel_b = self.target.relations()
        q = self.target.num_generators
        joined = [rel_b[i] + images[i] for i in range(q)]
        if cokernel(IntMatrix.from_rows(joined, len(joined[0]) if joined else 0)) != \
                cokernel(IntMatrix.from_rows(rel_b, len(rel_b[0]) if rel_b else 0)):
            raise ValueError("matrix does not define a homomorphism")

    @classmethod
    def zero(cls, source: FgAbGroup, target: FgAbGroup) -> GroupMap:
        return cls(source, target)

    def _stacked(self) -> tuple[Matrix, int, int]:
        # [F | R_B]: q x (p + r_b)
        q = self.target.num_generators
        rel_b = self.target.relations()
        stacked = [list(self.matrix[i]) + rel_b[i] for i in range(q)]
        return stacked, q, self.source.num_generators + len(self.target.invariant_factors)


def map_cokernel(f: GroupMap) -> FgAbGroup:
    stacked, q, c = f._stacked()
    return cokernel(IntMatrix(q, c, tuple(x for row in stacked for x in row)))


def map_kernel(f: GroupMap) -> FgAbGroup:
    """Kernel of ``f`` as an abstract group.

    The preimage lattice ``L = {x in Z^p : F x in im R_B}`` is computed from the
    integer nullspace of ``[F | R_B]``; the kernel is ``L / im R_A``.
    """
    p = f.source.num_generators
    stacked, q, c = f._stacked()
    if q == 0:
        return f.source
    null = _nullspace(stacked, q, c)
    gens = [row for row in null[:p]]  # p x k generating set of L
    k = len(gens[0]) if gens else 0
    if p == 0:
        return TRIVIAL
    # basis of L: U G V = D  =>  L = span{d_i * U^{-1} e_i}
    u, d, _ = _smith_rows(gens, p, k)
    nonzero = [d[i][i] for i in range(min(p, k)) if d[i][i]]
    rel_a = f.source.relations()
    if not rel_a or not rel_a[0]:
        return FgAbGroup(len(nonzero))
    coords = matmul(u, rel_a, inner=p)
    r = len(nonzero)
    for i in range(r, p):
        if any(coords[i]):
            raise ArithmeticError("source relations not contained in the preimage lattice")
    c_rows = []
    for i in range(r):
        row = []
        for x in coords[i]:
            qd, rem = divmod(x, nonzero[i])
            if rem:
                raise ArithmeticError("source relations not contained in the preimage lattice")
            row.append(qd)
        c_rows.append(row)
    return cokernel(IntMatrix.from_rows(c_rows, len(rel_a[0])))


# ---------------------------------------------------------------------------
# extensions


def enumerate_extensions(
    a: FgAbGroup, b: FgAbGroup, cap: int = DEFAULT_EXTENSION_CAP
) -> frozenset[FgAbGroup]:
    """All groups ``G`` (up to isomorphism) with ``0 -> a -> G -> b -> 0`` exact.

    Every class in ``Ext(b, a) = sum_j a / b_j a`` is turned into an explicit
    presentation (generators of ``a`` plus lifts ``g_j`` with ``b_j g_j = alpha_j``)
    and canonicalised.  The free part of ``b`` always splits off.  Free
    summands of ``a`` beyond the number of torsion generators of ``b`` split
    off as well, since the classes span a saturated summand of at most that
    rank.

    Raises :class:`OracleRefused` when ``|a_t| * |b_t|`` or the number of
    classes to visit exceeds ``cap``.
    """
    if torsion_order(a) * torsion_order(b) > cap:
        raise OracleRefused(
            f"|A_t|*|B_t| = {torsion_order(a) * torsion_order(b)} exceeds cap {cap}"
        )
    bs = b.invariant_factors
    active_free = min(a.rank, len(bs))
    split_free = a.rank - active_free + b.rank
    a_orders = [0] * active_free + list(a.invariant_factors)

    choices_per_b = []
    count = 1
    for bj in bs:
        ranges = [range(bj) if o == 0 else range(gcd(o, bj)) for o in a_orders]
        choices_per_b.append(ranges)
        count *= prod(len(rg) for rg in ranges)
        if count > cap:
            raise OracleRefused(f"more than {cap} extension classes")

    m = len(a_orders)
    k = len(bs)
    base_cols = [[o if i == g else 0 for i in range(m + k)]
                 for g, o in enumerate(a_orders) if o]
    found = set()
    per_b = [list(itertools.product(*ranges)) for ranges in choices_per_b]
    for classes in itertools.product(*per_b):
        cols = list(base_cols)
        for j, alpha in enumerate(classes):
            col = [-x for x in alpha] + [0] * k
            col[m + j] = bs[j]
            cols.append(col)
        rows = [[col[i] for col in cols] for i in range(m + k)]
        g = cokernel(IntMatrix.from_rows(rows, len(cols)))
        found.add(g + FgAbGroup(split_free))
    return frozenset(found)
