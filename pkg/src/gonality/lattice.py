"""Exact lattice linear algebra over Z.

Matrices are plain lists of integer rows.  A :class:`Lattice` stores its basis
in row-style Hermite normal form: rows are upper echelon, pivots positive,
entries above each pivot reduced into ``[0, pivot)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InfiniteIndex, NotSublattice

Matrix = list[list[int]]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def det(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free Bareiss elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class Lattice:
    """Free Z-module inside Z^ambient_rank with an HNF row basis."""

    ambient_rank: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def pivots(self) -> list[int]:
        return [_pivot_col(r) for r in self.basis]

    def is_full_rank(self) -> bool:
        return self.rank == self.ambient_rank

    def determinant(self) -> int:
        """Index in Z^n of a full-rank lattice (product of HNF pivots)."""
        if not self.is_full_rank():
            raise InfiniteIndex("lattice is not of full rank")
        out = 1
        for row, col in zip(self.basis, self.pivots()):
            out *= row[col]
        return out


def _pivot_col(row: Sequence[int]) -> int:
    for j, x in enumerate(row):
        if x:
            return j
    return -1


class _HNFBuilder:
    """Incremental row HNF: insert vectors one at a time, keep pivots reduced."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, list[int]] = {}

    def insert(self, vec: Sequence[int]) -> None:
        v = list(vec)
        changed = False
        rows = self.rows
        for col in range(self.ncols):
            b = v[col]
            if b == 0:
                continue
            r = rows.get(col)
            if r is None:
                if b < 0:
                    v = [-x for x in v]
                rows[col] = v
                changed = True
                break
            a = r[col]
            if b % a == 0:
                q = b // a
                v = [x - q * y for x, y in zip(v, r)]
                continue
            g, x, y = xgcd(a, b)
            ag, bg = a // g, b // g
            rows[col] = [x * p + y * w for p, w in zip(r, v)]
            v = [ag * w - bg * p for p, w in zip(r, v)]
            changed = True
        if changed:
            self._reduce()

    def _reduce(self) -> None:
        cols = sorted(self.rows)
        for idx in range(len(cols)):
            c = cols[idx]
            piv_row = self.rows[c]
            p = piv_row[c]
            for c2 in cols[:idx]:
                row = self.rows[c2]
                q = row[c] // p
                if q:
                    self.rows[c2] = [x - q * y for x, y in zip(row, piv_row)]

    def lattice(self) -> Lattice:
        basis = tuple(tuple(self.rows[c]) for c in sorted(self.rows))
        return Lattice(self.ncols, basis)


def hnf(m: Sequence[Sequence[int]], ncols: int | None = None) -> Lattice:
    """Row-style Hermite normal form of the row span of ``m``; zero rows dropped."""
    if ncols is None:
        if not m:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(m[0])
    builder = _HNFBuilder(ncols)
    for row in m:
        if len(row) != ncols:
            raise ValueError("ragged matrix")
        if any(row):
            builder.insert(row)
    return builder.lattice()


def lattice_from_basis(rows: Sequence[Sequence[int]], ambient_rank: int) -> Lattice:
    return hnf(rows, ambient_rank)


def full_lattice(n: int) -> Lattice:
    return Lattice(n, tuple(tuple(r) for r in identity(n)))


def coordinates(lat: Lattice, v: Sequence[int]) -> list[int] | None:
    """Integer coordinates of ``v`` in the HNF basis of ``lat``, or None if ``v`` is not in it."""
    if len(v) != lat.ambient_rank:
        raise ValueError("vector length does not match ambient rank")
    w = list(v)
    coords = []
    for row in lat.basis:
        c = _pivot_col(row)
        # Entries left of this pivot must already be cleared.
        if any(w[j] for j in range(c)):
            return None
        q, r = divmod(w[c], row[c])
        if r:
            return None
        coords.append(q)
        if q:
            w = [x - q * y for x, y in zip(w, row)]
    if any(w):
        return None
    return coords


def lattice_contains(lat: Lattice, v: Sequence[int]) -> bool:
    return coordinates(lat, v) is not None


def lattice_index(sub: Lattice, sup: Lattice) -> int:
    """``|sup : sub|`` for a full-rank-in-``sup`` sublattice."""
    if sub.ambient_rank != sup.ambient_rank:
        raise ValueError("ambient ranks differ")
    coords = []
    for row in sub.basis:
        c = coordinates(sup, row)
        if c is None:
            raise NotSublattice(f"{list(row)} is not in the super-lattice")
        coords.append(c)
    if sub.rank < sup.rank:
        raise InfiniteIndex(f"rank {sub.rank} < rank {sup.rank}")
    return abs(det(coords))


def snf(m: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[list[int], Matrix, Matrix]:
    """Smith normal form: ``(diag, left, right)`` with ``left @ m @ right`` diagonal.

    ``left`` and ``right`` are unimodular; the diagonal (length ``min(rows, cols)``)
    is nonnegative and each entry divides the next.
    """
    nrows = len(m)
    if ncols is None:
        ncols = len(m[0]) if nrows else 0
    a = [list(r) for r in m]
    left = identity(nrows)
    right = identity(ncols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + q * y for x, y in zip(left[dst], left[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in a:
            row[dst] += q * row[src]
        for row in right:
            row[dst] += q * row[src]

    for t in range(min(nrows, ncols)):
        while True:
            best = None
            for i in range(t, nrows):
                for j in range(t, ncols):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, ncols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, nrows) for j in range(t + 1, ncols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
    diag = [a[i][i] for i in range(min(nrows, ncols))]
    return diag, left, right


def kernel_mod(mapping: Sequence[Sequence[int]], moduli: Sequence[int]) -> Lattice:
    """Lattice ``{v in Z^rows : v @ mapping == 0 mod moduli}`` (full rank).

    Built as the HNF of ``[[mapping | I], [diag(moduli) | 0]]``; rows whose
    mapping part vanishes carry the kernel in their identity part.
    """
    nrows = len(mapping)
    k = len(moduli)
    if any(q < 1 for q in moduli):
        raise ValueError("moduli must be positive")
    if any(len(row) != k for row in mapping):
        raise ValueError("mapping columns must match the number of moduli")
    stacked = [list(row) + [int(i == j) for j in range(nrows)] for i, row in enumerate(mapping)]
    for j, q in enumerate(moduli):
        stacked.append([q if c == j else 0 for c in range(k)] + [0] * nrows)
    lat = hnf(stacked, k + nrows)
    kernel_rows = [row[k:] for row in lat.basis if not any(row[:k])]
    return hnf(kernel_rows, nrows) if kernel_rows else Lattice(nrows, ())
