"""Exact matrix algebra over the supported rings.

Dense matrices of :class:`~scx.rings.LaurentPoly` entries, Smith normal
form with transform certificates over the Euclidean rings (Z, the
constant fields, and one-variable Laurent rings over a field), kernels,
exact linear solving, homology of composable pairs, and fraction-field
rank/kernels over any of the integral domains.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import rings
from .rings import (LaurentPoly, RingMismatchError, divide,
                    divmod_euclid, enorm, is_euclidean, normalizing_unit,
                    one, zero)


class LinalgError(Exception):
    pass


class Matrix:
    """Immutable-by-convention dense matrix over a single ring."""

    __slots__ = ("ring", "rows", "cols", "data")

    def __init__(self, ring, data, cols=None):
        self.ring = ring
        self.data = [list(row) for row in data]
        self.rows = len(self.data)
        if self.data:
            self.cols = len(self.data[0])
        else:
            self.cols = 0 if cols is None else cols
        for row in self.data:
            if len(row) != self.cols:
                raise LinalgError("ragged matrix rows")
            for e in row:
                if not isinstance(e, LaurentPoly) or e.ring != ring:
                    raise RingMismatchError("entry from a different ring")

    @classmethod
    def zeros(cls, ring, rows, cols):
        z = zero(ring)
        return cls(ring, [[z] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, ring, n):
        z, o = zero(ring), one(ring)
        return cls(ring, [[o if i == j else z for j in range(n)]
                          for i in range(n)])

    @classmethod
    def from_rows(cls, ring, rows):
        return cls(ring, rows)

    def copy(self):
        return Matrix(self.ring, self.data)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.ring == other.ring
                and self.data == other.data)

    def is_zero(self):
        return all(e.is_zero() for row in self.data for e in row)

    def transpose(self):
        return Matrix(self.ring, [[self.data[i][j] for i in range(self.rows)]
                                  for j in range(self.cols)], cols=self.rows)

    def __add__(self, other):
        self._compat(other, same_shape=True)
        return Matrix(self.ring,
                      [[a + b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.data, other.data)],
                      cols=self.cols)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Matrix(self.ring, [[-e for e in row] for row in self.data],
                      cols=self.cols)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return Matrix(self.ring,
                          [[e * other for e in row] for row in self.data],
                          cols=self.cols)
        self._compat(other)
        if self.cols != other.rows:
            raise LinalgError(
                f"shape mismatch {self.rows}x{self.cols} * "
                f"{other.rows}x{other.cols}")
        z = zero(self.ring)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = self.data[i][k]
                    if a:
                        b = other.data[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(self.ring, out, cols=other.cols)

    def scale(self, p):
        return self * p

    def _compat(self, other, same_shape=False):
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        if same_shape and (self.rows, self.cols) != (other.rows, other.cols):
            raise LinalgError("shape mismatch")

    def hstack(self, other):
        self._compat(other)
        if self.rows != other.rows:
            raise LinalgError("row count mismatch")
        return Matrix(self.ring,
                      [r1 + r2 for r1, r2 in zip(self.data, other.data)],
                      cols=self.cols + other.cols)

    def vstack(self, other):
        self._compat(other)
        if self.cols != other.cols:
            raise LinalgError("column count mismatch")
        return Matrix(self.ring, self.data + other.data, cols=self.cols)

    def column(self, j):
        return Matrix(self.ring, [[self.data[i][j]] for i in range(self.rows)],
                      cols=1)

    def columns_selected(self, js):
        return Matrix(self.ring,
                      [[self.data[i][j] for j in js] for i in range(self.rows)],
                      cols=len(js))

    def rows_selected(self, idxs):
        return Matrix(self.ring, [self.data[i] for i in idxs], cols=self.cols)

    def map_entries(self, f, target_ring=None):
        ring = target_ring if target_ring is not None else self.ring
        return Matrix(ring, [[f(e) for e in row] for row in self.data],
                      cols=self.cols)

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.data)
        return f"<Matrix {self.rows}x{self.cols} over {self.ring.tag}: {body}>"


@dataclass
class SmithResult:
    """U * M * V == D with U, V invertible and a diagonal divisibility chain."""
    D: Matrix
    U: Matrix
    V: Matrix

    def diagonal(self):
        n = min(self.D.rows, self.D.cols)
        return [self.D[i, i] for i in range(n)]

    def rank(self):
        return sum(1 for d in self.diagonal() if d)


@dataclass
class HomologySummary:
    free_rank: int
    torsion: list

    def total_rank_over_field(self):
        return self.free_rank


def _require_euclidean(ring):
    if not is_euclidean(ring):
        raise LinalgError(
            f"{ring} is not Euclidean; Smith reduction is refused there")


def smith_normal_form(M):
    """Diagonalize M by invertible row/column operations.

    Returns a :class:`SmithResult` whose diagonal entries are canonical
    associates forming a divisibility chain, zeros last.
    """
    _require_euclidean(M.ring)
    ring = M.ring
    m, n = M.rows, M.cols
    A = [row[:] for row in M.data]
    U = [row[:] for row in Matrix.identity(ring, m).data]
    V = [row[:] for row in Matrix.identity(ring, n).data]

    def row_axpy(i, q, t):
        # row_i -= q*row_t
        for j in range(n):
            A[i][j] = A[i][j] - q * A[t][j]
        for j in range(m):
            U[i][j] = U[i][j] - q * U[t][j]

    def col_axpy(j, q, t):
        for i in range(m):
            A[i][j] = A[i][j] - A[i][t] * q
        for i in range(n):
            V[i][j] = V[i][j] - V[i][t] * q

    def row_swap(i, t):
        A[i], A[t] = A[t], A[i]
        U[i], U[t] = U[t], U[i]

    def col_swap(j, t):
        for r in A:
            r[j], r[t] = r[t], r[j]
        for r in V:
            r[j], r[t] = r[t], r[j]

    t = 0
    while t < min(m, n):
        # locate a pivot of minimal Euclidean norm
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j]:
                    nm = enorm(A[i][j])
                    if best is None or nm < best[0]:
                        best = (nm, i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            row_swap(bi, t)
        if bj != t:
            col_swap(bj, t)
        while True:
            restart = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q, r = divmod_euclid(A[i][t], A[t][t])
                    row_axpy(i, q, t)
                    if r:
                        row_swap(i, t)
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, n):
                if A[t][j]:
                    q, r = divmod_euclid(A[t][j], A[t][t])
                    col_axpy(j, q, t)
                    if r:
                        col_swap(j, t)
                        restart = True
                        break
            if restart:
                continue
            # pivot must divide the remaining submatrix for the chain
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] and divide(A[i][j], A[t][t]) is None:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            for j in range(n):
                A[t][j] = A[t][j] + A[offender][j]
            for j in range(m):
                U[t][j] = U[t][j] + U[offender][j]
        t += 1

    for k in range(min(m, n)):
        if A[k][k]:
            u = normalizing_unit(A[k][k])
            if not u.is_one():
                for j in range(n):
                    A[k][j] = u * A[k][j]
                for j in range(m):
                    U[k][j] = u * U[k][j]

    return SmithResult(Matrix(ring, A, cols=n), Matrix(ring, U, cols=m),
                       Matrix(ring, V, cols=n))


def rank(M):
    """Rank over the fraction field, via Smith form on Euclidean rings."""
    if is_euclidean(M.ring):
        return smith_normal_form(M).rank()
    return rank_fraction_field(M)


def kernel_basis(M):
    """Columns form a basis of ker M as a module (Euclidean rings)."""
    snf = smith_normal_form(M)
    r = snf.rank()
    free = [j for j in range(M.cols)
            if j >= min(M.rows, M.cols) or not snf.D[j, j]]
    assert len(free) == M.cols - r
    return snf.V.columns_selected(free)


def solve(M, b):
    """One solution of M x = b, or None when the system is unsolvable."""
    if b.rows != M.rows or b.cols != 1:
        raise LinalgError("right-hand side shape mismatch")
    snf = smith_normal_form(M)
    c = snf.U * b
    ring = M.ring
    y = [zero(ring)] * M.cols
    for i in range(M.rows):
        if i < min(M.rows, M.cols) and snf.D[i, i]:
            q = divide(c[i, 0], snf.D[i, i])
            if q is None:
                return None
            y[i] = q
        elif c[i, 0]:
            return None
    return snf.V * Matrix(ring, [[v] for v in y])


def solve_matrix(M, B):
    """Solve M X = B column-wise; None when any column is unsolvable."""
    snf = smith_normal_form(M)
    C = snf.U * B
    ring = M.ring
    cols = []
    for j in range(B.cols):
        y = [zero(ring)] * M.cols
        for i in range(M.rows):
            if i < min(M.rows, M.cols) and snf.D[i, i]:
                q = divide(C[i, j], snf.D[i, i])
                if q is None:
                    return None
                y[i] = q
            elif C[i, j]:
                return None
        cols.append(y)
    X = Matrix(ring, [[cols[j][i] for j in range(B.cols)]
                      for i in range(M.cols)])
    return snf.V * X


def homology(d_in, d_out):
    """Homology at the middle of  R^m --d_in--> R^n --d_out--> R^p.

    free_rank is nullity(d_out) - rank(d_in); torsion lists the non-unit
    invariant factors of d_in written in a kernel basis of d_out.
    """
    if d_in.ring != d_out.ring:
        raise RingMismatchError("maps over different rings")
    if d_out.cols != d_in.rows:
        raise LinalgError("maps are not composable")
    if not (d_out * d_in).is_zero():
        raise LinalgError("d_out * d_in != 0")
    K = kernel_basis(d_out)
    X = solve_matrix(K, d_in)
    if X is None:
        raise LinalgError("image does not lie in the kernel")
    snf = smith_normal_form(X)
    r = snf.rank()
    torsion = []
    for d in snf.diagonal():
        if d and not d.is_unit():
            torsion.append(rings.normalize_associate(d))
    return HomologySummary(K.cols - r, torsion)


def det(M):
    """Determinant by fraction-free (Bareiss) elimination; exact divisions."""
    if M.rows != M.cols:
        raise LinalgError("determinant of a non-square matrix")
    n = M.rows
    ring = M.ring
    if n == 0:
        return one(ring)
    A = [row[:] for row in M.data]
    sign = 1
    prev = one(ring)
    for k in range(n - 1):
        if not A[k][k]:
            pivot = next((i for i in range(k + 1, n) if A[i][k]), None)
            if pivot is None:
                return zero(ring)
            A[k], A[pivot] = A[pivot], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[k][k] * A[i][j] - A[i][k] * A[k][j]
                q = divide(num, prev)
                if q is None:
                    raise LinalgError("Bareiss division failed")
                A[i][j] = q
            A[i][k] = zero(ring)
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return -d if sign < 0 else d


def rank_fraction_field(M):
    """Rank over Frac(ring) by division-free Gaussian elimination."""
    A = [row[:] for row in M.data]
    m, n = M.rows, M.cols
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if A[i][c]), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        for i in range(m):
            if i != r and A[i][c]:
                p, q = A[r][c], A[i][c]
                A[i] = [p * A[i][j] - q * A[r][j] for j in range(n)]
        r += 1
        if r == m:
            break
    return r


def kernel_fraction_field(M):
    """Columns spanning ker M over Frac(ring), with entries cleared into
    the ring.  Works over any supported integral domain."""
    ring = M.ring
    A = [row[:] for row in M.data]
    m, n = M.rows, M.cols
    pivots = []  # (row, col)
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if A[i][c]), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        for i in range(m):
            if i != r and A[i][c]:
                p, q = A[r][c], A[i][c]
                A[i] = [p * A[i][j] - q * A[r][j] for j in range(n)]
        pivots.append((r, c))
        r += 1
        if r == m:
            break
    pivot_cols = {c for _, c in pivots}
    free_cols = [c for c in range(n) if c not in pivot_cols]
    cols = []
    prod_all = one(ring)
    for i, c in pivots:
        prod_all = prod_all * A[i][c]
    for f in free_cols:
        vec = [zero(ring)] * n
        vec[f] = prod_all
        for i, c in pivots:
            other = one(ring)
            for i2, c2 in pivots:
                if i2 != i:
                    other = other * A[i2][c2]
            vec[c] = -A[i][f] * other
        cols.append(vec)
    return Matrix(ring, [[cols[j][i] for j in range(len(cols))]
                         for i in range(n)], cols=len(cols))
