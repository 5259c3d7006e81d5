"""Integer matrices: Smith normal form and an incremental row lattice.

Matrices are lists of lists of Python ints; arbitrary precision is relied
on for intermediate entry growth.
"""

from __future__ import annotations


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [
        [sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
        for i in range(len(A))
    ]


def determinant(M) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


def smith_normal_form(M):
    """Return (D, U, V) with D = U*M*V diagonal, d1 | d2 | ..., U and V unimodular.

    Pivot rule: smallest nonzero absolute value in the active block.  The
    diagonal is non-negative, with zeros after all nonzero entries.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(r) for r in M]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        if c:
            A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        if c:
            for row in A:
                row[dst] += c * row[src]
            for row in V:
                row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return A, U, V
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty |= A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty |= A[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(A[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return A, U, V


def smith_diagonal(M) -> list[int]:
    D, _, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


class RowLattice:
    """Sublattice of Z^n spanned by inserted rows, kept in Hermite normal form.

    Rows are indexed by pivot column; pivots are positive and entries above a
    pivot are reduced into [0, pivot).  ``add`` reports whether the lattice
    grew, which is what relation harvesting needs to detect stability.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, list[int]] = {}

    def copy(self):
        other = RowLattice(self.ncols)
        other.rows = {k: list(v) for k, v in self.rows.items()}
        return other

    def add(self, vec) -> bool:
        v = list(vec)
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        changed = False
        for c in range(self.ncols):
            if v[c] == 0:
                continue
            row = self.rows.get(c)
            if row is None:
                if v[c] < 0:
                    v = [-a for a in v]
                self.rows[c] = v
                self._reduce_above(c)
                return True
            a, b = row[c], v[c]
            if b % a == 0:
                k = b // a
                v = [x - k * y for x, y in zip(v, row)]
                continue
            g, s, t = _xgcd(a, b)
            new_row = [s * x + t * y for x, y in zip(row, v)]
            v = [(a // g) * y - (b // g) * x for x, y in zip(row, v)]
            if new_row[c] < 0:
                new_row = [-x for x in new_row]
            self.rows[c] = new_row
            self._reduce_above(c)
            changed = True
        return changed

    def _reduce_above(self, c):
        # full re-reduction; only runs when the lattice actually grew
        cols = sorted(self.rows)
        for c2 in cols:
            piv = self.rows[c2]
            p2 = piv[c2]
            for r in cols:
                if r >= c2:
                    break
                row = self.rows[r]
                if row[c2] and not 0 <= row[c2] < p2:
                    k = row[c2] // p2
                    self.rows[r] = [x - k * y for x, y in zip(row, piv)]

    def contains(self, vec) -> bool:
        v = list(vec)
        for c in range(self.ncols):
            if v[c] == 0:
                continue
            row = self.rows.get(c)
            if row is None or v[c] % row[c]:
                return False
            k = v[c] // row[c]
            v = [x - k * y for x, y in zip(v, row)]
        return True

    def reduce(self, vec) -> tuple[int, ...]:
        """Canonical coset representative of vec modulo the lattice."""
        v = list(vec)
        for c in range(self.ncols):
            row = self.rows.get(c)
            if row is not None and v[c]:
                k = v[c] // row[c]
                v = [x - k * y for x, y in zip(v, row)]
        return tuple(v)

    def basis(self) -> list[list[int]]:
        return [list(self.rows[c]) for c in sorted(self.rows)]

    @property
    def rank(self) -> int:
        return len(self.rows)

    def __eq__(self, other):
        return isinstance(other, RowLattice) and self.ncols == other.ncols and self.rows == other.rows
