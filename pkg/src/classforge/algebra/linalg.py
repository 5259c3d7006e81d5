"""Dense linear algebra over an arbitrary field object."""

from __future__ import annotations


def nullspace(F, rows, ncols: int) -> list[list]:
    """Basis of {v : M v = 0} for M given by ``rows`` (each of length ncols)."""
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if not F.is_zero(A[i][c])), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(inv, v) for v in A[r]]
        for i in range(len(A)):
            if i != r and not F.is_zero(A[i][c]):
                k = A[i][c]
                A[i] = [F.sub(v, F.mul(k, w)) for v, w in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * ncols
        v[fc] = F.one
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(A[i][fc])
        basis.append(v)
    return basis
