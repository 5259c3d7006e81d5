"""Vectorized enumeration of ring elements with smooth norms.

Elements f = a + b y of k[E] are enumerated up to F_q^* scaling by norm
degree n:

    n even:  a monic of degree n/2,       deg b <= (n - 4)/2
    n odd:   b monic of degree (n - 3)/2, deg a <= (n - 1)/2

For each fixed b the norms a^2 - a b h - b^2 g of all admissible a are
computed at once with numpy gathers into the field's addition and
multiplication tables.  A norm is smooth when repeated division by the
allowed irreducibles exhausts its degree; an irreducible p is allowed when
the primes above it have degree <= D (deg p for split or ramified fibres,
2 deg p for inert ones).
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .algebra.poly import Poly, monic_irreducibles
from .curve_ring import RingElement, curve_polys


class FieldOps:
    """Elementwise field arithmetic on int32 arrays of element codes.

    Prime fields use modular arithmetic; extension fields gather from
    flattened addition and multiplication tables.
    """

    def __init__(self, F):
        self.q = q = F.q
        self.prime = F.k == 1
        if not self.prime:
            self._add = np.array([F.add(a, b) for a in range(q) for b in range(q)], dtype=np.int32)
            self._mul = np.array([F.mul(a, b) for a in range(q) for b in range(q)], dtype=np.int32)
            self._neg = np.array([F.neg(a) for a in range(q)], dtype=np.int32)

    def add(self, x, y):
        if self.prime:
            return (x + y) % self.q
        return self._add[x * self.q + y]

    def neg(self, x):
        if self.prime:
            return (-x) % self.q
        return self._neg[x]

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        if self.prime:
            return (x * y) % self.q
        return self._mul[x * self.q + y]


@lru_cache(maxsize=None)
def field_tables(F) -> FieldOps:
    return FieldOps(F)


@lru_cache(maxsize=None)
def allowed_irreducibles(E, D: int) -> tuple[Poly, ...]:
    from .ideal_class import fibre_type

    out = []
    for e in range(1, D + 1):
        for p in monic_irreducibles(E.field, e):
            weight = 2 * e if fibre_type(E, p) == "inert" else e
            if weight <= D:
                out.append(p)
    return tuple(out)


def _all_coeffs(q, length, monic_top, one):
    """Array of every coefficient vector of the given length (monic top optional)."""
    free = length - 1 if monic_top else length
    if free < 0:
        return np.zeros((0, length), dtype=np.int32)
    if free == 0:
        grid = np.zeros((1, 0), dtype=np.int32)
    else:
        grid = np.array(list(itertools.product(range(q), repeat=free)), dtype=np.int32)
        # product() varies the last slot fastest; reverse so low coefficients vary fastest
        grid = grid[:, ::-1]
    if monic_top:
        grid = np.concatenate([grid, np.full((grid.shape[0], 1), one, dtype=np.int32)], axis=1)
    return grid


def _conv_const(tabs, A, c, width):
    """Rows of A times the fixed coefficient list c, as a (rows, width) array."""
    out = np.zeros((A.shape[0], width), dtype=np.int32)
    for i in range(A.shape[1]):
        for j, cj in enumerate(c):
            if cj:
                out[:, i + j] = tabs.add(out[:, i + j], tabs.mul(A[:, i], cj))
    return out


def _square(tabs, A, width):
    out = np.zeros((A.shape[0], width), dtype=np.int32)
    for i in range(A.shape[1]):
        for j in range(A.shape[1]):
            out[:, i + j] = tabs.add(out[:, i + j], tabs.mul(A[:, i], A[:, j]))
    return out


def _eval_at(tabs, R, d, pts):
    """Values of the degree-d rows of R at each point of pts, shape (rows, len(pts))."""
    acc = np.repeat(R[:, d][:, None], len(pts), axis=1)
    for i in range(d - 1, -1, -1):
        acc = tabs.add(tabs.mul(acc, pts[None, :]), R[:, i][:, None])
    return acc


def _divide_linear(tabs, R, d, r):
    """Quotients of the degree-d rows of R by (x - r_row), remainder assumed zero."""
    Q = np.zeros((R.shape[0], d), dtype=np.int32)
    Q[:, d - 1] = R[:, d]
    for i in range(d - 1, 0, -1):
        Q[:, i - 1] = tabs.add(R[:, i], tabs.mul(Q[:, i], r))
    return Q


def _divide_out(tabs, R, d, p):
    """Strip all factors p from rows of R (formal degree d); return (R, removed degree)."""
    e = p.deg
    pc = list(p.coeffs)
    R = R.copy()
    removed = np.zeros(R.shape[0], dtype=np.int32)
    for _ in range(d // e):
        live = np.nonzero(removed <= d - e)[0]
        if live.size == 0:
            break
        W = R[live]
        Q = np.zeros_like(W)
        for i in range(d, e - 1, -1):
            c = W[:, i]
            Q[:, i - e] = c
            for j in range(e):
                if pc[j]:
                    W[:, i - e + j] = tabs.sub(W[:, i - e + j], tabs.mul(c, pc[j]))
            W[:, i] = 0
        ok = ~np.any(W[:, :e], axis=1)
        if not ok.any():
            break
        R[live[ok]] = Q[ok]
        removed[live[ok]] += e
    return R, removed


def _smooth_mask(tabs, N, n, allowed, q):
    """Rows of N (monic of degree n) that factor over the allowed irreducibles.

    Allowed linear factors are peeled one per round, so all live rows share a
    degree.  Rows left without an allowed root either are constant (smooth),
    have a forbidden root (not smooth), or are handed to the higher-degree
    allowed irreducibles.
    """
    lin = np.array([tabs.neg(np.int32(p.coeffs[0])) for p in allowed if p.deg == 1], dtype=np.int32)
    forbidden = np.array(sorted(set(range(q)) - set(lin.tolist())), dtype=np.int32)
    higher = [p for p in allowed if p.deg > 1]
    mask = np.zeros(N.shape[0], dtype=bool)
    rows = np.arange(N.shape[0])
    R = N
    d = n
    while rows.size:
        if d == 0:
            mask[rows] = True
            break
        if lin.size:
            vals = _eval_at(tabs, R, d, lin)
            zero = vals == 0
            has = zero.any(axis=1)
        else:
            has = np.zeros(rows.size, dtype=bool)
        stuck = ~has
        if stuck.any() and higher:
            S = R[stuck][:, : d + 1]
            keep = np.ones(S.shape[0], dtype=bool)
            if forbidden.size:
                keep &= ~(_eval_at(tabs, S, d, forbidden) == 0).any(axis=1)
            if d % 2 and min(p.deg for p in higher) >= 2 and all(p.deg % 2 == 0 for p in higher):
                keep[:] = False
            S, srows = S[keep], rows[stuck][keep]
            removed = np.zeros(S.shape[0], dtype=np.int32)
            for p in higher:
                if S.shape[0] == 0:
                    break
                S, r = _divide_out(tabs, S, d, p)
                removed += r
            mask[srows[removed == d]] = True
        if not has.any():
            break
        R = R[has]
        rows = rows[has]
        first = np.argmax(zero[has], axis=1)
        R = _divide_linear(tabs, R, d, lin[first])
        d -= 1
    return mask


def count_candidates(q: int, n: int) -> int:
    return q ** (n - 1) if n >= 2 else 0


def _norm_rows(E, n, tabs):
    """Yield (A, b, N) blocks: all admissible a for one b, with monic norms N."""
    F = E.field
    q = F.q
    h, g = curve_polys(E)
    width = n + 1
    if n % 2 == 0:
        A = _all_coeffs(q, n // 2 + 1, True, F.one)
        B_list = _all_coeffs(q, (n - 4) // 2 + 1, False, F.one) if n >= 4 else np.zeros((1, 0), dtype=np.int32)
        negate = False
    else:
        A = _all_coeffs(q, (n - 1) // 2 + 1, False, F.one)
        B_list = _all_coeffs(q, (n - 3) // 2 + 1, True, F.one)
        negate = True
    A2 = _square(tabs, A, width)
    for brow in B_list:
        b = Poly(F, [int(v) for v in brow])
        bh = b * h
        bbg = b * b * g
        N = A2
        if not bh.is_zero():
            N = tabs.sub(N, _conv_const(tabs, A, list(bh.coeffs), width))
        if not bbg.is_zero():
            cst = np.zeros(width, dtype=np.int32)
            cst[: len(bbg.coeffs)] = bbg.coeffs
            N = tabs.sub(N, cst[None, :])
        if negate:
            N = tabs.neg(N)
        yield A, b, N


def _charge(counter, max_candidates, q, n):
    from .ideal_class import BudgetExhausted

    if counter is not None:
        counter[0] += count_candidates(q, n)
        if max_candidates is not None and counter[0] > max_candidates:
            raise BudgetExhausted(f"candidate budget {max_candidates} exhausted at norm degree {n}")


def smooth_elements(E, n: int, D: int, counter: list[int] | None = None, max_candidates: int | None = None):
    """Yield, in a fixed order, every f (up to scalars) with deg N(f) = n and D-smooth norm."""
    if n < 2:
        return
    F = E.field
    _charge(counter, max_candidates, F.q, n)
    tabs = field_tables(F)
    allowed = allowed_irreducibles(E, D)
    for A, b, N in _norm_rows(E, n, tabs):
        mask = _smooth_mask(tabs, N, n, allowed, F.q)
        for idx in np.nonzero(mask)[0]:
            yield RingElement(Poly(F, [int(v) for v in A[idx]]), b)


@lru_cache(maxsize=None)
def _linear_fibres(E, D, index_key):
    """Per allowed root r: (r, kind, column of first prime, its y-value, column of second prime)."""
    from .ideal_class import primes_above

    index = dict(index_key)
    out = []
    for p in allowed_irreducibles(E, D):
        if p.deg != 1:
            continue
        primes = primes_above(E, p)
        if primes[0].ytail is None or any(P not in index for P in primes):
            continue
        r = E.field.neg(p.coeffs[0])
        t1 = primes[0].ytail[0]
        j2 = index[primes[1]] if len(primes) == 2 else -1
        out.append((r, index[primes[0]], t1, j2))
    return tuple(out)


def smooth_relations(E, n: int, D: int, index: dict, counter=None, max_candidates=None):
    """Relation vectors of every f with deg N(f) = n and D-smooth norm.

    Rows whose norm factors into split or ramified linear fibres and that
    have no content at those fibres are handled in bulk: a split fibre's
    exponent goes to the conjugate prime whose y-value t solves a(r) + b(r) t
    = 0.  Everything else goes through the scalar path.
    """
    from .ideal_class import fast_relation_vector

    if n < 2:
        return
    F = E.field
    _charge(counter, max_candidates, F.q, n)
    tabs = field_tables(F)
    allowed = allowed_irreducibles(E, D)
    fibres = _linear_fibres(E, D, tuple(sorted(index.items(), key=lambda kv: kv[1])))
    ncols = len(index)
    for A, b, N in _norm_rows(E, n, tabs):
        sel = np.nonzero(_smooth_mask(tabs, N, n, allowed, F.q))[0]
        if sel.size == 0:
            continue
        R = N[sel]
        As = A[sel]
        k = sel.size
        vecs = np.zeros((k, ncols), dtype=np.int64)
        covered = np.zeros(k, dtype=np.int32)
        slow = np.zeros(k, dtype=bool)
        for r, j1, t1, j2 in fibres:
            rr = np.array([r], dtype=np.int32)
            mult = np.zeros(k, dtype=np.int32)
            W = R.copy()
            active = np.ones(k, dtype=bool)
            for _ in range(n):
                val = _eval_at(tabs, W, n, rr)[:, 0]
                hit = active & (val == 0)
                if not hit.any():
                    break
                Q = _divide_linear(tabs, W[hit], n, np.full(int(hit.sum()), r, dtype=np.int32))
                W[hit] = np.concatenate([Q, np.zeros((Q.shape[0], 1), dtype=np.int32)], axis=1)
                mult[hit] += 1
                active = hit
            if not mult.any():
                continue
            covered += mult
            if j2 < 0:
                vecs[:, j1] += mult
                continue
            # common power c of (x - r) in a and b, then the residue of f/(x-r)^c
            da = As.shape[1] - 1
            Wa = As.copy()
            a_zero = ~np.any(Wa != 0, axis=1)
            ma = np.where(a_zero, n, 0).astype(np.int32)
            live = ~a_zero
            for _ in range(max(da, 0)):
                hit = live & (_eval_at(tabs, Wa, da, rr)[:, 0] == 0)
                if not hit.any():
                    break
                Q = _divide_linear(tabs, Wa[hit], da, np.full(int(hit.sum()), r, dtype=np.int32))
                Wa[hit] = np.concatenate([Q, np.zeros((Q.shape[0], 1), dtype=np.int32)], axis=1)
                ma[hit] += 1
                live = hit
            bvals = []
            bb = b
            lin_r = Poly(F, (F.neg(r), F.one))
            while True:
                bvals.append(int(bb(r)) if bb else 0)
                if not bb or bb(r) != 0:
                    break
                bb = bb // lin_r
            mb = len(bvals) - 1 if b else n
            c = np.minimum(ma, mb)
            # a / (x - r)^c evaluated at r: strip exactly c factors per row
            Wa = As.copy()
            for step in range(int(c.max()) if k else 0):
                hit = c > step
                Q = _divide_linear(tabs, Wa[hit], da, np.full(int(hit.sum()), r, dtype=np.int32))
                Wa[hit] = np.concatenate([Q, np.zeros((Q.shape[0], 1), dtype=np.int32)], axis=1)
            a_r = _eval_at(tabs, Wa, da, rr)[:, 0] if da >= 0 else np.zeros(k, dtype=np.int32)
            b_r = np.array([bvals[min(int(ci), len(bvals) - 1)] if b else 0 for ci in c], dtype=np.int32)
            if b:
                b_r = np.where(c < len(bvals), b_r, 0)
            on_first = tabs.add(a_r, tabs.mul(b_r, np.int32(t1))) == 0
            rest = mult - 2 * c
            slow |= rest < 0
            vecs[:, j1] += c + np.where(on_first, rest, 0)
            vecs[:, j2] += c + np.where(on_first, 0, rest)
        slow |= covered != n
        for i in range(k):
            if slow[i]:
                f = RingElement(Poly(F, [int(v) for v in As[i]]), b)
                v = fast_relation_vector(E, f, index, allowed)
                if v is not None:
                    yield v
            else:
                yield [int(v) for v in vecs[i]]
