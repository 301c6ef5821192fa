"""Smith normal form and exact linear algebra over Z and Q.

The Smith reduction always pivots on the nonzero entry of smallest absolute
value in the active block, breaking ties by the lowest (row, col).  Together
with floor-division elimination this makes every transform deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from .matrix import Matrix


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ M @ V == D with U, V unimodular and D diagonal with d1 | d2 | ..."""

    U: Matrix
    V: Matrix
    D: Matrix
    U_inv: Matrix
    V_inv: Matrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(self.rank))

    @property
    def rank(self) -> int:
        r = 0
        while r < min(self.D.shape) and self.D[r, r] != 0:
            r += 1
        return r


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def snf_lists(rows: list[list[int]], m: int, n: int, want_inverses: bool = True):
    """Smith reduction on a mutable m x n list-of-lists.

    Returns (D, U, V, U_inv, V_inv, rank) as lists; inverses are None unless
    requested.
    """
    D = [list(r) for r in rows]
    U, V = _eye(m), _eye(n)
    Ui = _eye(m) if want_inverses else None
    Vi = _eye(n) if want_inverses else None

    def row_swap(a, b):
        D[a], D[b] = D[b], D[a]
        U[a], U[b] = U[b], U[a]
        if Ui is not None:
            for r in Ui:
                r[a], r[b] = r[b], r[a]

    def col_swap(a, b):
        for r in D:
            r[a], r[b] = r[b], r[a]
        for r in V:
            r[a], r[b] = r[b], r[a]
        if Vi is not None:
            Vi[a], Vi[b] = Vi[b], Vi[a]

    def row_addmul(dst, src, q):
        # row_dst += q * row_src
        Dd, Ds = D[dst], D[src]
        for k in range(n):
            if Ds[k]:
                Dd[k] += q * Ds[k]
        Ud, Us = U[dst], U[src]
        for k in range(m):
            if Us[k]:
                Ud[k] += q * Us[k]
        if Ui is not None:
            for r in Ui:
                if r[dst]:
                    r[src] -= q * r[dst]

    def col_addmul(dst, src, q):
        # col_dst += q * col_src
        for r in D:
            if r[src]:
                r[dst] += q * r[src]
        for r in V:
            if r[src]:
                r[dst] += q * r[src]
        if Vi is not None:
            Vd, Vs = Vi[dst], Vi[src]
            for k in range(n):
                if Vd[k]:
                    Vs[k] -= q * Vd[k]

    def row_negate(a):
        D[a] = [-x for x in D[a]]
        U[a] = [-x for x in U[a]]
        if Ui is not None:
            for r in Ui:
                r[a] = -r[a]

    def pick_pivot(t):
        best = None
        for i in range(t, m):
            Di = D[i]
            for j in range(t, n):
                x = Di[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        return best

    t = 0
    while t < min(m, n):
        best = pick_pivot(t)
        if best is None:
            break
        while True:
            _, pi, pj = best
            if pi != t:
                row_swap(t, pi)
            if pj != t:
                col_swap(t, pj)
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    row_addmul(i, t, -(D[i][t] // p))
            for j in range(t + 1, n):
                if D[t][j]:
                    col_addmul(j, t, -(D[t][j] // p))
            if any(D[i][t] for i in range(t + 1, m)) or any(D[t][j] for j in range(t + 1, n)):
                best = pick_pivot(t)
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(D[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            row_addmul(t, bad, 1)
            best = pick_pivot(t)
        if D[t][t] < 0:
            row_negate(t)
        t += 1
    return D, U, V, Ui, Vi, t


def smith_normal_form(M: Matrix) -> SmithDecomposition:
    m, n = M.shape
    D, U, V, Ui, Vi, _ = snf_lists([list(r) for r in M.rows], m, n)
    return SmithDecomposition(Matrix(U, m), Matrix(V, n), Matrix(D, n), Matrix(Ui, m), Matrix(Vi, n))


# --- integer lattices ------------------------------------------------------------


def integer_echelon(vectors: Sequence[Sequence[int]], dim: int) -> tuple[list[list[int]], list[int]]:
    """Row echelon basis of the Z-span of integer vectors.

    Returns (basis, leads): each basis row has its first nonzero entry,
    positive, at leads[k], strictly increasing in k.
    """
    rows = [list(v) for v in vectors if any(v)]
    basis, leads = [], []
    col = 0
    while rows and col < dim:
        active = [r for r in rows if r[col]]
        if not active:
            col += 1
            continue
        rest = [r for r in rows if not r[col]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        piv = active[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        basis.append(piv)
        leads.append(col)
        rows = rest
        col += 1
    return basis, leads


def echelon_coords(basis: Sequence[Sequence], leads: Sequence[int], vec: Sequence):
    """Coefficients c with vec == sum c_k basis_k, or None if vec is outside the Q-span.

    Coefficients may be rational; callers test integrality themselves.
    """
    v = list(vec)
    coeffs = []
    for b, l in zip(basis, leads):
        if v[l]:
            c = mpq(v[l]) / b[l] if not isinstance(v[l], int) or v[l] % b[l] else v[l] // b[l]
            for k in range(l, len(v)):
                if b[k]:
                    v[k] -= c * b[k]
            coeffs.append(c)
        else:
            coeffs.append(0)
    if any(v):
        return None
    return coeffs


def integer_kernel(M: Matrix) -> Matrix:
    """Columns form a Z-basis of {x in Z^n : M x = 0}."""
    m, n = M.shape
    _, _, V, _, _, r = snf_lists([list(x) for x in M.rows], m, n, want_inverses=False)
    return Matrix([row[r:] for row in V], n - r)


def integer_solve(M: Matrix, b: Sequence[int]):
    """Some integer x with M x == b, or None."""
    m, n = M.shape
    D, U, V, _, _, r = snf_lists([list(x) for x in M.rows], m, n, want_inverses=False)
    c = [sum(u * y for u, y in zip(Urow, b)) for Urow in U]
    y = [0] * n
    for i in range(r):
        if c[i] % D[i][i]:
            return None
        y[i] = c[i] // D[i][i]
    if any(c[i] for i in range(r, m)):
        return None
    return tuple(sum(Vrow[k] * y[k] for k in range(r)) for Vrow in V)


# --- rational linear algebra --------------------------------------------------------


def rref(rows: Sequence[Sequence], ncols: int):
    """Reduced row echelon form over Q.  Returns (nonzero_rows, pivot_columns)."""
    R = [[mpq(x) for x in r] for r in rows]
    pivots = []
    lead = 0
    for c in range(ncols):
        p = next((i for i in range(lead, len(R)) if R[i][c]), None)
        if p is None:
            continue
        R[lead], R[p] = R[p], R[lead]
        inv = 1 / R[lead][c]
        R[lead] = [x * inv for x in R[lead]]
        piv = R[lead]
        for i in range(len(R)):
            if i != lead and R[i][c]:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], piv)]
        pivots.append(c)
        lead += 1
    return R[:lead], pivots


def reduce_by_rref(basis: Sequence[Sequence], pivots: Sequence[int], vec: Sequence) -> list:
    v = list(vec)
    for b, p in zip(basis, pivots):
        c = v[p]
        if c:
            v = [x - c * y for x, y in zip(v, b)]
    return v


def rational_left_null(M: Matrix) -> list[list]:
    """Rows spanning {y : y M = 0} over Q."""
    return rational_kernel(M.T)


def rational_kernel(M: Matrix) -> list[list]:
    """Vectors spanning {x : M x = 0} over Q."""
    R, piv = rref(M.rows, M.ncols)
    free = [j for j in range(M.ncols) if j not in piv]
    out = []
    for f in free:
        x = [mpq(0)] * M.ncols
        x[f] = mpq(1)
        for r, p in zip(R, piv):
            x[p] = -r[f]
        out.append(x)
    return out


def rational_solve(M: Matrix, b: Sequence):
    """Some rational x with M x == b, or None."""
    aug = [list(r) + [bi] for r, bi in zip(M.rows, b)]
    R, piv = rref(aug, M.ncols + 1)
    if piv and piv[-1] == M.ncols:
        return None
    x = [mpq(0)] * M.ncols
    for r, p in zip(R, piv):
        x[p] = r[-1]
    return x


def common_denominator(values) -> int:
    from math import lcm

    d = 1
    for x in values:
        if not isinstance(x, int):
            d = lcm(d, int(x.denominator))
    return d


def rational_right_inverse(M: Matrix):
    """X with M X = I over Q, or None if M does not have full row rank."""
    cols = []
    for k in range(M.nrows):
        x = rational_solve(M, [int(i == k) for i in range(M.nrows)])
        if x is None:
            return None
        cols.append(x)
    return Matrix.from_columns(cols, M.ncols)


def rational_left_inverse(M: Matrix):
    """X with X M = I over Q, or None if M does not have full column rank."""
    X = rational_right_inverse(M.T)
    return None if X is None else X.T
