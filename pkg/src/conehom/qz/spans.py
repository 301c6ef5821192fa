"""Subgroups of Q^M of the form (Q-span of some vectors) + (Z-span of others).

Every group in this package is such a subgroup modulo another one, which is
how kernels, images and homology of maps between Q/Z-type groups are computed
with exact rational arithmetic.
"""
from __future__ import annotations

from math import lcm
from typing import Sequence

from gmpy2 import mpq

from ..errors import NoPreimage
from ..lattice.matrix import Matrix
from ..lattice.smith import integer_echelon, integer_kernel, rational_kernel, rational_solve, reduce_by_rref, rref, snf_lists
from .groups import QZGroup


def _scale_to_int(vecs: Sequence[Sequence]) -> tuple[list[list[int]], int]:
    den = 1
    for v in vecs:
        for x in v:
            if not isinstance(x, int) and x.denominator != 1:
                den = lcm(den, int(x.denominator))
    return [[int(x * den) for x in v] for v in vecs], den


def rational_echelon(vecs: Sequence[Sequence], dim: int) -> tuple[list[list], list[int]]:
    """Echelon Z-basis of the Z-span of rational vectors."""
    ints, den = _scale_to_int(vecs)
    basis, leads = integer_echelon(ints, dim)
    if den == 1:
        return basis, leads
    return [[mpq(x, den) for x in b] for b in basis], leads


def lattice_coords(basis, leads, vec):
    """Rational coefficients of vec in an echelon basis, or None outside its Q-span."""
    v = [mpq(x) for x in vec]
    out = []
    for b, l in zip(basis, leads):
        c = v[l] / b[l] if v[l] else mpq(0)
        if c:
            for k in range(l, len(v)):
                if b[k]:
                    v[k] -= c * b[k]
        out.append(c)
    if any(v):
        return None
    return out


class MixedSpan:
    """Normalized Q-span(rat) + Z-span(lat) in Q^dim.

    ``rat`` is in reduced row echelon form with pivot columns ``pivots``; the
    lattice rows vanish on those pivots and are in echelon form, so the
    decomposition x = sum t_i rat_i + sum c_j lat_j is unique.
    """

    __slots__ = ("dim", "rat", "pivots", "lat", "leads")

    def __init__(self, dim: int, qgens: Sequence[Sequence] = (), zgens: Sequence[Sequence] = ()):
        self.dim = dim
        self.rat, self.pivots = rref([v for v in qgens if any(v)], dim)
        projected = [reduce_by_rref(self.rat, self.pivots, v) for v in zgens]
        self.lat, self.leads = rational_echelon([v for v in projected if any(v)], dim)

    @classmethod
    def of_group(cls, g: QZGroup) -> MixedSpan:
        """The group's ambient: Q on divisible coordinates, Z on the rest."""
        n = g.ngens
        unit = [[int(i == j) for j in range(n)] for i in range(n)]
        return cls(n, [unit[i] for i, k in enumerate(g.kinds) if k < 0], [unit[i] for i, k in enumerate(g.kinds) if k >= 0])

    @classmethod
    def relations(cls, g: QZGroup) -> MixedSpan:
        """The relation lattice: e_c on Q/Z coordinates, d e_c on Z/d coordinates."""
        return cls(g.ngens, (), relation_vectors(g))

    def coordinates(self, vec: Sequence):
        """(t, c) with vec = sum t_i rat_i + sum c_j lat_j, c possibly rational; None outside the Q-span."""
        t = [mpq(vec[p]) for p in self.pivots]
        rest = [mpq(x) for x in vec]
        for ti, r in zip(t, self.rat):
            if ti:
                rest = [a - ti * b for a, b in zip(rest, r)]
        c = lattice_coords(self.lat, self.leads, rest)
        if c is None:
            return None
        return t, c

    def contains(self, vec: Sequence) -> bool:
        tc = self.coordinates(vec)
        return tc is not None and all(x.denominator == 1 for x in tc[1])

    def contains_line(self, vec: Sequence) -> bool:
        """Whether the whole Q-line through vec lies in the span."""
        tc = self.coordinates(vec)
        return tc is not None and not any(tc[1])

    def contains_span(self, other: MixedSpan) -> bool:
        return all(self.contains_line(v) for v in other.rat) and all(self.contains(v) for v in other.lat)

    def __eq__(self, other) -> bool:
        return isinstance(other, MixedSpan) and self.contains_span(other) and other.contains_span(self)

    def __add__(self, other: MixedSpan) -> MixedSpan:
        return MixedSpan(self.dim, self.rat + other.rat, self.lat + other.lat)

    @property
    def q_dim(self) -> int:
        return len(self.rat)

    @property
    def z_rank(self) -> int:
        return len(self.lat)


def relation_vectors(g: QZGroup) -> list[list[int]]:
    n = g.ngens
    out = []
    for i, k in enumerate(g.kinds):
        if k == -2:
            out.append([int(i == j) for j in range(n)])
        elif k > 0:
            out.append([k if i == j else 0 for j in range(n)])
    return out


def mixed_kernel(A_r: Matrix, A_i: Matrix) -> tuple[list[list], list[list]]:
    """Solutions of A_r t + A_i w = 0 with t rational and w integral.

    Returns (qgens, zgens) as vectors (t, w) in Q^(nr + ni).
    """
    m = A_r.nrows
    nr, ni = A_r.ncols, A_i.ncols
    if nr:
        P = rational_kernel(A_r.T)  # rows p with p A_r = 0
    else:
        P = [[int(i == j) for j in range(m)] for i in range(m)]
    cons = [[sum(p[k] * A_i.rows[k][j] for k in range(m)) for j in range(ni)] for p in P]
    cons = [r for r in cons if any(r)]
    cons_int, _ = _scale_to_int(cons)
    if cons_int:
        W = integer_kernel(Matrix(cons_int, ni)).columns()
    else:
        W = [tuple(int(i == j) for j in range(ni)) for i in range(ni)]
    zgens = []
    for w in W:
        if nr:
            rhs = [-sum(a * b for a, b in zip(row, w)) for row in A_i.rows]
            t = rational_solve(A_r, rhs)
            if t is None:  # pragma: no cover - excluded by construction of W
                raise AssertionError("mixed solve inconsistency")
        else:
            t = []
        zgens.append(list(t) + list(w))
    qgens = [list(k) + [0] * ni for k in rational_kernel(A_r)] if nr else []
    return qgens, zgens


def preimage_span(F: Matrix, source: QZGroup, target: QZGroup) -> MixedSpan:
    """{x in the ambient of `source` : F x lies in the relation lattice of `target`}."""
    div = [j for j, k in enumerate(source.kinds) if k < 0]
    lat = [j for j, k in enumerate(source.kinds) if k >= 0]
    rel = relation_vectors(target)
    A_r = F.submatrix(None, div)
    A_i = Matrix.hstack([F.submatrix(None, lat), Matrix.from_columns([[-x for x in v] for v in rel], F.nrows)])
    qg, zg = mixed_kernel(A_r, A_i)
    n = source.ngens

    def embed(v):
        x = [0] * n
        for k, j in enumerate(div):
            x[j] = v[k]
        for k, j in enumerate(lat):
            x[j] = v[len(div) + k]
        return x

    return MixedSpan(n, [embed(v) for v in qg], [embed(v) for v in zg])


def image_span(F: Matrix, source: QZGroup, target: QZGroup) -> MixedSpan:
    """F(ambient of source) + relations of target."""
    cols = F.columns() if F.nrows else [()] * F.ncols
    qg = [cols[j] for j, k in enumerate(source.kinds) if k < 0]
    zg = [cols[j] for j, k in enumerate(source.kinds) if k >= 0] + relation_vectors(target)
    return MixedSpan(target.ngens, qg, zg)


def solve_mixed(F: Matrix, source: QZGroup, target: QZGroup, b: Sequence) -> list:
    """Some x in the ambient of `source` with F x - b in the relations of `target`."""
    div = [j for j, k in enumerate(source.kinds) if k < 0]
    lat = [j for j, k in enumerate(source.kinds) if k >= 0]
    rel = relation_vectors(target)
    A_r = F.submatrix(None, div)
    neg_b = [(-x,) for x in b]
    A_i = Matrix.hstack(
        [
            Matrix(neg_b, 1) if F.nrows else Matrix.zeros(0, 1),
            F.submatrix(None, lat),
            Matrix.from_columns([[-x for x in v] for v in rel], F.nrows),
        ]
    )
    _, zg = mixed_kernel(A_r, A_i)
    nr = len(div)
    # put the homogenizing coordinate first so the echelon basis exposes the gcd
    reordered = [[v[nr]] + list(v[:nr]) + list(v[nr + 1 :]) for v in zg]
    basis, leads = rational_echelon(reordered, nr + A_i.ncols)
    if not basis or leads[0] != 0 or basis[0][0] != 1:
        raise NoPreimage("element is not in the image")
    sol = basis[0]
    x = [0] * source.ngens
    for k, j in enumerate(div):
        x[j] = sol[1 + k]
    for k, j in enumerate(lat):
        x[j] = sol[1 + nr + k]
    return x


class QZSubquotient:
    """Canonical form of D / N for mixed spans N <= D in Q^dim.

    ``coords`` is a Q-linear map on the Q-span of D that is onto canonical
    coordinates of the quotient group; ``lift`` is a right inverse landing in D.
    """

    def __init__(self, D: MixedSpan, N: MixedSpan):
        self.D = D
        alpha, beta = len(D.rat), len(D.lat)
        n_rat = []
        for v in N.rat:
            tc = D.coordinates(v)
            if tc is None or any(tc[1]):
                raise ValueError("numerator is not contained in the denominator")
            n_rat.append(tc[0])
        n_lat = []
        for v in N.lat:
            tc = D.coordinates(v)
            if tc is None or any(x.denominator != 1 for x in tc[1]):
                raise ValueError("numerator is not contained in the denominator")
            n_lat.append((tc[0], [int(x) for x in tc[1]]))

        # kill the Q-span of N inside the t coordinates
        self._W, wpiv = rref(n_rat, alpha)
        self._wpiv = wpiv
        self._np = [j for j in range(alpha) if j not in wpiv]
        ap = len(self._np)

        ws = [self._project(t) for t, _ in n_lat]
        cs = [c for _, c in n_lat]
        K = len(n_lat)
        C = [[cs[k][i] for k in range(K)] for i in range(beta)]
        Dg, U, V, Ui, _, r = snf_lists(C, beta, K)
        self._U, self._Ui = U, Ui
        d = [Dg[i][i] for i in range(r)]
        # w-parts of the transformed generators
        WV = [[sum(ws[k][a] * V[k][i] for k in range(K)) for i in range(K)] for a in range(ap)]
        self._shear = [[mpq(WV[a][i], d[i]) for a in range(ap)] for i in range(r)]
        ell, _ = rational_echelon([[WV[a][i] for a in range(ap)] for i in range(r, K)], ap)
        rho = len(ell)
        _, ell_piv = rref(ell, ap)
        comp = [j for j in range(ap) if j not in ell_piv]
        basis_cols = [list(v) for v in ell] + [[int(a == j) for a in range(ap)] for j in comp]
        self._B = Matrix.from_columns(basis_cols, ap).to_rational() if ap else Matrix.zeros(0, 0)
        self._Binv = _inverse(self._B)
        self._rho = rho
        self._tors = [i for i in range(r) if d[i] != 1]
        self._ones = [i for i in range(r) if d[i] == 1]
        self._r = r
        self.group = QZGroup(ap - rho, rho, [d[i] for i in self._tors], beta - r)
        self._alpha, self._beta, self._ap = alpha, beta, ap

    def _project(self, t):
        t = reduce_by_rref(self._W, self._wpiv, t)
        return [t[j] for j in self._np]

    def coords(self, vec: Sequence) -> tuple:
        """Canonical representative of the class of vec (vec must lie in D)."""
        tc = self.D.coordinates(vec)
        if tc is None or any(x.denominator != 1 for x in tc[1]):
            raise NoPreimage("vector is not in the subgroup")
        return self.group.normalize(self._coords_from(tc[0], tc[1]))

    def linear_coords(self, vec: Sequence) -> list:
        """The Q-linear coordinate map, without reduction (vec in the Q-span of D)."""
        tc = self.D.coordinates(vec)
        if tc is None:
            raise NoPreimage("vector is outside the span of the subgroup")
        return self._coords_from(tc[0], tc[1])

    def _coords_from(self, t, c) -> list:
        w = self._project(t)
        cp = [sum(u * x for u, x in zip(row, c)) for row in self._U]
        for i in range(self._r):
            if cp[i]:
                w = [a - cp[i] * b for a, b in zip(w, self._shear[i])]
        s = self._Binv.apply(w) if self._ap else []
        rho = self._rho
        return list(s[rho:]) + list(s[:rho]) + [cp[i] for i in self._tors] + cp[self._r :]

    def lift(self, can: Sequence) -> list:
        """A vector of D representing the canonical element `can`."""
        g = self.group
        a, b, nt = g.q_rank, g.qz_rank, len(g.torsion)
        s = list(can[a : a + b]) + list(can[:a])
        w = self._B.apply(s) if self._ap else []
        cp = [0] * self._beta
        for k, i in enumerate(self._tors):
            cp[i] = can[a + b + k]
        for k in range(self._beta - self._r):
            cp[self._r + k] = can[a + b + nt + k]
        for i in range(self._r):
            if cp[i]:
                w = [x + cp[i] * y for x, y in zip(w, self._shear[i])]
        c = [sum(self._Ui[j][i] * cp[i] for i in range(self._beta)) for j in range(self._beta)]
        t = [mpq(0)] * self._alpha
        for k, j in enumerate(self._np):
            t[j] = w[k]
        vec = [mpq(0)] * self.D.dim
        for ti, row in zip(t, self.D.rat):
            if ti:
                vec = [x + ti * y for x, y in zip(vec, row)]
        for ci, row in zip(c, self.D.lat):
            if ci:
                vec = [x + ci * y for x, y in zip(vec, row)]
        return vec

    def lift_matrix(self) -> Matrix:
        n = self.group.ngens
        cols = [self.lift([int(i == k) for k in range(n)]) for i in range(n)]
        return Matrix.from_columns(cols, self.D.dim)


def _inverse(B: Matrix) -> Matrix:
    n = B.nrows
    if n == 0:
        return B
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(B.rows)]
    R, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return Matrix([r[n:] for r in R], n)
