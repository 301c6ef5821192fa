"""Independent reference computations used by the test-suite.

Nothing here imports the package under test.  Integer linear algebra goes
through sympy's own Smith decomposition, and group types are canonicalized by
prime-power bookkeeping instead of matrix reduction.
"""
from __future__ import annotations

import itertools
from math import gcd

from sympy import Matrix, ZZ, factorint
from sympy.matrices.normalforms import invariant_factors, smith_normal_decomp

GroupType = tuple  # (free_rank, tuple_of_invariant_factors)


def canonical_type(free_rank: int, orders) -> GroupType:
    """Canonical (rank, d1 | d2 | ...) for Z^rank plus cyclic groups of `orders`."""
    powers: dict[int, list[int]] = {}
    extra_rank = 0
    for n in orders:
        n = abs(int(n))
        if n == 0:
            extra_rank += 1
            continue
        for p, e in factorint(n).items():
            powers.setdefault(p, []).append(p**e)
    width = max((len(v) for v in powers.values()), default=0)
    factors = [1] * width
    for vals in powers.values():
        vals.sort(reverse=True)
        for k, v in enumerate(vals):
            factors[k] *= v
    factors.sort()
    return (free_rank + extra_rank, tuple(f for f in factors if f != 1))


def invariants(rows: list[list[int]]) -> list[int]:
    if not rows or not rows[0]:
        return []
    return [abs(int(d)) for d in invariant_factors(Matrix(rows), domain=ZZ) if d != 0]


def cokernel_type(rows: list[list[int]], nrows: int) -> GroupType:
    """Type of Z^nrows modulo the column span of `rows`."""
    inv = invariants(rows) if rows and rows[0] else []
    return canonical_type(nrows - len(inv), inv)


def integer_kernel(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis (as column list) of {x in Z^ncols : A x = 0}."""
    if not rows:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    A = Matrix(rows)
    S, U, V = smith_normal_decomp(A, domain=ZZ)
    r = sum(1 for i in range(min(S.shape)) if S[i, i] != 0)
    return [[int(V[i, j]) for i in range(ncols)] for j in range(r, ncols)]


def _torsion_matrix(orders: list[int]) -> list[list[int]]:
    n = len(orders)
    return [[orders[i] if i == j else 0 for j in range(n)] for i in range(n)]


def cohomology_type(orders: list[list[int]], deltas: list[list[list[int]]], k: int) -> GroupType:
    """H^k of a complex given by generator orders per degree (0 = free).

    deltas[i] maps degree i to degree i+1, as a (g_{i+1} x g_i) integer list.
    Degrees outside range(len(orders)) are zero.
    """
    if k < 0 or k >= len(orders):
        return (0, ())
    g = len(orders[k])
    if g == 0:
        return (0, ())
    rel = [[o if i == j else 0 for j, o in enumerate(orders[k])] for i in range(g)]
    rel_cols = [c for c in zip(*rel) if any(c)]
    if k + 1 < len(orders) and orders[k + 1]:
        d = deltas[k]
        nxt = orders[k + 1]
        big = [list(d[i]) + [-(nxt[i] if i == j else 0) for j in range(len(nxt))] for i in range(len(nxt))]
        kern = [col[:g] for col in integer_kernel(big, g + len(nxt))]
    else:
        kern = [[int(i == j) for i in range(g)] for j in range(g)]
    image_cols = list(rel_cols)
    if k > 0 and orders[k - 1]:
        d = deltas[k - 1]
        image_cols += [[d[i][j] for i in range(g)] for j in range(len(orders[k - 1]))]
    image_cols = [c for c in image_cols if any(c)]
    kern = [c for c in kern if any(c)] + rel_cols
    if not kern:
        return (0, ())
    from sympy.matrices.normalforms import hermite_normal_form

    Kb = hermite_normal_form(Matrix(kern).T)  # a Z-basis of the cocycles, as columns
    if not image_cols:
        return (Kb.shape[1], ())
    X = Kb.solve_least_squares(Matrix(image_cols).T) if Kb.shape[0] != Kb.shape[1] else Kb.solve(Matrix(image_cols).T)
    assert Kb * X == Matrix(image_cols).T and all(x.is_integer for x in X)
    rows = [[int(X[i, j]) for j in range(X.shape[1])] for i in range(X.shape[0])]
    return cokernel_type(rows, Kb.shape[1])


def hom_type(a: GroupType, b: GroupType) -> GroupType:
    ra, ta = a
    rb, tb = b
    orders = [0] * (ra * rb) + list(tb) * ra + [gcd(x, y) for x in ta for y in tb]
    return canonical_type(0, orders)


def ext_type(a: GroupType, b: GroupType) -> GroupType:
    ra, ta = a
    rb, tb = b
    orders = list(ta) * rb + [gcd(x, y) for x in ta for y in tb]
    return canonical_type(0, orders)


def direct_sum_type(*types: GroupType) -> GroupType:
    rank = sum(t[0] for t in types)
    return canonical_type(rank, [o for t in types for o in t[1]])


def brute_hom_count(a_orders: list[int], b_orders: list[int]) -> int:
    """Count homomorphisms between finite groups by enumerating generator images."""
    elems = list(itertools.product(*[range(o) for o in b_orders]))
    total = 1
    for a in a_orders:
        total *= sum(1 for x in elems if all((a * xi) % o == 0 for xi, o in zip(x, b_orders)))
    return total


def finite_type_by_counting(orders: list[int]) -> GroupType:
    """Recover the invariant factors of a finite group from |{x : kx = 0}| counts."""
    elems = list(itertools.product(*[range(o) for o in orders]))
    n = len(elems)
    divisors = [k for k in range(1, n + 1) if n % k == 0]
    counts = {k: sum(1 for x in elems if all((k * xi) % o == 0 for xi, o in zip(x, orders))) for k in divisors}
    for cand in _factor_chains(n):
        if all(_kill_count(cand, k) == counts[k] for k in divisors):
            return (0, tuple(cand))
    raise AssertionError("no chain matches")


def _kill_count(chain, k):
    out = 1
    for d in chain:
        out *= gcd(d, k)
    return out


def _factor_chains(n, smallest=2):
    if n == 1:
        yield []
        return
    for d in range(smallest, n + 1):
        if n % d == 0:
            for rest in _factor_chains(n // d, d):
                if all(r % d == 0 for r in rest):
                    yield [d] + rest


def sympy_snf(rows: list[list[int]]):
    S, U, V = smith_normal_decomp(Matrix(rows), domain=ZZ)
    return S, U, V


# --- towers of finite groups, by enumeration -------------------------------------------------


def all_elements(orders: list[int]) -> list[tuple]:
    return list(itertools.product(*[range(o) for o in orders]))


def apply_mod(rows: list[list[int]], x: tuple, target_orders: list[int]) -> tuple:
    return tuple(sum(r[j] * x[j] for j in range(len(x))) % o for r, o in zip(rows, target_orders))


def stable_image(rows: list[list[int]], orders: list[int]) -> tuple[set, int]:
    """The eventual image of an endomorphism of a finite group and the first k with m^k(A) stable."""
    current = set(all_elements(orders))
    k = 0
    while True:
        nxt = {apply_mod(rows, x, orders) for x in current}
        if nxt == current:
            return current, k
        current, k = nxt, k + 1


def subgroup_type(elements: set, orders: list[int]) -> GroupType:
    """Invariant factors of a finite subgroup given as a set of elements, by counting k-torsion."""
    n = len(elements)
    divisors = [k for k in range(1, n + 1) if n % k == 0]
    counts = {k: sum(1 for x in elements if all((k * xi) % o == 0 for xi, o in zip(x, orders))) for k in divisors}
    for cand in _factor_chains(n):
        if all(_kill_count(cand, k) == counts[k] for k in divisors):
            return (0, tuple(cand))
    raise AssertionError("no chain matches")


def random_finite_hom(rng, source: list[int], target: list[int]) -> list[list[int]]:
    """Integer matrix of a random homomorphism between products of finite cyclic groups."""
    rows = []
    for b in target:
        row = []
        for a in source:
            step = b // gcd(a, b)
            row.append(step * rng.randrange(0, gcd(a, b)))
        rows.append(row)
    return rows


def elements_of(g):
    """Every element of a finite group given by its cyclic orders (``g.kinds``)."""
    return itertools.product(*[range(d) for d in g.kinds])


def image_set(f) -> set:
    """Image of a morphism of finite groups, by enumeration."""
    orders = list(f.target.kinds)
    rows = [[int(x) for x in r] for r in f.matrix.rows]
    return {apply_mod(rows, x, orders) for x in elements_of(f.source)}


def push_down(levels, bonds, elements, top, bottom):
    """Apply the oracle's bond matrices from level `top` down to `bottom`."""
    for k in range(top - 1, bottom - 1, -1):
        elements = {apply_mod(bonds[k], x, list(levels[k])) for x in elements}
    return elements
