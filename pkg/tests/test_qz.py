from __future__ import annotations

import itertools
from math import gcd

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from conehom.errors import IllDefinedMorphism, NoPreimage, NotDivisibleTarget
from conehom.lattice import FgAbGroup, FgMorphism, Matrix, cokernel, hom_group, image, kernel
from conehom.qz import (
    HomSpace,
    QZGroup,
    QZMorphism,
    compose_qz,
    corestriction,
    extend_to_divisible,
    hom_into,
    homology_qz,
    image_qz,
    induced,
    kernel_qz,
    quotient_qz,
    solve_preimage_qz,
)

from strategies import fg_groups, fg_morphisms, qz_morphisms

Q, QZ, Z = QZGroup.Q(), QZGroup.QmodZ(), QZGroup(free_rank=1)


def sig(g: QZGroup):
    return (g.q_rank, g.qz_rank, g.torsion, g.free_rank)


# --- groups and morphisms ------------------------------------------------------


def test_element_normal_form():
    G = QZGroup(1, 1, (4,), 1)
    assert G.normalize([mpq(1, 2), mpq(-1, 3), 5, -2]) == (mpq(1, 2), mpq(2, 3), 1, -2)
    assert str(G) == "Q + Q/Z + Z/4 + Z"


def test_morphism_validation_table():
    z3 = QZGroup(torsion=(3,))
    QZMorphism(z3, QZ, Matrix([[mpq(1, 3)]]))
    with pytest.raises(IllDefinedMorphism):
        QZMorphism(z3, QZ, Matrix([[mpq(1, 2)]]))
    with pytest.raises(IllDefinedMorphism):
        QZMorphism(QZ, Q, Matrix([[1]]))
    with pytest.raises(IllDefinedMorphism):
        QZMorphism(QZ, QZ, Matrix([[mpq(1, 2)]]))
    with pytest.raises(IllDefinedMorphism):
        QZMorphism(Q, Z, Matrix([[1]]))
    # Q -> Q/Z entries are rational scalars, Z -> Q/Z entries reduce mod 1
    assert QZMorphism(Z, QZ, Matrix([[mpq(7, 2)]])).matrix == Matrix([[mpq(1, 2)]])


# --- Hom into divisible targets ---------------------------------------------------


def test_hom_into_examples():
    assert sig(hom_into(FgAbGroup.free(1), Q).group) == (1, 0, (), 0)
    assert hom_into(FgAbGroup.cyclic(4), Q).group.is_trivial
    assert sig(hom_into(FgAbGroup.cyclic(4), QZ).group) == (0, 0, (4,), 0)


@settings(max_examples=60, deadline=None)
@given(fg_groups(), st.integers(1, 2))
def test_hom_into_closed_form(A, k):
    r, tors = A.free_rank, A.torsion
    assert sig(hom_into(A, Q, k).group) == (r * k, 0, (), 0)
    expected = FgAbGroup.from_orders(0, list(tors) * k)
    assert sig(hom_into(A, QZ, k).group) == (0, r * k, expected.torsion, 0)


def test_evaluation_pairing():
    h = hom_into(FgAbGroup.cyclic(4), QZ)
    assert h.evaluate((1,), (1,)) == (mpq(1, 4),)
    assert h.evaluate((3,), (2,)) == (mpq(1, 2),)


def test_induced_examples():
    z = FgAbGroup.free(1)
    double = FgMorphism(z, z, Matrix([[2]]))
    assert induced(double, Q).matrix == Matrix([[2]])
    proj = FgMorphism(z, FgAbGroup.cyclic(4), Matrix([[1]]))
    inc = induced(proj, QZ)
    assert sig(inc.source) == (0, 0, (4,), 0) and sig(inc.target) == (0, 1, (), 0)
    assert inc((1,)) == (mpq(1, 4),)
    assert kernel_qz(inc).group.is_trivial
    assert induced(FgMorphism.zero(z, z), QZ).is_zero()


@settings(max_examples=60, deadline=None)
@given(fg_groups(max_rank=1), fg_groups(max_rank=1))
def test_hom_space_matches_lattice_core_for_fg_targets(A, B):
    hs = HomSpace(A, QZGroup.from_fg(B))
    hg = hom_group(A, B)
    assert hs.group.to_fg() == hg.group
    for f in hg.basis:
        c = hs.coords([f.matrix])
        assert hs.morphism(c) == QZMorphism.from_fg(f)


# --- kernels, images, quotients -----------------------------------------------------


def test_kernel_examples():
    red = QZMorphism(Q, QZ, Matrix([[1]]))
    assert sig(kernel_qz(red).group) == (0, 0, (), 1)
    for n in (2, 3, 6):
        times = QZMorphism(QZ, QZ, Matrix([[n]]))
        assert sig(kernel_qz(times).group) == (0, 0, (n,), 0)


def test_quotient_example():
    inc = QZMorphism(Z, Q, Matrix([[1]]))
    assert sig(quotient_qz(inc).group) == (0, 1, (), 0)


@settings(max_examples=100, deadline=None)
@given(fg_morphisms())
def test_agrees_with_lattice_core_on_fg(f):
    g = QZMorphism.from_fg(f)
    assert kernel_qz(g).group.to_fg() == kernel(f).group
    assert image_qz(g).group.to_fg() == image(f).group
    assert quotient_qz(g).group.to_fg() == cokernel(f).group


def _torsion_elements(G: QZGroup, n: int):
    """All x in G with n x = 0 (divisible-free parts contribute nothing)."""
    ranges = []
    for k in G.kinds:
        if k == -2:
            ranges.append([mpq(j, n) for j in range(n)])
        elif k > 0:
            ranges.append([j for j in range(k) if (j * n) % k == 0])
        else:
            ranges.append([0])
    return itertools.product(*ranges)


def _torsion_count(G: QZGroup, n: int) -> int:
    out = n**G.qz_rank
    for d in G.torsion:
        out *= gcd(d, n)
    return out


@settings(max_examples=100, deadline=None)
@given(qz_morphisms(), st.sampled_from([2, 3, 4, 6]))
def test_kernel_torsion_matches_brute_force(f, n):
    K = kernel_qz(f)
    brute = sum(1 for x in _torsion_elements(f.source, n) if f.target.is_zero_element(f.matrix.apply(x)))
    assert _torsion_count(K.group, n) == brute


@settings(max_examples=100, deadline=None)
@given(qz_morphisms())
def test_kernel_image_structure(f):
    K, I = kernel_qz(f), image_qz(f)
    assert compose_qz(f, K.inclusion).is_zero()
    assert kernel_qz(K.inclusion).group.is_trivial
    assert kernel_qz(I.inclusion).group.is_trivial
    # coimage equals image
    coim = quotient_qz(K.inclusion)
    assert coim.group == I.group
    core = corestriction(f, I)
    assert compose_qz(I.inclusion, core) == f
    assert quotient_qz(core).group.is_trivial
    # torsion-free rank (dimension after tensoring with Q) is additive
    def rank(g):
        return g.q_rank + g.free_rank

    assert rank(f.source) == rank(K.group) + rank(I.group)


@settings(max_examples=80, deadline=None)
@given(qz_morphisms())
def test_subquotient_coordinates_invert_lifts(f):
    K = kernel_qz(f)
    sq = K.subquotient
    for i in range(K.group.ngens):
        e = [int(i == k) for k in range(K.group.ngens)]
        assert sq.coords(sq.lift(e)) == K.group.normalize(e)


@settings(max_examples=80, deadline=None)
@given(qz_morphisms(), st.data())
def test_solve_preimage_qz(f, data):
    if not f.source.ngens:
        return
    x = [data.draw(st.integers(-3, 3)) for _ in range(f.source.ngens)]
    x = [mpq(v, 2) if k < 0 else v for v, k in zip(x, f.source.kinds)]
    y = f(x)
    pre = solve_preimage_qz(f, y)
    assert f(pre) == y


def test_solve_preimage_qz_failure():
    inc = QZMorphism(Z, Q, Matrix([[2]]))
    assert solve_preimage_qz(inc, (4,)) == (2,)
    with pytest.raises(NoPreimage):
        solve_preimage_qz(inc, (mpq(1, 2),))


# --- homology -------------------------------------------------------------------------


def test_homology_examples():
    ident = QZMorphism(Q, Q, Matrix([[1]]))
    zero_in = QZMorphism(QZGroup(), Q, Matrix.zeros(1, 0))
    zero_out = QZMorphism(Q, QZGroup(), Matrix.zeros(0, 1))
    assert homology_qz(zero_in, ident).group.is_trivial
    assert homology_qz(ident, zero_out).group.is_trivial

    mid = QZGroup(1, 1)
    d1 = QZMorphism(Q, mid, Matrix([[2], [1]]))
    d0 = QZMorphism(mid, QZ, Matrix([[1, -2]]))
    assert compose_qz(d0, d1).is_zero()
    assert sig(homology_qz(d1, d0).group) == (0, 0, (2,), 0)

    z4 = QZGroup(torsion=(4,))
    assert sig(homology_qz(QZMorphism.zero(QZGroup(), z4), QZMorphism.zero(z4, QZGroup())).group) == (0, 0, (4,), 0)


# --- extension into divisible targets ---------------------------------------------------


def test_extension_example():
    z = FgAbGroup.free(1)
    j = FgMorphism(z, z, Matrix([[2]]))
    phi = QZMorphism(QZGroup.from_fg(z), QZ, Matrix([[mpq(1, 3)]]))
    psi = extend_to_divisible(j, phi)
    assert psi.matrix == Matrix([[mpq(1, 6)]])


def test_extension_requires_divisible_target():
    z = FgAbGroup.free(1)
    j = FgMorphism.identity(z)
    with pytest.raises(NotDivisibleTarget):
        extend_to_divisible(j, QZMorphism(QZGroup.from_fg(z), Z, Matrix([[1]])))


@settings(max_examples=100, deadline=None)
@given(fg_morphisms(), st.sampled_from([Q, QZ, QZGroup(1, 1)]), st.data())
def test_extension_restricts_correctly(f, T, data):
    K = kernel(f)
    j = K.inclusion  # an injection into f.source
    A = QZGroup.from_fg(K.group)
    phi = data.draw(qz_morphisms(source=A, target=T))
    psi = extend_to_divisible(j, phi)
    assert QZMorphism(A, T, psi.matrix @ j.matrix) == phi
