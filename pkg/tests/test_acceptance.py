"""Acceptance criteria, one test each.

Every test records a single PASS/FAIL line; conftest.py prints them at the end
of the pytest run and ``python3 tests/test_acceptance.py`` prints them directly.
All thresholds are pinned below.
"""
from __future__ import annotations

import contextlib
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

import oracles  # noqa: E402
from cli_cases import GOOD_COEFF, MALFORMED, TIMES_TWO  # noqa: E402
from conehom import cli, documents  # noqa: E402
from conehom.complexes import CochainComplex  # noqa: E402
from conehom.cone_ucf import (  # noqa: E402
    build_cone,
    verify_comparison,
    verify_ker_xi,
    verify_ucf_all,
    xi_bar,
)
from conehom.lattice import FgAbGroup, FgMorphism, Matrix  # noqa: E402
from conehom.limits import (  # noqa: E402
    TowerOfGroups,
    lim1_tower,
    lim_tower,
    truncated_pullback,
    verify_cor5,
    verify_lemma2,
    verify_main_sequence,
    verify_theorem3,
)
from conehom.qz import QZGroup, is_isomorphism_qz  # noqa: E402
from conehom.simplicial import circle, cochain_of, projective_plane  # noqa: E402
from strategies import (  # noqa: E402
    DOCUMENT_KINDS,
    circle_system,
    random_complex,
    random_document_value,
    random_finite_tower,
    random_system,
)

# --- pinned thresholds ---------------------------------------------------------------------------

UCF_COMPLEXES = 200
UCF_RUNTIME_SECONDS = 60.0
COMPLEX_LENGTH, COMPLEX_RANK, COMPLEX_ENTRY = 4, 4, 9
TORSION_ORDERS = (2, 3, 4, 6, 8, 12)
Z = FgAbGroup.free(1)
UCF_COEFFICIENTS = {
    "Z": Z,
    "Z/2": FgAbGroup.cyclic(2),
    "Z/6": FgAbGroup.cyclic(6),
    "Z+Z/4": FgAbGroup.from_orders(1, [4]),
    "Z^2": FgAbGroup.free(2),
}
DIVISIBLE_COMPLEXES = 50
FREE_COMPLEXES = 100
KER_XI_INSTANCES = 100
LEMMA2_SYSTEMS = 20
LEMMA2_DEPTH = 6
FINITE_TOWERS = 100
EXPANDING_PRIMES = (2, 3, 5)
LIMIT_SYSTEMS = 20
SIMPLICIAL_RUNTIME_SECONDS = 5.0
ROUND_TRIP_VALUES = 500

RESULTS: list[str] = []


@contextlib.contextmanager
def criterion(number: int, title: str):
    """Record one PASS/FAIL line for the enclosed checks and re-raise failures."""
    detail = {}
    try:
        yield detail
    except BaseException as exc:
        line = f"criterion {number:>2} FAIL  {title}: {type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
        RESULTS.append(line)
        print(line)
        raise
    extra = ", ".join(f"{k}={v}" for k, v in detail.items())
    line = f"criterion {number:>2} PASS  {title}" + (f" ({extra})" if extra else "")
    RESULTS.append(line)
    print(line)


def canonical(G) -> tuple:
    G = G if isinstance(G, QZGroup) else QZGroup.from_fg(G)
    return (G.q_rank, G.qz_rank, tuple(G.torsion), G.free_rank)


def acceptance_complex(rng, **kw) -> CochainComplex:
    return random_complex(rng, length=rng.randint(1, COMPLEX_LENGTH), max_rank=COMPLEX_RANK,
                          max_entry=COMPLEX_ENTRY, orders=TORSION_ORDERS, **kw)


def degree_range(C: CochainComplex) -> range:
    return range(C.lo - 1, C.hi + 1)


# --- 1 ---------------------------------------------------------------------------------------------


def test_criterion_01_ucf_exactness():
    with criterion(1, "UCF exact on random complexes for five coefficient groups") as detail:
        rng = random.Random(101)
        complexes = [acceptance_complex(rng) for _ in range(UCF_COMPLEXES)]
        assert all(max(abs(x) for d in C.deltas for x in _entries(d)) <= COMPLEX_ENTRY for C in complexes if C.deltas)
        start = time.perf_counter()
        checked = 0
        for C in complexes:
            for name, G in UCF_COEFFICIENTS.items():
                reports = verify_ucf_all(C, G)
                assert [r.degree for r in reports] == list(degree_range(C))
                for r in reports:
                    assert r.chi_injective and r.xi_surjective and r.exact_middle, (name, r.degree)
                    assert r.ok, (name, r.degree, r.notes)
                    checked += 1
        elapsed = time.perf_counter() - start
        assert elapsed <= UCF_RUNTIME_SECONDS, f"{elapsed:.1f}s"
        detail.update(complexes=len(complexes), groups=len(UCF_COEFFICIENTS), degrees=checked, seconds=f"{elapsed:.1f}")


def _entries(f) -> list:
    return [x for row in f.matrix.rows for x in row] or [0]


# --- 2 ---------------------------------------------------------------------------------------------


def test_criterion_02_hand_anchors():
    with criterion(2, "hand-derived anchors (Z -x2-> Z and a single Z/4)") as detail:
        times_two = CochainComplex.from_matrices(0, [Z, Z], [Matrix([[2]])])
        cone = build_cone(times_two, Z)
        assert canonical(cone.homology(0).group) == (0, 0, (2,), 0)
        assert canonical(cone.homology(1).group) == (0, 0, (), 0)
        for n in (-1, 0, 2, 3):
            C = CochainComplex(n, [FgAbGroup.cyclic(4)], [])
            assert canonical(build_cone(C, Z).homology(n - 1).group) == (0, 0, (4,), 0)
        detail.update(anchors=6)


# --- 3 ---------------------------------------------------------------------------------------------


def test_criterion_03_divisible_coefficients():
    with criterion(3, "xi_bar is an isomorphism for G = Q and G = Q/Z") as detail:
        rng = random.Random(303)
        count = 0
        for _ in range(DIVISIBLE_COMPLEXES):
            C = acceptance_complex(rng)
            for G in (QZGroup.Q(), QZGroup.QmodZ()):
                cone = build_cone(C, G)
                for n in degree_range(C):
                    assert is_isomorphism_qz(xi_bar(cone, n)), n
            count += 1
        assert count >= DIVISIBLE_COMPLEXES
        detail.update(complexes=count)


# --- 4 ---------------------------------------------------------------------------------------------


def test_criterion_04_comparison_with_hom_complex():
    with criterion(4, "alpha-bar* iso and both triangles commute on free complexes") as detail:
        rng = random.Random(404)
        groups = list(UCF_COEFFICIENTS.values())
        count = 0
        for k in range(FREE_COMPLEXES):
            C = acceptance_complex(rng, free=True)
            assert C.is_free()
            for r in verify_comparison(C, groups[k % len(groups)], seed=k):
                assert r.alpha_star_iso and r.chi_triangle and r.xi_triangle, r.degree
                assert r.ok, r.notes
            count += 1
        detail.update(complexes=count)


# --- 5 ---------------------------------------------------------------------------------------------


def test_criterion_05_kernel_of_xi():
    with criterion(5, "Ker xi sequence exact (sigma injective, omega onto, im = ker)") as detail:
        rng = random.Random(505)
        groups = list(UCF_COEFFICIENTS.values()) + [QZGroup.QmodZ()]
        instances = 0
        for k in range(KER_XI_INSTANCES):
            C = acceptance_complex(rng)
            G = groups[k % len(groups)]
            for n in degree_range(C):
                r = verify_ker_xi(C, G, n)
                assert r.sigma_injective and r.omega_onto_kernel and r.exact_middle, (k, n)
                instances += 1
        assert instances >= KER_XI_INSTANCES
        detail.update(complexes=KER_XI_INSTANCES, instances=instances)


# --- 6 ---------------------------------------------------------------------------------------------


def test_criterion_06_hom_commutes_with_limits():
    with criterion(6, "Hom(colim) against lim Hom, exact and truncated") as detail:
        rng = random.Random(606)
        coeffs = list(UCF_COEFFICIENTS.values())
        for k in range(LEMMA2_SYSTEMS):
            S = random_system(rng, "eventually_iso")
            r = verify_lemma2(S, coeffs[k % len(coeffs)])
            assert r.mode == "exact" and r.ok, k
        systems = [circle_system(2), circle_system(3)]
        systems += [random_system(rng, "nonstabilizing") for _ in range(LEMMA2_SYSTEMS - len(systems))]
        for k, S in enumerate(systems):
            r = verify_lemma2(S, coeffs[k % len(coeffs)], LEMMA2_DEPTH)
            assert r.mode == "truncated" and r.depth == LEMMA2_DEPTH and r.ok, k
        detail.update(exact=LEMMA2_SYSTEMS, truncated=len(systems), depth=LEMMA2_DEPTH)


# --- 7 ---------------------------------------------------------------------------------------------


def test_criterion_07_derived_limits():
    with criterion(7, "lim and lim^1 of finite towers and of (Z, xp)") as detail:
        rng = random.Random(707)
        for _ in range(FINITE_TOWERS):
            T, (levels, bonds, tail_rows) = random_finite_tower(rng)
            cert = lim1_tower(T)
            assert cert.verdict == "Zero" and cert.recheck(T)
            lim = lim_tower(T)
            assert lim.exact
            top = len(levels) - 1
            if tail_rows is not None:
                stable, _ = oracles.stable_image(tail_rows, list(levels[-1]))
            else:
                stable = set(oracles.all_elements(list(levels[-1])))
            P = truncated_pullback(T, top + LEMMA2_DEPTH if tail_rows is not None else top)
            for j in range(top + 1):
                expected = oracles.push_down(levels, bonds, stable, top, j)
                assert oracles.image_set(lim.projection(j)) == expected
                assert oracles.image_set(P.projection(j)) == expected
            assert (lim.group.free_rank, lim.group.torsion) == oracles.subgroup_type(stable, list(levels[-1]))
        for p in EXPANDING_PRIMES:
            T = TowerOfGroups.constant(Z, FgMorphism(Z, Z, Matrix([[p]])))
            lim = lim_tower(T)
            assert lim.exact and lim.group.is_trivial
            cert = lim1_tower(T)
            assert cert.verdict == "Nonzero" and cert.index_factor == p and all(i == p for i in cert.indices)
            assert cert.recheck(T)
        detail.update(towers=FINITE_TOWERS, primes=EXPANDING_PRIMES)


# --- 8 ---------------------------------------------------------------------------------------------


def test_criterion_08_limit_sequences():
    with criterion(8, "lim sequence and Milnor sequence exact; pi iso for eventually-iso systems") as detail:
        rng = random.Random(808)
        coeffs = list(UCF_COEFFICIENTS.values())
        for kind in ("finite_surjective", "eventually_iso"):
            for k in range(LIMIT_SYSTEMS):
                S = random_system(rng, kind)
                G = coeffs[k % len(coeffs)]
                for n in degree_range(S.level(0)):
                    t = verify_theorem3(S, G, n, 0)
                    assert t.ok, (kind, k, n, t.checks)
                    m = verify_main_sequence(S, G, n)
                    assert m.mode == "exact" and m.ok, (kind, k, n, m.checks)
                    if kind == "eventually_iso":
                        assert m.lim1_next.verdict == "Zero"
                        assert m.checks["pi surjective"] and m.checks["ker pi matches lim^1"]
                        assert canonical(m.colimit_homology) == canonical(m.lim_homology)
                        assert verify_cor5(S, n, QZGroup.QmodZ()).ok, (k, n)
        detail.update(finite_surjective=LIMIT_SYSTEMS, eventually_iso=LIMIT_SYSTEMS)


# --- 9 ---------------------------------------------------------------------------------------------


def test_criterion_09_simplicial_anchors():
    with criterion(9, "S^1 and RP^2 homology with integer coefficients") as detail:
        start = time.perf_counter()
        s1 = build_cone(cochain_of(circle()), Z)
        assert canonical(s1.homology(0).group) == (0, 0, (), 1)
        assert canonical(s1.homology(1).group) == (0, 0, (), 1)
        rp2 = build_cone(cochain_of(projective_plane()), Z)
        assert canonical(rp2.homology(1).group) == (0, 0, (2,), 0)
        assert canonical(rp2.homology(2).group) == (0, 0, (), 0)
        elapsed = time.perf_counter() - start
        assert elapsed <= SIMPLICIAL_RUNTIME_SECONDS, f"{elapsed:.2f}s"
        detail.update(seconds=f"{elapsed:.2f}")


# --- 10 --------------------------------------------------------------------------------------------


def test_criterion_10_documents_and_exit_codes(tmp_path, capsys):
    with criterion(10, "document round trip and exit-code contract") as detail:
        rng = random.Random(1010)
        for k in range(ROUND_TRIP_VALUES):
            value = random_document_value(rng, DOCUMENT_KINDS[k % len(DOCUMENT_KINDS)])
            text = documents.dumps(value)
            back = documents.loads(text)
            assert type(back) is type(value) and back == value, k
            assert documents.dumps(back).encode("utf-8") == text.encode("utf-8"), k

        def run(argv):
            code = cli.main(argv)
            capsys.readouterr()
            return code

        coeff = tmp_path / "z.json"
        coeff.write_text(GOOD_COEFF, encoding="utf-8")
        complex_doc = tmp_path / "c.json"
        complex_doc.write_text(TIMES_TWO, encoding="utf-8")
        assert run(["ucf-verify", str(complex_doc), "--coeff", str(coeff)]) == 0
        tower = tmp_path / "t.json"
        tower.write_text(documents.dumps(TowerOfGroups.constant(Z, FgMorphism(Z, Z, Matrix([[2]])))), encoding="utf-8")
        assert run(["tower", "lim1", str(tower)]) == 0
        for name, contents, argv, _ in MALFORMED:
            doc = tmp_path / f"bad-{abs(hash(name))}.json"
            if contents is not None:
                doc.write_text(contents, encoding="utf-8")
            assert run([a.format(doc=doc, coeff=coeff) for a in argv]) == 2, name
        detail.update(values=ROUND_TRIP_VALUES, malformed=len(MALFORMED))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
