"""Command-line front end.

Exit status: 0 when every verdict passes, 1 when some verdict fails, 2 for
unreadable or invalid input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import documents
from .complexes import CochainComplex, TowerOfComplexes, cohomology, validate
from .cone_ucf import (
    build_cone,
    naturality_check,
    resolve,
    verify_comparison,
    verify_ker_xi,
    verify_ucf,
    verify_ucf_all,
)
from .errors import ConehomError
from .limits import (
    TowerOfGroups,
    default_truncation,
    lim1_tower,
    lim_tower,
    truncated_pullback,
    verify_cor2,
    verify_cor3,
    verify_cor5,
    verify_lemma2,
    verify_lemma4,
    verify_main_sequence,
    verify_theorem3,
)
from .qz import QZGroup
from .simplicial import cochain_of, cochain_of_pair

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load(path: str, expect: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    except UnicodeDecodeError:
        raise InputError(f"{path}: not UTF-8 text") from None
    try:
        return documents.loads(text, expect=expect)
    except documents.DocumentError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_complex(path: str) -> CochainComplex:
    C = _load(path, "complex")
    check = validate(C)
    if not check.valid:
        raise InputError(f"{path}: differentials compose to a nonzero map at degree {check.failing_degree}")
    return C


def _load_coeff(path: str):
    return _load(path, "group")


def _emit(args, payload: dict) -> None:
    if getattr(args, "report", None):
        Path(args.report).write_text(json.dumps(documents.report_json(payload), sort_keys=True, indent=2) + "\n", encoding="utf-8")


def _verdict(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def _degrees(C: CochainComplex, degree, everything: bool = False) -> list[int]:
    if degree is not None and not everything:
        return [degree]
    return list(range(C.lo - 1, C.hi + 1))


# --- commands ----------------------------------------------------------------------------------------


def cmd_cohomology(args) -> int:
    C = _load_complex(args.complex)
    H = cohomology(C, args.degree)
    print(f"H^{args.degree} = {H.H}")
    _emit(args, {"degree": args.degree, "group": H.H, "representatives": H.reps})
    return EXIT_PASS


def cmd_cone_homology(args) -> int:
    C = _load_complex(args.complex)
    cone = build_cone(C, resolve(_load_coeff(args.coeff)))
    out = {}
    for n in _degrees(C, args.degree):
        H = cone.homology(n).group
        print(f"Hbar_{n} = {H}")
        out[str(n)] = str(H)
    _emit(args, {"homology": out})
    return EXIT_PASS


def cmd_ucf_verify(args) -> int:
    C = _load_complex(args.complex)
    G = _load_coeff(args.coeff)
    reports = verify_ucf_all(C, G) if args.degree is None or args.all_degrees else [verify_ucf(C, G, args.degree)]
    for r in reports:
        print(
            f"degree {r.degree}: {_verdict(r.ok)}  Ext = {r.ext_group}, Hbar = {r.homology_group}, Hom = {r.hom_group}"
            f"  chi injective={r.chi_injective} xi surjective={r.xi_surjective} exact={r.exact_middle}"
        )
    _emit(args, {"reports": reports})
    return EXIT_PASS if all(r.ok for r in reports) else EXIT_FAIL


def cmd_classical_compare(args) -> int:
    C = _load_complex(args.complex)
    reports = verify_comparison(C, _load_coeff(args.coeff))
    for r in reports:
        print(f"degree {r.degree}: {_verdict(r.ok)}  classical = {r.classical_group}, cone = {r.cone_group}")
    _emit(args, {"reports": reports})
    return EXIT_PASS if all(r.ok for r in reports) else EXIT_FAIL


def cmd_ker_xi_verify(args) -> int:
    C = _load_complex(args.complex)
    G = _load_coeff(args.coeff)
    reports = [verify_ker_xi(C, G, n) for n in _degrees(C, args.degree)]
    for r in reports:
        print(f"degree {r.degree}: {_verdict(r.ok)}  kernel rank {r.kernel_rank}")
    _emit(args, {"reports": reports})
    return EXIT_PASS if all(r.ok for r in reports) else EXIT_FAIL


def cmd_naturality_verify(args) -> int:
    f = _load(args.map, "cochain_map")
    for C in (f.source, f.target):
        if not validate(C).valid:
            raise InputError(f"{args.map}: a complex has differentials that do not compose to zero")
    G = _load_coeff(args.coeff)
    degrees = sorted(set(_degrees(f.source, args.degree)) | set(_degrees(f.target, args.degree)))
    reports = [naturality_check(f, G, n) for n in degrees]
    for r in reports:
        print(f"degree {r.degree}: {_verdict(r.ok)}")
    _emit(args, {"reports": reports})
    return EXIT_PASS if all(r.ok for r in reports) else EXIT_FAIL


def cmd_tower(args) -> int:
    T: TowerOfGroups = _load(args.tower, "tower")
    if args.operation == "lim":
        L = lim_tower(T)
        if L.exact:
            print(f"lim = {L.group} (inside level {T.anchor})")
            _emit(args, {"exact": True, "group": L.group, "inclusion": L.inclusion, "anchor": T.anchor})
        else:
            # fall back to the finite pullback so the caller still gets data
            k = default_truncation()
            P = truncated_pullback(T, k)
            print(f"lim not representable: {L.note}")
            print(f"  truncated pullback over {k} levels = {P.group}")
            _emit(args, {"exact": False, "note": L.note, "truncation": k, "pullback": P})
    else:
        cert = lim1_tower(T)
        print(f"lim^1 verdict: {cert.verdict}")
        if cert.verdict == "Zero" and T.tail is not None:
            print(f"  images stabilize after {cert.depth} steps")
        if cert.verdict == "Nonzero":
            print(f"  image indices {cert.indices} (index factor {cert.index_factor})")
        _emit(args, cert)
    return EXIT_PASS


VERIFIERS = ("lemma2", "cor2", "lemma4", "cor3", "theorem3", "milnor", "cor5")


def cmd_system_verify(args) -> int:
    S: TowerOfComplexes = _load(args.system, "system")
    G = _load_coeff(args.coeff)
    k = args.truncate if args.truncate is not None else default_truncation()
    which = list(dict.fromkeys(args.verifiers or ()))  # command-line order, repeats dropped
    if not which:
        raise InputError("choose at least one of " + ", ".join("--" + v for v in VERIFIERS))
    n = args.degree
    results = []
    for v in which:
        if v == "lemma2":
            r = verify_lemma2(S, G, args.truncate)
        elif v == "cor2":
            r = verify_cor2(S, G, n, k)
        elif v == "lemma4":
            r = verify_lemma4(S, G, n, k)
        elif v == "cor3":
            r = verify_cor3(S, G, n, k)
        elif v == "theorem3":
            r = [verify_theorem3(S, G, n, i, k) for i in (0, 1)]
        elif v == "milnor":
            r = verify_main_sequence(S, G, n, k)
        else:
            if not _as_qz(G).is_divisible:
                raise InputError("--cor5 needs divisible coefficients such as Q or Q/Z")
            r = verify_cor5(S, n, G)
        reports = r if isinstance(r, list) else [r]
        ok = all(x.ok for x in reports)
        print(f"{v}: {_verdict(ok)}")
        for x in reports:
            for name, value in getattr(x, "checks", {}).items():
                if not value:
                    print(f"  failed: {name}")
        results.append({"verifier": v, "ok": ok, "reports": reports})
    _emit(args, {"results": results})
    return EXIT_PASS if all(r["ok"] for r in results) else EXIT_FAIL


def _as_qz(G):
    return G if isinstance(G, QZGroup) else QZGroup.from_fg(G)


def cmd_simplicial_import(args) -> int:
    K = _load(args.facets, "facets")
    if args.pair:
        C = cochain_of_pair(K, _load(args.pair, "facets"))
    else:
        C = cochain_of(K)
    text = documents.dumps(C)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_PASS


# --- parser ------------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="conehom", description="Cone homology, universal coefficients and derived limits.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_report(q):
        q.add_argument("--report", help="write a JSON report with every matrix used")
        return q

    q = with_report(sub.add_parser("cohomology", help="H^n of a cochain complex"))
    q.add_argument("complex")
    q.add_argument("--degree", type=int, required=True)
    q.set_defaults(func=cmd_cohomology)

    q = with_report(sub.add_parser("cone-homology", help="Hbar_n with coefficients"))
    q.add_argument("complex")
    q.add_argument("--coeff", required=True)
    q.add_argument("--degree", type=int)
    q.set_defaults(func=cmd_cone_homology)

    q = with_report(sub.add_parser("ucf-verify", help="check the universal coefficient sequence"))
    q.add_argument("complex")
    q.add_argument("--coeff", required=True)
    q.add_argument("--degree", type=int)
    q.add_argument("--all-degrees", action="store_true")
    q.set_defaults(func=cmd_ucf_verify)

    q = with_report(sub.add_parser("classical-compare", help="compare with homology of Hom(C, G); free complexes only"))
    q.add_argument("complex")
    q.add_argument("--coeff", required=True)
    q.set_defaults(func=cmd_classical_compare)

    q = with_report(sub.add_parser("ker-xi-verify", help="check the presentation of Ker xi"))
    q.add_argument("complex")
    q.add_argument("--coeff", required=True)
    q.add_argument("--degree", type=int)
    q.set_defaults(func=cmd_ker_xi_verify)

    q = with_report(sub.add_parser("naturality-verify", help="check naturality along a cochain map"))
    q.add_argument("map")
    q.add_argument("--coeff", required=True)
    q.add_argument("--degree", type=int)
    q.set_defaults(func=cmd_naturality_verify)

    q = with_report(sub.add_parser("tower", help="lim or lim^1 of a tower of groups"))
    q.add_argument("operation", choices=["lim", "lim1"])
    q.add_argument("tower")
    q.set_defaults(func=cmd_tower)

    q = sub.add_parser("system", help="verifiers for direct systems of complexes")
    ssub = q.add_subparsers(dest="action", required=True)
    v = with_report(ssub.add_parser("verify"))
    for name in VERIFIERS:
        v.add_argument(f"--{name}", action="append_const", const=name, dest="verifiers")
    v.add_argument("system")
    v.add_argument("--coeff", required=True)
    v.add_argument("--degree", type=int, required=True)
    v.add_argument("--truncate", type=int)
    v.set_defaults(func=cmd_system_verify)

    q = sub.add_parser("simplicial", help="simplicial complexes")
    ssub = q.add_subparsers(dest="action", required=True)
    v = ssub.add_parser("import", help="cochain complex of a facet list (or of a pair)")
    v.add_argument("facets")
    v.add_argument("--pair")
    v.add_argument("--output", "-o")
    v.set_defaults(func=cmd_simplicial_import)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConehomError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
