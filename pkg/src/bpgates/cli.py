"""Command-line front-end.

Exit codes: 0 for affirmative/successful results, 1 for negative verdicts
(not bias-preserving, not equicoherent, obstruction found), 2 for input or
usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import css, io, synth, verify, zx
from .linalg import DEFAULT_TOL, GOLDEN_THETA, index_to_bits, require_unitary


def _load_matrix(path: str, tol: float) -> np.ndarray:
    return require_unitary(io.read_matrix(io.read_file(path)), tol)


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _perm_lines(p: verify.PermutationWithPhases) -> list[str]:
    return [
        f"PERM {index_to_bits(s, p.n)}->{index_to_bits(p.perm[s], p.n)} "
        f"phase={p.phases[s]:.17g}"
        for s in range(1 << p.n)
    ]


def cmd_check(args) -> int:
    G = _load_matrix(args.matrix, args.tol)
    verdict = verify.check_permutation(G, args.tol)
    agree_zx = verify.check_zx(G, args.tol)
    agree_norm = verify.check_normalizer(
        G, args.tol, exhaustive=args.exhaustive_normalizer
    )
    if verdict.is_bp != agree_zx or verdict.is_bp != agree_norm:
        print(
            f"error: verifier disagreement (perm={verdict.is_bp} zx={agree_zx} "
            f"normalizer={agree_norm})",
            file=sys.stderr,
        )
        return 2
    payload: dict = {
        "bp": verdict.is_bp,
        "checks": {
            "permutation": verdict.is_bp,
            "zx": agree_zx,
            "normalizer": agree_norm,
        },
    }
    if verdict.is_bp:
        p = verdict.canonical
        payload["canonical"] = {
            "perm": {
                index_to_bits(s, p.n): index_to_bits(p.perm[s], p.n)
                for s in range(1 << p.n)
            },
            "phases": list(p.phases),
        }
        _emit(args, payload, ["BP yes"] + _perm_lines(p))
        return 0
    payload["witness"] = verdict.witness
    _emit(args, payload, ["BP no", f"WITNESS {verdict.witness}"])
    return 1


def cmd_decompose_zx(args) -> int:
    G = _load_matrix(args.matrix, args.tol)
    d = zx.zx_decompose(G, args.tol)
    if args.output:
        io.write_file(args.output, io.write_zx, d)
    else:
        io.write_zx(d, sys.stdout)
    return 0


def cmd_distance(args) -> int:
    U = _load_matrix(args.matrix, args.tol)
    V = _load_matrix(args.other, args.tol)
    from .linalg import phase_optimized_error, worst_case_error

    value = (
        phase_optimized_error(U, V) if args.phase_optimized else worst_case_error(U, V)
    )
    _emit(args, {"error": value}, [f"E {value:.17g}"])
    return 0


def cmd_synth(args) -> int:
    if args.target:
        p = io.read_perm(io.read_file(args.target))
    else:
        G = _load_matrix(args.matrix, args.tol)
        verdict = verify.check_permutation(G, args.tol)
        if not verdict.is_bp:
            print(f"not bias-preserving: {verdict.witness}", file=sys.stderr)
            return 1
        p = verdict.canonical
    report = synth.synthesize(p, eps=args.eps, theta=args.theta)
    if args.output:
        io.write_file(args.output, io.write_circuit, report.sequence)
    payload = {
        "achieved_error": report.achieved_error,
        "target_eps": report.target_eps,
        "gate_counts": report.gate_counts,
        "ancillas": report.sequence.n_anc,
    }
    lines = [
        f"ACHIEVED {report.achieved_error:.17g}",
        f"EPS {report.target_eps:.17g}",
        f"ANCILLAS {report.sequence.n_anc}",
    ] + [f"COUNT {k} {v}" for k, v in sorted(report.gate_counts.items())]
    if not args.output:
        buf = []

        class _W:
            def write(self, s):
                buf.append(s)

        io.write_circuit(report.sequence, _W())
        lines += ["".join(buf).rstrip("\n")]
    _emit(args, payload, lines)
    return 0


def cmd_simulate(args) -> int:
    seq = io.read_circuit(io.read_file(args.circuit))
    U = synth.simulate_restricted(seq) if args.restrict else synth.simulate(seq)
    if args.output:
        io.write_file(args.output, io.write_matrix, U)
    else:
        io.write_matrix(U, sys.stdout)
    return 0


def _load_css(args) -> css.CssEncoding:
    c1 = io.read_code(io.read_file(args.c1))
    c2 = io.read_code(io.read_file(args.c2))
    return css.build_css(c1, c2)


def cmd_css_build(args) -> int:
    e = _load_css(args)
    payload = {
        "n": e.n,
        "k": e.k,
        "l": e.l,
        "transversal": ["".join(str(int(b)) for b in row) for row in e.transversal],
        "supports": {
            index_to_bits(x, e.k): sorted(index_to_bits(t, e.n) for t in sup)
            for x, sup in e.basis_support.items()
        },
    }
    lines = [f"CSS n={e.n} k={e.k} l={e.l}"]
    lines += [f"TRANSVERSAL {row}" for row in payload["transversal"]]
    for x in sorted(payload["supports"]):
        lines.append(f"SUPPORT {x} {{{', '.join(payload['supports'][x])}}}")
    _emit(args, payload, lines)
    return 0


def cmd_css_check(args) -> int:
    e = _load_css(args)
    ok, l, violation = css.check_equicoherent(e, args.tol)
    payload = {"equicoherent": ok, "l": l, "violation": violation}
    if ok:
        _emit(args, payload, [f"EQUICOHERENT yes l={l}"])
        return 0
    _emit(args, payload, ["EQUICOHERENT no", f"WITNESS {violation}"])
    return 1


def cmd_css_lift(args) -> int:
    e = _load_css(args)
    g = io.read_perm(io.read_file(args.gate))
    lifted = css.lift_logical(e, g)
    if args.output:
        io.write_file(args.output, io.write_perm, lifted)
    else:
        io.write_perm(lifted, sys.stdout)
    return 0


def cmd_css_restrict(args) -> int:
    e = _load_css(args)
    if args.matrix:
        G = _load_matrix(args.matrix, args.tol)
    else:
        G = verify.to_unitary(io.read_perm(io.read_file(args.gate)))
    try:
        logical = css.restrict_physical(e, G, args.tol)
    except (css.NotBiasPreservingError, css.NotLogicalOperatorError) as exc:
        print(f"REJECTED {exc}", file=sys.stderr)
        return 1
    if args.output:
        io.write_file(args.output, io.write_perm, logical)
    else:
        io.write_perm(logical, sys.stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bpgates",
        description="Verify, decompose, synthesize and CSS-lift Z-bias-preserving gates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, json_flag=True):
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        if json_flag:
            p.add_argument("--json", action="store_true")

    p = sub.add_parser("check", help="decide bias preservation of a matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--exhaustive-normalizer", action="store_true")
    add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decompose-zx", help="print the ZX-decomposition")
    p.add_argument("--matrix", required=True)
    p.add_argument("--output")
    add_common(p, json_flag=False)
    p.set_defaults(func=cmd_decompose_zx)

    p = sub.add_parser("distance", help="worst-case gate-replacement error")
    p.add_argument("--matrix", required=True)
    p.add_argument("--other", required=True)
    p.add_argument("--phase-optimized", action="store_true")
    add_common(p)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("synth", help="compile a gate over {X, Rz, CNOT, CCNOT}")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--target", help="permutation-with-phases file")
    group.add_argument("--matrix", help="dense matrix file (verified first)")
    p.add_argument("--eps", type=float, default=1e-3)
    p.add_argument("--theta", type=float, default=GOLDEN_THETA)
    p.add_argument("--output")
    add_common(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("simulate", help="dense unitary of a circuit file")
    p.add_argument("--circuit", required=True)
    p.add_argument("--restrict", action="store_true", help="data-qubit restriction")
    p.add_argument("--output")
    add_common(p, json_flag=False)
    p.set_defaults(func=cmd_simulate)

    for name, fn, extra in (
        ("css-build", cmd_css_build, ()),
        ("css-check", cmd_css_check, ()),
        ("css-lift", cmd_css_lift, ("gate",)),
        ("css-restrict", cmd_css_restrict, ("restrict",)),
    ):
        p = sub.add_parser(name)
        p.add_argument("--c1", required=True, help="classical code file for C1")
        p.add_argument("--c2", required=True, help="classical code file for C2")
        if "gate" in extra:
            p.add_argument("--gate", required=True, help="logical gate (perm file)")
            p.add_argument("--output")
        if "restrict" in extra:
            group = p.add_mutually_exclusive_group(required=True)
            group.add_argument("--matrix", help="physical gate as dense matrix")
            group.add_argument("--gate", help="physical gate as perm file")
            p.add_argument("--output")
        add_common(p)
        p.set_defaults(func=fn)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (io.FormatError, css.CodeConstructionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
