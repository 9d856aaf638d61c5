"""Command-line surface tying the hierarchy modules together.

Exit codes: 0 = Member/Copositive/pass, 1 = NotMember/NotCopositive/fail,
2 = Unknown/Indeterminate, 3 = usage or parse error.
All randomized paths take --seed and default to a fixed constant, so runs
are reproducible by default.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import docio, gridcone, oracle, polycone, soscone
from .docio import DocumentError, certificate_document, emit_scalar
from .partition import Verdict, certify_copositivity
from .tensor import SymTensor, eval_form, necessary_screen

EXIT_MEMBER = 0
EXIT_NOT_MEMBER = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 3

DEFAULT_SEED = 20240


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors, which collides with the Unknown code
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load_tensor(path: str) -> SymTensor:
    try:
        return docio.parse_tensor(Path(path).read_text())
    except (OSError, DocumentError) as exc:
        print(f"error: cannot load tensor from {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    print(text)


def _cmd_screen(args) -> int:
    A = _load_tensor(args.tensor)
    res = necessary_screen(A)
    verdict = "Pass" if res.passed else "NotCopositive"
    doc = certificate_document(verdict, "screen", tensor=A,
                               stats={"reason": res.reason} if res.reason else None)
    _emit(doc, args.out)
    return EXIT_MEMBER if res.passed else EXIT_NOT_MEMBER


def _cmd_check(args) -> int:
    A = _load_tensor(args.tensor)
    r = args.level
    if args.method == "coef":
        v = polycone.member_C_r(A, r)
        if v.member:
            doc = certificate_document("Member", "coef", level=r, tensor=A)
            _emit(doc, args.out)
            return EXIT_MEMBER
        doc = certificate_document(
            "NotMember", "coef", level=r, tensor=A,
            stats={"worst_theta": list(v.worst_theta),
                   "worst_value": emit_scalar(v.worst_value)})
        _emit(doc, args.out)
        return EXIT_NOT_MEMBER
    if args.method == "sos":
        v = soscone.member_K_r(A, r, max_iters=args.max_iters)
        stats = {"iterations": v.iterations, "residual": v.residual,
                 "min_eig": v.min_eig, "fast_path": v.fast_path}
        if v.certified:
            doc = certificate_document("Certified", "sos", level=r, tensor=A,
                                       stats=stats)
            _emit(doc, args.out)
            return EXIT_MEMBER
        doc = certificate_document("Unknown", "sos", level=r, tensor=A, stats=stats)
        _emit(doc, args.out)
        return EXIT_UNKNOWN
    # grid
    v = gridcone.member_O_r(A, r)
    if v.member:
        doc = certificate_document("Member", "grid", level=r, tensor=A)
        _emit(doc, args.out)
        return EXIT_MEMBER
    doc = certificate_document("NotMember", "grid", level=r, tensor=A,
                               witness=v.witness, witness_value=v.value)
    _emit(doc, args.out)
    return EXIT_NOT_MEMBER


def _cmd_certify(args) -> int:
    A = _load_tensor(args.tensor)
    cert = certify_copositivity(A, max_depth=args.max_depth,
                                simplex_budget=args.budget)
    stats = {}
    if cert.stats:
        stats = {"max_depth": cert.stats.max_depth_reached,
                 "simplices": cert.stats.simplices_processed,
                 "unresolved": cert.stats.unresolved}
        if cert.stats.diameter_unresolved is not None:
            stats["diameter_unresolved"] = cert.stats.diameter_unresolved
    doc = certificate_document(cert.verdict.value, cert.method,
                               depth=cert.stats.max_depth_reached if cert.stats else None,
                               witness=cert.witness, witness_value=cert.witness_value,
                               stats=stats, tensor=A)
    _emit(doc, args.out)
    if cert.verdict is Verdict.COPOSITIVE:
        return EXIT_MEMBER
    if cert.verdict is Verdict.NOT_COPOSITIVE:
        return EXIT_NOT_MEMBER
    return EXIT_UNKNOWN


def _cmd_expand(args) -> int:
    A = _load_tensor(args.tensor)
    expander = (polycone.expand_Pr_closed_form if args.closed_form
                else polycone.expand_auto)
    exp = expander(A, args.level)
    rows = [{"theta": list(theta), "coefficient": emit_scalar(c)}
            for theta, c in sorted(exp.coeffs.items())]
    _emit({"n": A.n, "d": A.d, "level": args.level, "coefficients": rows},
          args.out)
    return EXIT_MEMBER


def _cmd_oracle(args) -> int:
    A = _load_tensor(args.tensor)
    if args.resolution is not None:
        if args.threads > 1:
            report = _parallel_grid_min(A, args.resolution, args.threads)
        else:
            report = oracle.simplex_grid_min(A, args.resolution)
        doc = {"min_value": emit_scalar(report.min_value),
               "argmin": [emit_scalar(c) for c in report.argmin],
               "resolution": report.resolution}
    else:
        report = oracle.fullspace_sample_min(A, args.samples, args.seed)
        doc = {"min_value": report.min_value,
               "argmin": list(report.argmin),
               "samples": report.samples, "seed": report.seed}
    _emit(doc, args.out)
    return EXIT_MEMBER if report.min_value >= 0 else EXIT_NOT_MEMBER


def _parallel_grid_min(A: SymTensor, resolution: int, threads: int):
    pts = [tuple(Fraction(c, resolution) for c in comp)
           for comp in oracle._compositions(resolution, A.n)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        vals = list(pool.map(lambda p: eval_form(A, p), pts))
    k = min(range(len(vals)), key=vals.__getitem__)
    return oracle.OracleReport(vals[k], pts[k], resolution=resolution)


def _cmd_compare(args) -> int:
    A = _load_tensor(args.tensor)
    levels = list(range(args.levels + 1))
    matrix: dict[str, list[str]] = {"coef": [], "sos": [], "grid": []}
    for r in levels:
        matrix["coef"].append("Member" if polycone.member_C_r(A, r).member
                              else "NotMember")
        sos = soscone.member_K_r(A, r, max_iters=args.max_iters)
        matrix["sos"].append("Certified" if sos.certified else "Unknown")
        matrix["grid"].append("Member" if gridcone.member_O_r(A, r).member
                              else "NotMember")
    cert = certify_copositivity(A, max_depth=args.max_depth, simplex_budget=args.budget)
    screen = necessary_screen(A)
    doc = {"input_digest": docio.tensor_digest(A),
           "levels": levels,
           "screen": "Pass" if screen.passed else "Fail",
           "hierarchies": matrix,
           "certify": cert.verdict.value}
    if args.json:
        _emit(doc, args.out)
    else:
        width = max(9, *(len(v) for row in matrix.values() for v in row))
        print(f"screen: {doc['screen']}    certify: {doc['certify']}")
        print("level   " + "  ".join(f"{r:>{width}}" for r in levels))
        for name in ("coef", "sos", "grid"):
            print(f"{name:<7} " + "  ".join(f"{v:>{width}}" for v in matrix[name]))
        if args.out:
            Path(args.out).write_text(json.dumps(doc, indent=2) + "\n")
    if cert.verdict is Verdict.NOT_COPOSITIVE:
        return EXIT_NOT_MEMBER
    if cert.verdict is Verdict.COPOSITIVE:
        return EXIT_MEMBER
    return EXIT_UNKNOWN


def _cmd_verify(args) -> int:
    try:
        cert = docio.load_certificate(Path(args.certificate).read_text())
    except (OSError, DocumentError) as exc:
        print(f"error: cannot load certificate: {exc}", file=sys.stderr)
        return EXIT_USAGE
    A = _load_tensor(args.tensor)
    if cert["input_digest"] != docio.tensor_digest(A):
        print("verify: FAIL (input digest mismatch)")
        return EXIT_NOT_MEMBER
    verdict = cert["verdict"]
    if "witness" in cert:
        point = tuple(docio.parse_scalar(c) for c in cert["witness"]["point"])
        value = eval_form(A, point)
        if verdict in ("NotMember", "NotCopositive"):
            ok = value < 0 and all(c >= 0 for c in point)
            if "value" in cert["witness"]:
                ok = ok and value == docio.parse_scalar(cert["witness"]["value"])
            print(f"verify: {'OK' if ok else 'FAIL'} "
                  f"(witness value {emit_scalar(value)})")
            return EXIT_MEMBER if ok else EXIT_NOT_MEMBER
    print(f"verify: OK (digest matches; verdict {verdict} carries no witness)")
    return EXIT_MEMBER


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="copotensor",
                description="Copositivity certification for symmetric tensors")
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("tensor", help="tensor document (JSON)")
        sp.add_argument("--out", help="also write the result document to a file")

    sp = sub.add_parser("screen", help="necessary-condition screen")
    add_common(sp)
    sp.set_defaults(func=_cmd_screen)

    sp = sub.add_parser("check", help="hierarchy membership at a level")
    add_common(sp)
    sp.add_argument("--method", choices=("coef", "sos", "grid"), required=True)
    sp.add_argument("--level", type=int, default=0)
    sp.add_argument("--max-iters", type=int, default=soscone.DEFAULT_MAX_ITERS)
    sp.set_defaults(func=_cmd_check)

    sp = sub.add_parser("certify", help="branch-and-bound copositivity")
    add_common(sp)
    sp.add_argument("--max-depth", type=int, default=32)
    sp.add_argument("--budget", type=int, default=100_000)
    sp.set_defaults(func=_cmd_certify)

    sp = sub.add_parser("expand", help="emit the coefficient table")
    add_common(sp)
    sp.add_argument("--level", type=int, default=0)
    sp.add_argument("--closed-form", action="store_true")
    sp.set_defaults(func=_cmd_expand)

    sp = sub.add_parser("oracle", help="brute-force minimum")
    add_common(sp)
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--resolution", type=int)
    group.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--threads", type=int, default=1)
    sp.set_defaults(func=_cmd_oracle)

    sp = sub.add_parser("compare", help="run all hierarchies over levels 0..R")
    add_common(sp)
    sp.add_argument("--levels", type=int, default=3, metavar="R")
    sp.add_argument("--max-iters", type=int, default=soscone.DEFAULT_MAX_ITERS)
    sp.add_argument("--max-depth", type=int, default=32)
    sp.add_argument("--budget", type=int, default=100_000)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_compare)

    sp = sub.add_parser("verify", help="re-check a certificate document")
    sp.add_argument("certificate", help="certificate document (JSON)")
    sp.add_argument("--tensor", required=True)
    sp.set_defaults(func=_cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
