"""Command-line driver: ``qre {hecke,re,rtt,sphere,forms,all} [flags]``.

Exit codes: 0 all checks passed, 1 a check failed, 2 usage error, 3 an input
file or expression failed to parse.
"""

from __future__ import annotations

import argparse
import os
import sys

from .coeff import ScalarField, ScalarParseError
from .hecke import RMatrixParseError, load_rmatrix
from .ncalg import PresentationParseError, complete_to_degree, load_presentation
from .report import PASS, FAIL, Check, Config, Report, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PARSE = 0, 1, 2, 3


def _default_degree() -> int:
    raw = os.environ.get("QRE_DEGREE")
    if raw is None:
        return 6
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"qre: QRE_DEGREE must be an integer, got {raw!r}") from None


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=2, help="size of the R-matrix (default 2)")
    common.add_argument("--degree", type=int, default=None,
                        help="completion degree bound (default: $QRE_DEGREE or 6)")
    common.add_argument("--c", default=None, help="orbit constant, e.g. -1 or -q^2 or c")
    common.add_argument("--hbar", default=None, help="deformation parameter (default: symbolic hbar)")
    common.add_argument("--rmatrix", metavar="FILE", default=None, help="R-matrix in the text format")
    common.add_argument("--out", metavar="FILE", default=None, help="write the JSON report here")
    common.add_argument("--golden-update", action="store_true", help="rewrite golden files")
    common.add_argument("--profile", choices=("rational-roots", "ext-roots"), default="rational-roots")
    common.add_argument("--timings", action="store_true", help="include per-check timings")

    p = argparse.ArgumentParser(prog="qre", description="Exact checks for RE algebras and quantum spheres.")
    sub = p.add_subparsers(dest="suite", required=True)

    sub.add_parser("hecke", parents=[common], help="Hecke symmetry checks")

    re_p = sub.add_parser("re", parents=[common], help="RE algebra checks")
    re_p.add_argument("--flatness", type=int, metavar="D", default=None)
    re_p.add_argument("--trace", action="store_true")
    re_p.add_argument("--ch", action="store_true")
    re_p.add_argument("--shift-check", action="store_true")
    re_p.add_argument("--presentation", metavar="FILE", default=None,
                      help="complete a presentation file and report its dimensions")

    rtt = sub.add_parser("rtt", parents=[common], help="RTT algebra and coaction checks")
    rtt.add_argument("--coaction-check", action="store_true")
    rtt.add_argument("--k", type=_int_list, default=None, help="powers for the morphism check, e.g. 2,3")

    sp = sub.add_parser("sphere", parents=[common], help="quantum sphere checks")
    sp.add_argument("--flat", action="store_true")
    sp.add_argument("--projectors", action="store_true")
    sp.add_argument("--ch-plus", action="store_true")
    sp.add_argument("--leibniz", action="store_true")
    sp.add_argument("--module-check", metavar="NU", nargs="?", const="roots", default=None)
    sp.add_argument("--level", type=int, default=3)

    fm = sub.add_parser("forms", parents=[common], help="U_q(sl(2)) realization and forms")
    fm.add_argument("--decompose", action="store_true")
    fm.add_argument("--sphere", action="store_true")
    fm.add_argument("--omega", type=int, action="append", choices=(0, 1, 2), default=None)
    fm.add_argument("--level", type=int, default=None)
    fm.add_argument("--cohomology", action="store_true")
    fm.add_argument("--cross", action="store_true")
    fm.add_argument("--draws", type=int, default=5)

    sub.add_parser("all", parents=[common], help="every suite")
    return p


def _config(args) -> Config:
    cfg = Config(n=args.n, degree=args.degree if args.degree is not None else _default_degree(),
                 c=args.c, hbar=args.hbar, profile=args.profile, golden_update=args.golden_update)
    if cfg.degree < 2:
        raise _Usage("--degree must be at least 2")
    if cfg.n < 2:
        raise _Usage("--n must be at least 2")
    if args.rmatrix:
        cfg.R = load_rmatrix(args.rmatrix)
        cfg.n = cfg.R.n
    for expr in (args.c, args.hbar):
        if expr is not None:
            names = ("q", "c", "hbar")
            ScalarField(names).parse(expr)
    only = set()
    s = args.suite
    if s == "re":
        if args.flatness is not None:
            only.add("flatness")
            cfg.flatness = args.flatness
        for flag, group in ((args.trace, "trace"), (args.ch, "ch"), (args.shift_check, "shift")):
            if flag:
                only.add(group)
        if args.presentation and not only:
            only.add("none")
    elif s == "rtt":
        if args.coaction_check:
            only.add("coaction")
        if args.k:
            only.add("power")
            cfg.k_list = args.k
    elif s == "sphere":
        for flag, group in ((args.flat, "flatness"), (args.projectors, "projectors"),
                            (args.ch_plus, "ch_plus"), (args.leibniz, "leibniz")):
            if flag:
                only.add(group)
        if args.module_check:
            only.add("module")
            if args.module_check != "roots":
                cfg.module_nu = args.module_check
        cfg.level = args.level
    elif s == "forms":
        for flag, group in ((args.decompose, "decompose"), (args.sphere, "sphere"),
                            (args.cohomology, "cohomology"), (args.cross, "cross")):
            if flag:
                only.add(group)
        if args.omega:
            only.add("omega")
            cfg.omega = tuple(sorted(set(args.omega)))
        if args.level is not None:
            if args.level < 2:
                raise _Usage("--level must be at least 2")
            cfg.level = args.level
        cfg.draws = args.draws
    cfg.only = only
    return cfg


class _Usage(Exception):
    pass


def _presentation_check(path: str, degree: int) -> Check:
    pres = load_presentation(path)
    D = pres.degree or degree
    rs = complete_to_degree(pres, D)
    dims = [rs.graded_dimension(d) for d in range(D + 1)]
    return Check("re.presentation", "completion of a user presentation", PASS, None,
                 {"file": os.path.basename(path), "degree": D, "graded_dims": dims,
                  "rules": len(rs.rule_polys()), "confluent_all": rs.confluent_all})


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        cfg = _config(args)
        pres_check = None
        if getattr(args, "presentation", None):
            pres_check = _presentation_check(args.presentation, cfg.degree)
    except _Usage as exc:
        print(f"qre: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RMatrixParseError, PresentationParseError, ScalarParseError) as exc:
        print(f"qre: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (OSError, ValueError) as exc:
        print(f"qre: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.suite == "re" and cfg.only == {"none"}:
        report = Report("re", cfg.env())
    else:
        report = run_suite(args.suite, cfg)
    if pres_check is not None:
        report.checks.append(pres_check)

    text = report.to_json(timings=args.timings)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for c in report.checks:
        if c.status == FAIL:
            print(f"FAIL {c.id}: {c.ref}; witness: {c.witness}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
