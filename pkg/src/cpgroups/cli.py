"""Command-line front end.

Exit status: 0 on success, 1 on usage or input errors, 2 when a scan finds a
counterexample or a verification check fails.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from typing import Sequence, TextIO

from . import search
from .abelian import report
from .errors import (
    CPGError,
    EmptyWord,
    InvariantViolation,
    PolySyntaxError,
    UnknownSuite,
    WordSyntaxError,
)
from .exactmat import abelian_structure_of, circulant
from .families import (
    GnmkParams,
    HrnsParams,
    PrishchepovParams,
    gh_gamma,
    gilbert_howie_classification,
    gilbert_howie_filter,
    gnmk_free_necessary_conditions,
    gnmk_rank2_check,
    gnmk_resultant_class,
    hrns_abelianisation,
    hrns_log_classification,
    prishchepov_representer,
    prishchepov_z_check,
    sieradski_log,
)
from .intpoly import POLY_GRAMMAR, mahler_measure, parse_poly
from .jsonio import decimal_str, dumps
from .presentation import WORD_GRAMMAR, CyclicPresentation, exponent_sums, parse_word
from .verify import SUITES, run_suite

EXIT_OK, EXIT_USAGE, EXIT_FAILURE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cpgroups", description="Abelianisations of cyclically presented groups.")
    p.add_argument("--threads", type=_positive, default=1, help="worker processes for scans (default 1)")
    p.add_argument("-o", "--output", help="write the report to this file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="abelianisation of G_n(w)")
    a.add_argument("--word", required=True, help=WORD_GRAMMAR)
    a.add_argument("--n", type=_positive, required=True)
    a.add_argument("--format", choices=("text", "json"), default="text")
    a.add_argument("--dump-matrix", action="store_true", help="include the relation matrix")

    f = sub.add_parser("family", help="named families")
    fam = f.add_subparsers(dest="family", required=True, parser_class=_Parser)
    h = fam.add_parser("hrns", help="generalised Fibonacci group H(r,n,s)")
    for name in ("r", "n", "s"):
        h.add_argument(f"--{name}", type=_positive, required=True)
    g = fam.add_parser("gnmk", help="G_n(m,k) = G_n(x0 xm xk^-1)")
    g.add_argument("--n", type=_positive, required=True)
    g.add_argument("--m", type=_nonneg, required=True)
    g.add_argument("--k", type=_nonneg, required=True)
    gh = fam.add_parser("gilbert-howie", help="H(n,m) = G_n(m,1)")
    gh.add_argument("--n", type=_positive, required=True)
    gh.add_argument("--m", type=_nonneg, required=True)
    pr = fam.add_parser("prishchepov", help="P(r,n,k,s,q)")
    for name in ("r", "n", "s"):
        pr.add_argument(f"--{name}", type=_positive, required=True)
    pr.add_argument("--k", type=_nonneg, required=True)
    pr.add_argument("--q", type=_nonneg, required=True)
    for sp in (h, g, gh, pr):
        sp.add_argument("--format", choices=("text", "json"), default="text")

    s = sub.add_parser("scan", help="scan over n")
    scans = s.add_subparsers(dest="scan", required=True, parser_class=_Parser)
    for name in ("perfect", "free-abelian"):
        sp = scans.add_parser(name)
        sp.add_argument("--word", required=True, help=WORD_GRAMMAR)
        sp.add_argument("--max-n", type=_positive, required=True)
    cj = scans.add_parser("conjecture53", help="search H(n,m), m != 2, with free abelianisation")
    cj.add_argument("--max-n", type=_positive, required=True)
    for sp in scans.choices.values():
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
        sp.add_argument("--digit-cap", type=_positive, default=search.DEFAULT_DIGIT_CAP)

    sl = sub.add_parser("sieradski-log", help="LOG for S(2,6l)")
    sl.add_argument("--l", type=_positive, required=True)
    sl.add_argument("--format", choices=("dot", "json"), default="dot")

    m = sub.add_parser("mahler", help="numeric Mahler measure")
    m.add_argument("--poly", required=True, help=POLY_GRAMMAR)
    m.add_argument("--tol", type=float, default=1e-10)
    m.add_argument("--format", choices=("text", "json"), default="text")

    v = sub.add_parser("verify", help="run a verification battery")
    v.add_argument("suite", help="one of: " + ", ".join([*SUITES, "all"]))
    v.add_argument("--quick", action="store_true", help="smaller parameter ranges")
    return p


# -- handlers: each returns (text to print, exit code) --------------------------

def _yes(b: bool) -> str:
    return "yes" if b else "no"


def _text(pairs) -> str:
    width = max(len(k) for k, _ in pairs)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in pairs) + "\n"


def _word(text: str):
    try:
        return parse_word(text)
    except (WordSyntaxError, EmptyWord) as e:
        raise UsageError(f"--word: {e}\ngrammar: {WORD_GRAMMAR}")


def cmd_analyze(args) -> tuple[str, int]:
    w = _word(args.word)
    p = CyclicPresentation(args.n, w)
    rep = report(p, word_text=args.word, with_matrix=args.dump_matrix)
    if args.format == "json":
        return dumps(rep) + "\n", EXIT_OK
    ab = abelian_structure_of(circulant(exponent_sums(w, args.n)))
    pairs = [
        ("group", f"G_{args.n}({w})"),
        ("representer", str(p.representer)),
        ("abelianisation", str(ab)),
        ("betti", ab.betti),
        ("gamma", decimal_str(ab.gamma)),
        ("perfect", _yes(rep["perfect"])),
        ("free abelian", _yes(rep["free_abelian"])),
        ("ab = Z", _yes(rep["infinite_cyclic_ab"]) + (f" (case {rep['case']})" if rep["case"] else "")),
    ]
    out = _text(pairs)
    if args.dump_matrix:
        out += "\n".join(" ".join(f"{x:>3}" for x in row) for row in rep["matrix"]) + "\n"
    return out, EXIT_OK


def cmd_family(args) -> tuple[str, int]:
    if args.family == "hrns":
        p = HrnsParams(args.r, args.n, args.s)
        h = hrns_abelianisation(p)
        c = hrns_log_classification(p)
        data = {"family": "hrns", "params": {"r": p.r, "n": p.n, "s": p.s}, "d": p.d,
                "rho": h.rho, "betti": h.betti, "gamma": decimal_str(h.gamma),
                "free_abelian": h.gamma == 1, "perfect": h.betti == 0 and h.gamma == 1,
                "closed_form_agrees": h.agrees, "log_verdict": c.verdict, "reason": c.reason}
        head = f"H({p.r},{p.n},{p.s})"
    elif args.family == "gnmk":
        p = GnmkParams(args.n, args.m, args.k)
        structure = abelian_structure_of(circulant(exponent_sums(p.presentation().word, p.n)))
        data = {"family": "gnmk", "params": {"n": p.n, "m": p.m, "k": p.k},
                "irreducible": p.irreducible(), "abelianisation": str(structure),
                "betti": structure.betti, "gamma": decimal_str(structure.gamma)}
        if p.irreducible():
            rc = gnmk_resultant_class(p)
            three = gnmk_free_necessary_conditions(p)
            data.update(resultant=decimal_str(rc.value), resultant_class=rc.kind,
                        class_consistent=rc.consistent, ab_is_Z2=gnmk_rank2_check(p).is_Z2)
            if three.applies:
                data["free_case_conditions_hold"] = three.holds
        head = f"G_{p.n}({p.m},{p.k})"
    elif args.family == "gilbert-howie":
        n, m = args.n, args.m
        g = gh_gamma(n, m)
        c = gilbert_howie_classification(n, m)
        data = {"family": "gilbert-howie", "params": {"n": n, "m": m}, "rho": g.rho,
                "betti": g.betti, "gamma": decimal_str(g.gamma), "free_abelian": g.gamma == 1,
                "log_verdict": c.verdict, "reason": c.reason}
        if n % 6 == 0 and m % 6 == 2:
            fr = gilbert_howie_filter(n, m)
            data["filter"] = "passes" if fr.passes else f"rejected by {fr.failed_condition}"
        head = f"H({n},{m})"
    else:
        p = PrishchepovParams(args.r, args.n, args.k, args.s, args.q)
        f = prishchepov_representer(p)
        structure = abelian_structure_of(circulant(exponent_sums(p.word(), p.n)))
        data = {"family": "prishchepov",
                "params": {"r": p.r, "n": p.n, "k": p.k, "s": p.s, "q": p.q},
                "representer": str(f), "abelianisation": str(structure),
                "betti": structure.betti, "gamma": decimal_str(structure.gamma),
                "ab_is_Z": structure.betti == 1 and not structure.torsion}
        if p.r != p.s:
            chk = prishchepov_z_check(p)
            data["necessary_conditions"] = "pass" if chk.passes else "fail: " + ", ".join(chk.failures)
        head = f"P({p.r},{p.n},{p.k},{p.s},{p.q})"
    if args.format == "json":
        return dumps(data) + "\n", EXIT_OK
    pairs = [("group", head)] + [(k.replace("_", " "), _yes(v) if isinstance(v, bool) else v)
                                 for k, v in data.items() if k not in ("family", "params")]
    return _text(pairs), EXIT_OK


def cmd_scan(args) -> tuple[str, int]:
    workers = args.threads
    if args.scan == "conjecture53":
        if args.max_n < 6:
            raise UsageError("--max-n must be at least 6")
        rep = search.scan_gilbert_howie_conjecture(args.max_n, workers=workers, digit_cap=args.digit_cap)
        code = EXIT_FAILURE if rep.hits else EXIT_OK
    else:
        w = _word(args.word)
        fn = search.scan_perfect if args.scan == "perfect" else search.scan_free_abelian
        rep = fn(w, args.max_n, workers=workers, digit_cap=args.digit_cap)
        code = EXIT_OK
    if args.format == "json":
        return dumps(rep.to_json()) + "\n", code
    if args.format == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rep.csv_rows())
        return buf.getvalue(), code
    lo, hi = rep.n_range
    hits = ", ".join(f"({a},{b})" if isinstance(h, tuple) else str(h)
                     for h in rep.hits for a, b in [h if isinstance(h, tuple) else (h, None)])
    lines = [f"scan {rep.kind}: {rep.subject}, n in [{lo}, {hi}] (scanned range only)",
             f"hits: {hits or 'none'}"]
    if args.scan == "free-abelian" and rep.hits:
        lines.append("betti: " + ", ".join(f"{n}:{v['betti']}" for n, v in rep.per_hit.items()))
    for k, v in rep.stats.items():
        lines.append(f"  {k}: {v}")
    return "\n".join(lines) + "\n", code


def cmd_sieradski_log(args) -> tuple[str, int]:
    s = sieradski_log(args.l)
    if args.format == "json":
        return dumps(s.log.to_json()) + "\n", EXIT_OK
    return s.log.to_dot(f"S2_{6 * args.l}"), EXIT_OK


def cmd_mahler(args) -> tuple[str, int]:
    try:
        poly = parse_poly(args.poly)
    except PolySyntaxError as e:
        raise UsageError(f"--poly: {e}\ngrammar: {POLY_GRAMMAR}")
    if args.tol <= 0:
        raise UsageError("--tol must be positive")
    est = mahler_measure(poly, args.tol)
    if args.format == "json":
        return dumps({"polynomial": str(poly), "measure": repr(est.measure),
                      "tolerance": est.tolerance}) + "\n", EXIT_OK
    return f"M({poly}) = {est.measure!r}\n", EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    try:
        results = run_suite(args.suite, quick=args.quick)
    except UnknownSuite as e:
        raise UsageError(str(e))
    code = EXIT_OK if all(r.passed for r in results) else EXIT_FAILURE
    return "\n".join(r.line() for r in results) + "\n", code


HANDLERS = {
    "analyze": cmd_analyze,
    "family": cmd_family,
    "scan": cmd_scan,
    "sieradski-log": cmd_sieradski_log,
    "mahler": cmd_mahler,
    "verify": cmd_verify,
}


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        old_err, sys.stderr = sys.stderr, stderr
        try:
            args = parser.parse_args(argv)
        finally:
            sys.stderr = old_err
    except SystemExit as e:
        return int(e.code or 0)
    try:
        text, code = HANDLERS[args.command](args)
    except UsageError as e:
        stderr.write(f"cpgroups: error: {e}\n")
        return EXIT_USAGE
    except InvariantViolation as e:
        stderr.write(f"cpgroups: invariant violated: {e}\n")
        return EXIT_FAILURE
    except (CPGError, ValueError) as e:
        stderr.write(f"cpgroups: error: {type(e).__name__}: {e}\n")
        return EXIT_USAGE
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
