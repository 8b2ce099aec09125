"""``secureic`` command line.

Exit codes: 0 success, 1 unreadable or inconsistent input, 2 negative
verdict (infeasible, failed verification, no code), 3 reproduction mismatch,
4 code search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import report
from .codes import CodeFormatError, CodeSpec, SearchExhausted, search_secure_assembly, verify_linear_code
from .gf import gf
from .oracle import MAX_ORACLE_N, exact_feasible
from .problem import Problem, ProblemError, parse_problem
from .rates import sflpcc_symmetric
from .reproduce import reproduce

OK, BAD_INPUT, NEGATIVE, MISMATCH, EXHAUSTED = 0, 1, 2, 3, 4


def _load_problem(path: str) -> Problem:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ProblemError(f"cannot read {path}: {exc.strerror}") from None
    return parse_problem(text)


def cmd_analyze(args) -> int:
    p = _load_problem(args.file)
    doc = report.analyze(p, outer=not args.no_outer)
    sys.stdout.write(report.dumps(doc) if args.json else report.render_text(doc))
    return NEGATIVE if doc["status"] == "infeasible" else OK


def cmd_construct(args) -> int:
    p = _load_problem(args.file)
    sol = sflpcc_symmetric(p)
    if sol.R == 0:
        print("refusing: S-FLPCC symmetric rate is 0, nothing to construct", file=sys.stderr)
        return NEGATIVE
    try:
        spec, rep = search_secure_assembly(p, sol, gf(args.field), args.budget, args.seed,
                                           escalate=not args.no_escalate)
    except SearchExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.best is not None:
            for line in exc.best.lines():
                print(f"  {line}", file=sys.stderr)
        return EXHAUSTED
    text = spec.dumps()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    info = sys.stdout if args.out else sys.stderr
    print(f"code over {spec.field}: t={list(spec.t)}, r={spec.r}, seed={spec.seed}, "
          f"rate={report.q(spec.rate(0)) if len(set(spec.t)) == 1 else 'unequal'}", file=info)
    for line in rep.lines():
        print(f"  {line}", file=info)
    return OK


def cmd_verify(args) -> int:
    p = _load_problem(args.problem)
    try:
        spec = CodeSpec.loads(Path(args.code).read_text())
    except OSError as exc:
        raise CodeFormatError(f"cannot read {args.code}: {exc.strerror}") from None
    if spec.n != p.n:
        raise CodeFormatError(f"code covers {spec.n} messages, problem has {p.n}")
    rep = verify_linear_code(p, spec)
    if args.json:
        sys.stdout.write(json.dumps(rep.to_dict(), indent=2) + "\n")
    else:
        for line in rep.lines():
            print(line)
        print("all checks pass" if rep.passed else f"{rep.failures} check(s) failed")
    return OK if rep.passed else NEGATIVE


def cmd_oracle(args) -> int:
    p = _load_problem(args.file)
    if p.n > MAX_ORACLE_N:
        raise ProblemError(f"oracle limited to n <= {MAX_ORACLE_N}")
    rmax = args.rmax if args.rmax is not None else p.n
    res = exact_feasible(p, rmax)
    print(f"verdict: {res.verdict} (r <= {rmax}, t = 1)")
    if res.min_fibres is None:
        print("no partition of the message tuples into valid codeword fibres exists")
    else:
        print(f"fewest codewords needed: {res.min_fibres}")
    if res.code:
        print(f"r = {res.code.r}; table (x as bits x1 x2 ... -> y):")
        for x, y in enumerate(res.code.table):
            xs = "".join(str(x >> k & 1) for k in range(p.n))
            print(f"  {xs} -> {y:0{res.code.r}b}")
    return OK if res.feasible else NEGATIVE


def cmd_reproduce(args) -> int:
    rows = reproduce(args.id)
    bad = 0
    for name, got, want, ok in rows:
        bad += not ok
        print(f"{name}: computed {got}, expected {want}, {'match' if ok else 'MISMATCH'}")
    print(f"{args.id}: {'all values match' if not bad else f'{bad} mismatch(es)'}")
    return OK if not bad else MISMATCH


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="secureic", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="bounds, feasibility tests and rate LPs for a problem file")
    a.add_argument("file")
    a.add_argument("--json", action="store_true", help="emit the structured report")
    a.add_argument("--no-outer", action="store_true", help="skip the polymatroidal LP")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("construct", help="build and verify a secure linear code")
    c.add_argument("file")
    c.add_argument("--field", type=int, default=8, metavar="M", help="field GF(2^M), default 8")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--budget", type=int, default=64, help="attempts per field")
    c.add_argument("--no-escalate", action="store_true", help="do not retry in GF(2^16)")
    c.add_argument("--out", help="write the code here instead of stdout")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check a linear code against a problem")
    v.add_argument("problem")
    v.add_argument("code")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exhaustive search for one-bit codes (n <= 4)")
    o.add_argument("file")
    o.add_argument("--rmax", type=int)
    o.set_defaults(func=cmd_oracle)

    r = sub.add_parser("reproduce", help="recompute a named example and compare")
    r.add_argument("id", choices=["example1", "example2", "example3", "example4", "toy"])
    r.set_defaults(func=cmd_reproduce)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ProblemError, CodeFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
