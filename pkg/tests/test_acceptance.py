"""Acceptance criteria, one test each.

Every test records a single ``PASS``/``FAIL`` line, shown in the pytest
terminal summary.  ``python tests/test_acceptance.py`` runs them without
pytest and prints the same lines.
"""

import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import conftest
from conftest import random_problem
from secureic.bounds import analyze_bounds
from secureic.cli import main as cli_main
from secureic.codes import CodeSpec, linear_code, verify_linear_code
from secureic.fixtures import EXAMPLE1, EXAMPLE2, EXAMPLE2_GSUBSETS, TOY
from secureic.gpartition import g_partition
from secureic.oracle import TruthTableCode, exact_conditional_mi, exact_feasible
from secureic.problem import to_mask
from secureic.rates import flpcc_symmetric, polymatroidal_outer_symmetric, sflpcc_symmetric
from secureic.report import analyze

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def record(k, title, ok, detail, started, limit=None):
    elapsed = time.perf_counter() - started
    in_time = limit is None or elapsed < limit
    verdict = "PASS" if ok and in_time else "FAIL"
    budget = f" (limit {limit:g}s)" if limit else ""
    line = f"criterion {k} {verdict}: {title}; {detail}; {elapsed:.1f}s{budget}"
    conftest.ACCEPTANCE_LINES[k] = line
    print(line)
    assert ok, line
    assert in_time, line


def test_criterion_1_example1():
    t0 = time.perf_counter()
    doc = analyze(EXAMPLE1)
    got = (doc["sflpcc"]["R"], doc["beta_mais"], doc["beta_smais"], (doc["csym"] or {}).get("value"))
    record(1, "example1 rates and bounds", got == ("1/4", 3, 4, "1/4"),
           f"R, beta_MAIS, beta_S-MAIS, C_sym = {got}", t0, 60)


def test_criterion_2_example2_witnesses():
    t0 = time.perf_counter()
    doc = analyze(EXAMPLE2)
    t3 = [(w["S"], w["S_prime"], w["i"]) for w in doc["theorem3"]["witnesses"]]
    has_t3 = ("{1,3,4,5}", "{1,3,5}", 4) in t3
    n5 = {"{" + ",".join(map(str, s)) + "}" for s in EXAMPLE2_GSUBSETS["N5"]}
    k = next(i for i, cls in enumerate(doc["g_partition"]["g_subsets"]) if set(cls) == n5) + 1
    w5 = next((w for w in doc["theorem5"]["witnesses"] if w["class"] == k), None)
    rho = w5["rho"] if w5 else None
    ok = doc["status"] == "infeasible" and has_t3 and w5 is not None and rho == 4 and w5["min_size"] == 2
    record(2, "example2 infeasibility witnesses", ok,
           f"status {doc['status']}, containment witness {'found' if has_t3 else 'missing'}, "
           f"rho on N5 = {rho} (expected 4) vs min size {w5 and w5['min_size']}", t0, 10)


def test_criterion_3_g_partition():
    t0 = time.perf_counter()
    part = g_partition(EXAMPLE2)
    got = {frozenset(cls) for cls in part.classes}
    want = {frozenset(to_mask(s) for s in sets) for sets in EXAMPLE2_GSUBSETS.values()}
    ok = got == want and len(part.remaining) == 12
    record(3, "example2 g-partition", ok,
           f"{len(got & want)}/5 classes match, remaining class size {len(part.remaining)}", t0)


def test_criterion_4_toy():
    t0 = time.perf_counter()
    b = analyze_bounds(TOY)
    none_at_1 = not exact_feasible(TOY, 1).feasible
    at_2 = exact_feasible(TOY, 2)
    code = CodeSpec.loads((PROBLEMS / "toy_xor_code.json").read_text())
    passes = verify_linear_code(TOY, code).passed
    ok = b.beta_smais == 2 and none_at_1 and at_2.feasible and at_2.r == 2 and passes
    record(4, "toy instance", ok,
           f"beta_S-MAIS {b.beta_smais}, oracle r=1 {'none' if none_at_1 else 'found'}, "
           f"r=2 {at_2.verdict}, (x1, x2+x3) {'passes' if passes else 'fails'}", t0, 5)


def test_criterion_5_sandwich():
    t0 = time.perf_counter()
    rng = random.Random(5)
    bad = []
    for trial in range(200):
        p = random_problem(rng, rng.randint(1, 6))
        inner = sflpcc_symmetric(p).R
        outer = polymatroidal_outer_symmetric(p).R
        b = analyze_bounds(p)
        dominance = outer == 0 or 1 / outer >= b.beta_smais
        if not (inner <= outer and dominance and b.beta_smais >= b.beta_mais):
            bad.append(trial)
    record(5, "sandwich and dominance on 200 instances", not bad, f"violations {bad[:5] or 0}", t0, 600)


def test_criterion_6_oracle_consistency():
    t0 = time.perf_counter()
    rng = random.Random(6)
    bad, fired = [], 0
    for trial in range(100):
        p = random_problem(rng, rng.randint(1, 4), p_prohibit=0.5)
        b = analyze_bounds(p)
        if b.theorem3.infeasible or b.theorem5.infeasible:
            fired += 1
            if exact_feasible(p, p.n).feasible:
                bad.append(trial)
    record(6, "oracle agrees with infeasibility tests", not bad,
           f"{fired} instances flagged, violations {bad[:5] or 0}", t0)


def test_criterion_7_rank_equals_mi():
    t0 = time.perf_counter()
    rng = random.Random(7)
    pairs, bad = 0, 0
    for _ in range(50):
        p = random_problem(rng, rng.randint(1, 4), p_prohibit=0.6)
        rows = [[rng.randint(0, 1) for _ in range(p.n)] for _ in range(rng.randint(1, p.n))]
        rep = verify_linear_code(p, linear_code(rows))
        code = TruthTableCode.from_gf2_matrix(rows, p.n)
        for c in rep.security:
            pairs += 1
            bad += exact_conditional_mi(code, c.message, p.side[c.receiver]) != c.leakage
    record(7, "rank leakage equals exact MI", not bad, f"{pairs} pairs, violations {bad}", t0)


def test_criterion_8_construct(tmp_path=None, capsys=None):
    t0 = time.perf_counter()
    out = Path(tmp_path or "/tmp") / "example1_code.json"
    code = cli_main(["construct", str(PROBLEMS / "example1.json"), "--budget", "64", "--no-escalate",
                     "--out", str(out)])
    if capsys:
        capsys.readouterr()
    spec = CodeSpec.loads(out.read_text())
    rep = verify_linear_code(EXAMPLE1, spec)
    n_dec = sum(c.passed for c in rep.decoding)
    n_sec = sum(c.passed for c in rep.security)
    n_prohibited = sum(len(P) for P in EXAMPLE1.as_lists()[1])
    rates = {Fraction(t, spec.r) for t in spec.t}
    ok = (code == 0 and spec.field.m == 8 and n_dec == 9 and n_sec == n_prohibited == 12
          and rates == {Fraction(1, 4)})
    record(8, "secure code for example1 over GF(2^8)", ok,
           f"decoding {n_dec}/9, security {n_sec}/{n_prohibited} (3+4+3+2 from the fixture), rates {sorted(map(str, rates))}",
           t0)


def test_criterion_9_degeneracy():
    t0 = time.perf_counter()
    rng = random.Random(9)
    bad = []
    for trial in range(50):
        p = random_problem(rng, rng.randint(1, 6), secure=False)
        b = analyze_bounds(p)
        if b.beta_smais != b.beta_mais or sflpcc_symmetric(p).R != flpcc_symmetric(p).R:
            bad.append(trial)
    record(9, "no-security degeneracy", not bad, f"violations {bad[:5] or 0}", t0)


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
