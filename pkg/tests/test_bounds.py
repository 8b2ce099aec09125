import random

from hypothesis import given, settings

from conftest import problems
from secureic.bounds import (
    Theorem3Witness, analyze_bounds, chain_weight, check_theorem3, check_theorem5, mais_bound, smais,
)
from secureic.fixtures import EXAMPLE1, EXAMPLE2, EXAMPLE2_GSUBSETS, SINGLE, TOY
from secureic.gpartition import g_partition
from secureic.oracle import exact_feasible
from secureic.problem import Problem, popcount, to_mask


def class_index(part, sets):
    want = frozenset(to_mask(s) for s in sets)
    return next(k for k, cls in enumerate(part.classes) if frozenset(cls) == want)


def test_example1_bounds():
    b = analyze_bounds(EXAMPLE1)
    assert (b.beta_mais, b.beta_smais) == (3, 4)
    assert not b.infeasible
    assert not b.smais.hit_cap


def test_toy_bounds():
    b = analyze_bounds(TOY)
    assert (b.beta_mais, b.beta_smais) == (2, 2)
    assert b.theorem3.status == b.theorem5.status == "not-disproved"


def test_single_message():
    b = analyze_bounds(SINGLE)
    assert (b.beta_mais, b.beta_smais) == (1, 1)


def test_example2_containment_witness():
    part = g_partition(EXAMPLE2)
    v = check_theorem3(EXAMPLE2, part, limit=None)
    assert v.infeasible and len(v.witnesses) == 8
    k = class_index(part, EXAMPLE2_GSUBSETS["N5"])
    target = Theorem3Witness(k, to_mask([1, 3, 4, 5]), to_mask([1, 3, 5]), 3)
    assert target in v.witnesses
    assert all(w.recheck(EXAMPLE2, part) for w in v.witnesses)
    # a tampered witness fails the recheck
    assert not Theorem3Witness(k, to_mask([1, 3, 4, 5]), to_mask([1, 3, 5]), 1).recheck(EXAMPLE2, part)


def test_example2_fixpoint_values():
    part = g_partition(EXAMPLE2)
    res = smais(EXAMPLE2, part)
    rho = {name: res.state.rho[class_index(part, sets)] for name, sets in EXAMPLE2_GSUBSETS.items()}
    # N1 -> N3 adds MAIS({1,4}) = 2, then N3 -> N5 adds MAIS({4}) = 1
    assert rho == {"N1": 2, "N2": 2, "N3": 4, "N4": 4, "N5": 5}
    assert chain_weight(EXAMPLE2, to_mask([1, 3, 4]), to_mask([3])) == 2
    assert chain_weight(EXAMPLE2, to_mask([1, 2, 3, 4]), to_mask([1, 3])) == 1
    v = check_theorem5(EXAMPLE2, res.state, part)
    assert v.infeasible
    n5 = class_index(part, EXAMPLE2_GSUBSETS["N5"])
    w = next(w for w in v.witnesses if w.k == n5)
    assert (w.rho, popcount(w.S)) == (5, 2)
    assert all(x.recheck(part, res.state) for x in v.witnesses)


def test_trace_replays_to_final_rho():
    part = g_partition(EXAMPLE1)
    res = smais(EXAMPLE1, part)
    for u in res.trace:
        assert u.old < u.new <= res.state.cap
        assert chain_weight(EXAMPLE1, u.S, u.S_prime) == u.weight
        assert part.class_of(u.S) == u.k and part.class_of(u.S_prime) == u.l
        assert u.S_prime & ~u.S == 0
    last = {u.k: u.new for u in res.trace}
    for k, v in last.items():
        assert res.state.rho[k] == v


@settings(max_examples=60, deadline=None)
@given(problems(max_n=6))
def test_smais_dominates_mais(p):
    res = smais(p)
    assert res.beta_smais >= mais_bound(p)
    assert res.beta_smais <= p.n + 1


@settings(max_examples=40, deadline=None)
@given(problems(max_n=6))
def test_sweep_order_does_not_matter(p):
    base = smais(p).state.rho
    rng = random.Random(7)
    for _ in range(3):
        shuffled = smais(p, order=lambda pairs: rng.sample(pairs, len(pairs))).state.rho
        assert shuffled == base


@settings(max_examples=60, deadline=None)
@given(problems(max_n=6, secure=False))
def test_no_security_collapses(p):
    b = analyze_bounds(p)
    assert b.beta_smais == b.beta_mais
    assert not b.infeasible


@settings(max_examples=60, deadline=None)
@given(problems(max_n=5))
def test_witnesses_recheck(p):
    part = g_partition(p)
    b = analyze_bounds(p, witness_limit=None)
    assert all(w.recheck(p, part) for w in b.theorem3.witnesses)
    assert all(w.recheck(part, b.smais.state) for w in b.theorem5.witnesses)


def test_fixpoint_test_fires_alone():
    # no containment witness exists, yet rho outgrows the singleton class
    p = Problem.from_lists([[2], [3], []], [[], [], [1]])
    b = analyze_bounds(p)
    assert b.theorem5.infeasible and not b.theorem3.infeasible
    assert not exact_feasible(p, 3).feasible
