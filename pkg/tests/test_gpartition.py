import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import problems
from secureic.fixtures import EXAMPLE1, EXAMPLE2, EXAMPLE2_GSUBSETS, TOY
from secureic.gpartition import DisjointSet, build_g_partition, seed_family, submasks
from secureic.problem import ProblemError, bits, to_mask


def components_oracle(p):
    """Seed families from frozensets, merged with networkx."""
    n = p.n
    full = frozenset(range(1, n + 1))
    g = nx.Graph()
    for i in range(1, n + 1):
        A = {k + 1 for k in bits(p.side[i - 1])}
        P = {k + 1 for k in bits(p.prohibited[i - 1])}
        if not P:
            continue
        B = full - A - {i}
        rest = sorted(full - B)
        for mask in range(1 << len(rest)):
            T = {rest[k] for k in range(len(rest)) if mask >> k & 1}
            fam = [frozenset(T | B)] + [frozenset((T | B) - {j}) for j in P]
            g.add_nodes_from(fam)
            g.add_edges_from(zip(fam, fam[1:]))
    classes = {frozenset(c) for c in nx.connected_components(g)}
    touched = set(g.nodes)
    remaining = 2 ** n - len(touched)
    return classes, remaining


def as_frozensets(part):
    return {frozenset(frozenset(k + 1 for k in bits(S)) for S in cls) for cls in part.classes}


def test_example2_classes():
    part = build_g_partition(EXAMPLE2)
    want = {frozenset(frozenset(s) for s in cls) for cls in EXAMPLE2_GSUBSETS.values()}
    assert as_frozensets(part) == want
    assert part.gamma == 6
    assert len(part.remaining) == 12


def test_example1_and_toy_sizes():
    part = build_g_partition(EXAMPLE1)
    assert (part.gamma, len(part.remaining)) == (21, 76)
    toy = build_g_partition(TOY)
    assert toy.gamma == 3
    assert toy.members(0) == (to_mask([2]), to_mask([3]), to_mask([2, 3]))


def test_no_security_leaves_one_class():
    part = build_g_partition(EXAMPLE1.without_security())
    assert part.gamma == 1 and len(part.remaining) == 512


def test_seed_family_contents():
    fam = seed_family(TOY, 0, to_mask([1]))
    assert fam.members == (to_mask([1, 2, 3]), to_mask([1, 3]), to_mask([1, 2]))
    with pytest.raises(ProblemError):
        seed_family(TOY, 0, to_mask([2]))
    with pytest.raises(ProblemError):
        seed_family(TOY, 1, 0)


def test_submasks_ascending():
    assert submasks(0b101) == [0, 1, 4, 5]


def test_disjoint_set():
    d = DisjointSet(5)
    d.union(0, 3)
    d.union(3, 4)
    assert d.find(0) == d.find(4) != d.find(1)


@settings(max_examples=80, deadline=None)
@given(problems(max_n=6))
def test_matches_component_oracle(p):
    part = build_g_partition(p)
    classes, remaining = components_oracle(p)
    assert as_frozensets(part) == classes
    assert len(part.remaining) == remaining


@settings(max_examples=80, deadline=None)
@given(problems(max_n=6))
def test_partition_covers_power_set_once(p):
    part = build_g_partition(p)
    seen = [S for cls in part.all_classes() for S in cls]
    assert sorted(seen) == list(range(1 << p.n))
    firsts = [cls[0] for cls in part.classes]
    assert firsts == sorted(firsts)
    for k, cls in enumerate(part.classes):
        assert list(cls) == sorted(cls)
        assert all(part.class_of(S) == k for S in cls)
