import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import problems
from secureic.fixtures import EXAMPLE1, EXAMPLE2, TOY
from secureic.graph import SideInfoGraph, acyclic_order, is_acyclic, kappa, mais, mais_table
from secureic.problem import bits, popcount, to_mask


def nx_graph(p, U):
    g = nx.DiGraph()
    g.add_nodes_from(bits(U))
    for j in bits(U):
        for i in bits(p.side[j] & U):
            g.add_edge(i, j)
    return g


def brute_mais(p, S):
    best = 0
    for U in range(1 << p.n):
        if U & ~S or popcount(U) <= best:
            continue
        if nx.is_directed_acyclic_graph(nx_graph(p, U)):
            best = popcount(U)
    return best


def brute_kappa(p, J):
    return popcount(J) - min(popcount(p.side[i] & J) for i in bits(J))


def test_example1_mais():
    assert mais(EXAMPLE1, EXAMPLE1.full) == 3


def test_toy_and_example2_mais():
    assert mais(TOY, TOY.full) == 2
    assert mais(EXAMPLE2, EXAMPLE2.full) == 3


def test_clique_has_mais_one():
    assert mais(EXAMPLE1, to_mask([1, 2, 8])) == 1
    assert kappa(EXAMPLE1, to_mask([1, 2, 8])) == 1


def test_kappa_examples():
    assert kappa(EXAMPLE1, to_mask([4, 5])) == 1
    assert kappa(TOY, TOY.full) == 3  # receiver 1 knows nothing
    with pytest.raises(ValueError):
        kappa(TOY, 0)


def test_witness_is_acyclic_and_maximal():
    t = mais_table(EXAMPLE1)
    W = t.witness(EXAMPLE1.full)
    g = SideInfoGraph(EXAMPLE1)
    assert popcount(W) == 3 and is_acyclic(g, W)
    order = acyclic_order(g, W)
    assert sorted(order) == bits(W)


@settings(max_examples=60, deadline=None)
@given(problems(max_n=6))
def test_mais_matches_networkx(p):
    for S in (p.full, p.full & 0b110101, p.full & 0b011011):
        assert mais(p, S) == brute_mais(p, S)


@settings(max_examples=60, deadline=None)
@given(problems(max_n=6))
def test_acyclic_order_is_topological(p):
    g = SideInfoGraph(p)
    for U in range(1 << p.n):
        order = acyclic_order(g, U)
        assert (order is not None) == nx.is_directed_acyclic_graph(nx_graph(p, U))
        if order is not None:
            pos = {v: k for k, v in enumerate(order)}
            # earlier vertices lie in B of later ones
            for j in order:
                assert all(pos[i] > pos[j] for i in bits(p.side[j] & U))


@given(problems(max_n=6))
def test_kappa_bounds(p):
    for J in range(1, 1 << p.n):
        k = kappa(p, J)
        assert k == brute_kappa(p, J)
        assert 1 <= k <= popcount(J)
