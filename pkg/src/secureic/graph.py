"""Exact combinatorics on the side-information digraph.

Edge ``(i, j)`` exists iff ``i`` is in ``A_j``, so the in-neighbourhood of
vertex ``j`` is exactly the bitmask ``A_j``.
"""

from __future__ import annotations

from functools import lru_cache

from .problem import Problem, bits, popcount


class SideInfoGraph:
    def __init__(self, p: Problem):
        self.n = p.n
        self.in_mask = p.side
        out = [0] * p.n
        for j, a in enumerate(p.side):
            for i in bits(a):
                out[i] |= 1 << j
        self.out_mask = tuple(out)

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.in_mask[j] >> i & 1)


def _peel(g: SideInfoGraph, U: int) -> tuple[int, list[int], list[int]]:
    """Strip sources and sinks of G|_U until none remain.

    Returns the remaining core, the sources in removal order and the sinks in
    removal order.  U is acyclic iff the core is empty.
    """
    sources, sinks = [], []
    changed = True
    while changed and U:
        changed = False
        for v in bits(U):
            if not g.in_mask[v] & U:
                sources.append(v)
                U &= ~(1 << v)
                changed = True
            elif not g.out_mask[v] & U:
                sinks.append(v)
                U &= ~(1 << v)
                changed = True
    return U, sources, sinks


def is_acyclic(g: SideInfoGraph, U: int) -> bool:
    return _peel(g, U)[0] == 0


def acyclic_order(g: SideInfoGraph, U: int) -> list[int] | None:
    """Order ``i_1..i_u`` of U with no edge from an earlier to a later vertex.

    Equivalently ``{i_1..i_{p-1}}`` is contained in ``B_{i_p}`` for every p.
    Returns None when G|_U has a cycle.
    """
    core, sources, sinks = _peel(g, U)
    if core:
        return None
    # sinks first (nothing after them points back), sources last
    return sinks + sources[::-1]


class MaisTable:
    """Memoised maximum acyclic induced subgraph sizes, shared per problem."""

    def __init__(self, graph: SideInfoGraph):
        self.graph = graph
        self._size: dict[int, int] = {0: 0}
        self._witness: dict[int, int] = {0: 0}

    def __call__(self, S: int) -> int:
        return self.size(S)

    def size(self, S: int) -> int:
        if S not in self._size:
            self._solve(S)
        return self._size[S]

    def witness(self, S: int) -> int:
        """A largest acyclic subset of S (as a bitmask)."""
        if S not in self._witness:
            self._solve(S)
        return self._witness[S]

    def _solve(self, S: int) -> None:
        # explicit stack; recursion depth would reach n on dense graphs
        stack = [S]
        while stack:
            T = stack[-1]
            if T in self._size:
                stack.pop()
                continue
            core, sources, sinks = _peel(self.graph, T)
            free = T & ~core
            if core == 0:
                self._size[T] = popcount(T)
                self._witness[T] = T
                stack.pop()
                continue
            if free:
                # sources and sinks never lie on a cycle, keep them all
                if core not in self._size:
                    stack.append(core)
                    continue
                self._size[T] = popcount(free) + self._size[core]
                self._witness[T] = free | self._witness[core]
                stack.pop()
                continue
            children = [T & ~(1 << v) for v in bits(T)]
            pending = [c for c in children if c not in self._size]
            if pending:
                stack.extend(pending)
                continue
            best = max(children, key=lambda c: (self._size[c], -c))
            self._size[T] = self._size[best]
            self._witness[T] = self._witness[best]
            stack.pop()

    def __len__(self):
        return len(self._size)


@lru_cache(maxsize=64)
def mais_table(p: Problem) -> MaisTable:
    return MaisTable(SideInfoGraph(p))


def mais(g: SideInfoGraph | Problem, S: int) -> int:
    """Size of the largest U within S such that G|_U is acyclic."""
    if isinstance(g, Problem):
        return mais_table(g).size(S)
    return MaisTable(g).size(S)


def kappa(p: Problem, J: int) -> int:
    """Number of MDS parity symbols serving every receiver of G|_J."""
    if J == 0:
        raise ValueError("kappa is undefined for the empty set")
    return popcount(J) - min(popcount(p.side[i] & J) for i in bits(J))
