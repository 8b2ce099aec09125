"""Partition of the power set into classes on which g is forced constant.

Each receiver ``i`` with ``P_i`` nonempty and each ``T`` disjoint from ``B_i``
contributes a seed family ``{T | B_i} | {T | B_i - j : j in P_i}``; seed
families sharing a member are merged.  Everything never touched by a seed
forms the remaining class, which is always last.

Seed enumeration visits ``sum_i 2^(n - |B_i|)`` families, at most ``n * 2^n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .problem import Problem, ProblemError, bits


class DisjointSet:
    """Union-find over ``0..size-1`` with path halving and union by size."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.weight = [1] * size

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> int:
        x, y = self.find(x), self.find(y)
        if x == y:
            return x
        if self.weight[x] < self.weight[y]:
            x, y = y, x
        self.parent[y] = x
        self.weight[x] += self.weight[y]
        return x


@dataclass(frozen=True)
class SeedFamily:
    receiver: int
    T: int
    members: tuple[int, ...]


def submasks(mask: int):
    """All submasks of ``mask`` in ascending order."""
    subs = []
    s = mask
    while True:
        subs.append(s)
        if s == 0:
            break
        s = (s - 1) & mask
    return subs[::-1]


def seed_family(p: Problem, i: int, T: int) -> SeedFamily:
    B = p.interfering(i)
    if not p.prohibited[i]:
        raise ProblemError("seed family needs a nonempty prohibited set", receiver=i + 1)
    if T & B or T & ~p.full:
        raise ProblemError("T must be contained in the complement of B_i", receiver=i + 1)
    base = T | B
    members = [base] + [base & ~(1 << j) for j in bits(p.prohibited[i])]
    return SeedFamily(i, T, tuple(members))


def iter_seed_families(p: Problem):
    for i in range(p.n):
        if p.prohibited[i]:
            for T in submasks(p.full & ~p.interfering(i)):
                yield seed_family(p, i, T)


@dataclass(frozen=True)
class GPartition:
    """g-subsets ``classes[0..gamma-2]`` plus the remaining class ``remaining``.

    g-subsets are ordered by their smallest member (as a bitmask); members of
    each class are ascending.
    """

    n: int
    classes: tuple[tuple[int, ...], ...]
    remaining: tuple[int, ...]
    _index: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    @property
    def gamma(self) -> int:
        return len(self.classes) + 1

    def members(self, k: int) -> tuple[int, ...]:
        """Members of class ``k`` (0-based; ``k == gamma - 1`` is the remaining class)."""
        if k == len(self.classes):
            return self.remaining
        return self.classes[k]

    def class_of(self, S: int) -> int:
        if not self._index:
            for k, cls in enumerate(self.classes):
                for s in cls:
                    self._index[s] = k
        return self._index.get(S, len(self.classes))

    def all_classes(self) -> list[tuple[int, ...]]:
        return list(self.classes) + [self.remaining]


def build_g_partition(p: Problem) -> GPartition:
    size = 1 << p.n
    dsu = DisjointSet(size)
    touched = bytearray(size)
    for fam in iter_seed_families(p):
        head = fam.members[0]
        touched[head] = 1
        for m in fam.members[1:]:
            touched[m] = 1
            dsu.union(head, m)
    groups: dict[int, list[int]] = {}
    remaining = []
    for S in range(size):
        if touched[S]:
            groups.setdefault(dsu.find(S), []).append(S)
        else:
            remaining.append(S)
    # members are appended in ascending order, so cls[0] is the smallest
    classes = sorted((tuple(g) for g in groups.values()), key=lambda cls: cls[0])
    return GPartition(p.n, tuple(classes), tuple(remaining))


@lru_cache(maxsize=64)
def g_partition(p: Problem) -> GPartition:
    """Cached :func:`build_g_partition`."""
    return build_g_partition(p)
