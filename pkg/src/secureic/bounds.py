"""MAIS and secure-MAIS lower bounds on the broadcast rate, and the two
g-partition infeasibility tests.

Both tests are necessary conditions only: a problem that passes them is
reported as "not disproved", never as feasible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .gpartition import GPartition, g_partition
from .graph import mais_table
from .problem import Problem, bits, fmt_set, popcount


@dataclass(frozen=True)
class Theorem3Witness:
    """S and S' share g-subset ``k``, S' + {i} lies in S and S' lies in B_i."""

    k: int
    S: int
    S_prime: int
    i: int

    def recheck(self, p: Problem, part: GPartition) -> bool:
        return (
            0 <= self.k < len(part.classes)
            and part.class_of(self.S) == self.k
            and part.class_of(self.S_prime) == self.k
            and (self.S_prime | 1 << self.i) & ~self.S == 0
            and self.S_prime & ~p.interfering(self.i) == 0
        )

    def to_dict(self) -> dict:
        return {"theorem": 3, "class": self.k + 1, "S": fmt_set(self.S),
                "S_prime": fmt_set(self.S_prime), "i": self.i + 1}


@dataclass(frozen=True)
class Theorem5Witness:
    """rho of g-subset ``k`` exceeds the size of its smallest member ``S``."""

    k: int
    rho: int
    S: int

    def recheck(self, part: GPartition, state: "RhoState") -> bool:
        if not 0 <= self.k < len(part.classes):
            return False
        smallest = min(popcount(s) for s in part.classes[self.k])
        return (state.rho[self.k] == self.rho and self.S in part.classes[self.k]
                and popcount(self.S) == smallest and self.rho > smallest)

    def to_dict(self) -> dict:
        return {"theorem": 5, "class": self.k + 1, "rho": self.rho, "S": fmt_set(self.S),
                "min_size": popcount(self.S)}


@dataclass
class Verdict:
    """Outcome of a necessary-condition test.

    ``witnesses`` holds every witness found (up to the scan limit) in
    canonical order; ``witness`` is the first of them.
    """

    theorem: int
    infeasible: bool
    witnesses: list = field(default_factory=list)
    truncated: bool = False

    @property
    def witness(self):
        return self.witnesses[0] if self.witnesses else None

    @property
    def status(self) -> str:
        return "infeasible" if self.infeasible else "not-disproved"

    def to_dict(self) -> dict:
        return {"theorem": self.theorem, "status": self.status,
                "witness": self.witness.to_dict() if self.witness else None,
                "witnesses": [w.to_dict() for w in self.witnesses],
                "truncated": self.truncated}


def mais_bound(p: Problem) -> int:
    return mais_table(p).size(p.full)


def iter_theorem3_witnesses(p: Problem, part: GPartition):
    """Scan classes in order, S ascending, S' ascending, i ascending."""
    B = [p.interfering(i) for i in range(p.n)]
    for k, cls in enumerate(part.classes):
        for S in cls:
            for Sp in cls:
                if Sp == S or Sp & ~S:
                    continue
                for i in bits(S & ~Sp):
                    if Sp & ~B[i] == 0:
                        yield Theorem3Witness(k, S, Sp, i)


def check_theorem3(p: Problem, part: GPartition | None = None, limit: int | None = 1) -> Verdict:
    """First-infeasibility test on the g-partition.

    ``limit`` bounds how many witnesses are collected (None for all).
    """
    part = part or g_partition(p)
    found = []
    truncated = False
    for w in iter_theorem3_witnesses(p, part):
        if limit is not None and len(found) >= limit:
            truncated = True
            break
        found.append(w)
    return Verdict(3, bool(found), found, truncated)


@dataclass
class RhoState:
    rho: list[int]
    capped: list[bool]
    cap: int


@dataclass(frozen=True)
class Update:
    k: int
    l: int
    S: int
    S_prime: int
    weight: int
    old: int
    new: int
    capped: bool

    def to_dict(self) -> dict:
        return {"k": self.k + 1, "l": self.l + 1, "S": fmt_set(self.S),
                "S_prime": fmt_set(self.S_prime), "weight": self.weight,
                "old": self.old, "new": self.new, "capped": self.capped}


@dataclass
class SmaisResult:
    beta_smais: int
    state: RhoState
    trace: list[Update]
    edges: dict  # (k, l) -> (weight, S, S')

    @property
    def hit_cap(self) -> bool:
        return any(self.state.capped)


def _max_mais(members, table, ceiling: int) -> int:
    best = 0
    for S in sorted(members, key=popcount, reverse=True):
        if popcount(S) <= best:
            break
        best = max(best, table.size(S))
        if best >= ceiling:
            break
    return best


def chain_weight(p: Problem, S: int, S_prime: int) -> int:
    """MAIS of ``{j in S - S' : S' within B_j}``."""
    table = mais_table(p)
    return table.size(_chain_set(p, S, S_prime))


def _chain_set(p: Problem, S: int, S_prime: int) -> int:
    U = 0
    for j in bits(S & ~S_prime):
        if S_prime & ~p.interfering(j) == 0:
            U |= 1 << j
    return U


def class_edges(p: Problem, part: GPartition) -> dict:
    """Heaviest admissible (S, S') pair for every ordered pair of g-subsets.

    Ties keep the first pair in ascending (S, S') order.
    """
    table = mais_table(p)
    edges: dict = {}
    gsets = [(k, S) for k, cls in enumerate(part.classes) for S in cls]
    for k, S in gsets:
        for l, Sp in gsets:
            if l == k or Sp & ~S:
                continue
            w = table.size(_chain_set(p, S, Sp))
            cur = edges.get((k, l))
            if cur is None or w > cur[0]:
                edges[(k, l)] = (w, S, Sp)
    return edges


def smais(p: Problem, part: GPartition | None = None, order=None) -> SmaisResult:
    """Secure MAIS fixpoint.

    ``order`` optionally permutes the sweep over g-subset pairs; the final
    rho vector does not depend on it.
    """
    part = part or g_partition(p)
    table = mais_table(p)
    cap = p.n + 1
    ceiling = table.size(p.full)
    rho = [_max_mais(cls, table, ceiling) for cls in part.all_classes()]
    capped = [False] * len(rho)
    edges = class_edges(p, part)
    pairs = sorted(edges) if order is None else list(order(sorted(edges)))
    trace = []
    changed = True
    while changed:
        changed = False
        for k, l in pairs:
            w, S, Sp = edges[(k, l)]
            cand = w + rho[l]
            if cand > rho[k]:
                if rho[k] >= cap:
                    continue
                new = min(cand, cap)
                hit = cand > cap
                trace.append(Update(k, l, S, Sp, w, rho[k], new, hit))
                rho[k] = new
                capped[k] = capped[k] or hit
                changed = True
    state = RhoState(rho, capped, cap)
    return SmaisResult(max(rho), state, trace, edges)


def check_theorem5(p: Problem, state: RhoState, part: GPartition | None = None) -> Verdict:
    part = part or g_partition(p)
    found = []
    for k, cls in enumerate(part.classes):
        smallest = min(cls, key=lambda s: (popcount(s), s))
        if state.rho[k] > popcount(smallest):
            found.append(Theorem5Witness(k, state.rho[k], smallest))
    return Verdict(5, bool(found), found)


@dataclass
class BoundsReport:
    beta_mais: int
    beta_smais: int
    smais: SmaisResult
    theorem3: Verdict
    theorem5: Verdict

    @property
    def infeasible(self) -> bool:
        return self.theorem3.infeasible or self.theorem5.infeasible


def analyze_bounds(p: Problem, witness_limit: int | None = 64) -> BoundsReport:
    part = g_partition(p)
    res = smais(p, part)
    return BoundsReport(
        beta_mais=mais_bound(p),
        beta_smais=res.beta_smais,
        smais=res,
        theorem3=check_theorem3(p, part, limit=witness_limit),
        theorem5=check_theorem5(p, res.state, part),
    )
