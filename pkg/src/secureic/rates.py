"""Symmetric-rate linear programs.

* FLPCC inner bound: time sharing over subproblems ``J`` with weight
  ``lambda_J``, each served by an MDS code with ``kappa(J)`` parity symbols.
* S-FLPCC inner bound: the same LP restricted to security-admissible ``J``.
* Polymatroidal outer bound: a set function ``g`` on ``2^[n]`` subject to
  Shannon-type and security equalities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .gpartition import submasks
from .graph import kappa
from .problem import Problem, bits, fmt_set, popcount
from .certify import certified_solve
from .simplex import EQ, GE, LE, OPTIMAL, LPError, LPSizeError, LPSolution, RationalLP, lp_solve

MAX_N_OUTER = 10
MAX_N_FLPCC = 16

SOLVERS = {"certified": certified_solve, "simplex": lp_solve}


@dataclass
class FlpccSolution:
    """Symmetric rate ``R`` with the time-sharing weights achieving it.

    ``rates[i]`` is the per-receiver rate ``sum_{J containing i} lambda_J / kappa(J)``,
    which is at least ``R``.
    """

    R: Fraction
    lam: dict[int, Fraction]
    rates: list[Fraction]
    family: tuple[int, ...] | None = None
    secure: bool = False
    lp_shape: tuple[int, int] = (0, 0)

    def support(self) -> list[int]:
        return sorted(J for J, v in self.lam.items() if v)

    def to_dict(self) -> dict:
        return {"R": str(self.R), "lambda": {fmt_set(J): str(self.lam[J]) for J in self.support()},
                "rates": [str(r) for r in self.rates]}


def sflpcc_admissible(p: Problem) -> tuple[int, ...]:
    """Nonempty J whose members are not prohibited from J and whose outsiders
    either have no prohibited message in J or know fewer than ``|J| - kappa(J)`` of it."""
    family = []
    for J in range(1, 1 << p.n):
        k = kappa(p, J)
        size = popcount(J)
        ok = True
        for i in range(p.n):
            if not p.prohibited[i] & J:
                continue
            if J >> i & 1 or popcount(p.side[i] & J) >= size - k:
                ok = False
                break
        if ok:
            family.append(J)
    return tuple(family)


def _receiver_rates(p: Problem, lam: dict[int, Fraction]) -> list[Fraction]:
    rates = [Fraction(0)] * p.n
    for J, v in lam.items():
        if v:
            share = v / kappa(p, J)
            for i in bits(J):
                rates[i] += share
    return rates


def _clique_lp(p: Problem, family) -> tuple[RationalLP, int, dict[int, int]]:
    lp = RationalLP()
    R = lp.var("R")
    lam = {J: lp.var(f"lam_{J}") for J in family}
    kap = {J: kappa(p, J) for J in family}
    for i in range(p.n):
        row = {R: 1}
        for J, j in lam.items():
            if J >> i & 1:
                row[j] = -Fraction(1, kap[J])
        lp.add(row, LE, 0, name=f"rate_{i + 1}")
    for i in range(p.n):
        # lambda_J <= 1 is implied: J is never inside A_i for i in J
        row = {j: 1 for J, j in lam.items() if J & ~p.side[i]}
        lp.add(row, LE, 1, name=f"capacity_{i + 1}")
    return lp, R, lam


def _solve_clique_lp(p: Problem, family, secure: bool, tighten: bool, solver: str = "certified") -> FlpccSolution:
    if p.n > MAX_N_FLPCC:
        raise LPSizeError(f"clique-cover LP limited to n <= {MAX_N_FLPCC}")
    lp, R, lam = _clique_lp(p, family)
    solve = SOLVERS[solver]
    lp.maximize({R: 1})
    sol = solve(lp)
    if sol.status != OPTIMAL:
        raise LPError(f"clique-cover LP returned {sol.status}")
    best = sol.value
    if tighten and best > 0:
        # among optimal weightings prefer the least total surplus rate
        lp.add({R: 1}, EQ, best, name="R_fixed")
        total = {}
        for J, j in lam.items():
            total[j] = -Fraction(popcount(J), kappa(p, J))
        lp.maximize(total)
        second = solve(lp)
        if second.status == OPTIMAL:
            sol = second
    weights = {J: sol.values.get(j, Fraction(0)) for J, j in lam.items()}
    weights = {J: v for J, v in weights.items() if v}
    return FlpccSolution(best, weights, _receiver_rates(p, weights), tuple(family), secure, lp.shape)


def flpcc_symmetric(p: Problem, tighten: bool = True, solver: str = "certified") -> FlpccSolution:
    return _solve_clique_lp(p, range(1, 1 << p.n), secure=False, tighten=tighten, solver=solver)


def sflpcc_symmetric(p: Problem, tighten: bool = True, solver: str = "certified") -> FlpccSolution:
    return _solve_clique_lp(p, sflpcc_admissible(p), secure=True, tighten=tighten, solver=solver)


@dataclass
class OuterBound:
    R: Fraction
    g: dict[int, Fraction]
    lp_shape: tuple[int, int]
    decoding: str
    monotone: str
    pivots: int = 0
    solution: LPSolution | None = field(default=None, repr=False)

    @property
    def broadcast_lower(self) -> Fraction | None:
        """``1 / R``, or None when the bound proves R = 0."""
        return 1 / self.R if self.R else None


def polymatroid_lp(p: Problem, decoding: str = "endpoints", monotone: str = "elemental",
                   equal_classes=None) -> tuple[RationalLP, int]:
    """Build the secure polymatroidal LP; returns it with the index of R.

    ``decoding="endpoints"`` pins ``g(B + i) - g(B) = R`` for ``B`` empty and
    ``B = B_i`` only; submodularity makes the marginal monotone in ``B``, which
    forces the intermediate equalities.  ``decoding="full"`` adds them all.

    ``monotone="elemental"`` uses ``g(S) <= g(S + i)`` for every ``S`` and ``i``;
    ``monotone="minimal"`` keeps only ``g([n] - i) <= g([n])``, which together
    with submodularity and ``g(empty) = 0`` implies the rest.

    ``equal_classes`` optionally lists families of sets to tie to a common value.
    """
    n = p.n
    full = p.full
    lp = RationalLP()
    R = lp.var("R")
    g = {S: lp.var(f"g_{S}") for S in range(1, 1 << n)}

    def terms(*pairs):
        row: dict[int, Fraction] = {}
        for S, a in pairs:
            if S:
                row[g[S]] = row.get(g[S], 0) + a
        return row

    lp.add(terms((full, 1)), LE, 1, name="g_full")
    if monotone == "elemental":
        for S in range(1 << n):
            for i in range(n):
                if not S >> i & 1:
                    lp.add(terms((S, 1), (S | 1 << i, -1)), LE, 0, name=f"mono_{S}_{i}")
    elif monotone == "minimal":
        for i in range(n):
            lp.add(terms((full & ~(1 << i), 1), (full, -1)), LE, 0, name=f"mono_{i}")
    else:
        raise ValueError(f"unknown monotonicity form {monotone!r}")
    for i in range(n):
        for j in range(i + 1, n):
            pair = 1 << i | 1 << j
            for S in submasks(full & ~pair):
                lp.add(terms((S | 1 << i, 1), (S | 1 << j, 1), (S | pair, -1), (S, -1)), GE, 0,
                       name=f"sub_{S}_{i}_{j}")
    for i in range(n):
        B = p.interfering(i)
        bases = submasks(B) if decoding == "full" else sorted({0, B})
        for Bs in bases:
            row = terms((Bs | 1 << i, 1), (Bs, -1))
            row[R] = Fraction(-1)
            lp.add(row, EQ, 0, name=f"dec_{i + 1}_{Bs}")
        for j in bits(p.prohibited[i]):
            lp.add(terms((B, 1), (B & ~(1 << j), -1)), EQ, 0, name=f"sec_{i + 1}_{j + 1}")
    for cls in equal_classes or ():
        head = cls[0]
        for S in cls[1:]:
            lp.add(terms((head, 1), (S, -1)), EQ, 0, name=f"tie_{head}_{S}")
    lp.maximize({R: 1})
    return lp, R


def polymatroidal_outer_symmetric(p: Problem, decoding: str = "endpoints", monotone: str = "elemental",
                                  max_n: int = MAX_N_OUTER, equal_classes=None,
                                  solver: str = "certified") -> OuterBound:
    """Upper bound on the symmetric capacity from the secure polymatroidal LP."""
    if p.n > max_n:
        raise LPSizeError(f"polymatroidal LP limited to n <= {max_n} (got n={p.n})")
    lp, R = polymatroid_lp(p, decoding, monotone, equal_classes)
    sol = SOLVERS[solver](lp)
    if sol.status != OPTIMAL:
        raise LPError(f"polymatroidal LP returned {sol.status}")
    g = {S: sol.values.get(j, Fraction(0)) for S, j in ((S, lp.index(f"g_{S}")) for S in range(1, 1 << p.n))}
    g[0] = Fraction(0)
    return OuterBound(sol.value, g, lp.shape, decoding, monotone, sol.pivots, sol)
