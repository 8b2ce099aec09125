"""Exact rational linear programming.

Two-phase primal simplex on a sparse tableau with ``gmpy2.mpq`` entries.
Pricing is Dantzig's rule until a run of degenerate pivots appears, after
which the phase finishes under Bland's rule, so cycling cannot occur.
Every optimal assignment is re-checked against the original constraints in
exact arithmetic before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Mapping

from gmpy2 import mpq

LE, GE, EQ = "<=", ">=", "="

OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"

MAX_VARIABLES = 1 << 16
DEGENERATE_STREAK = 50


class LPError(Exception):
    pass


class LPSizeError(LPError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating-point coefficients are not accepted")
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return Fraction(int(x.numerator), int(x.denominator))
    return Fraction(x)


@dataclass
class Constraint:
    coeffs: dict[int, Fraction]
    sense: str
    rhs: Fraction
    name: str = ""


@dataclass
class RationalLP:
    """Maximisation LP over named variables with exact rational data.

    Variables are nonnegative unless created with ``free=True``.
    """

    names: list[str] = field(default_factory=list)
    free: list[bool] = field(default_factory=list)
    constraints: list[Constraint] = field(default_factory=list)
    objective: dict[int, Fraction] = field(default_factory=dict)
    _index: dict[str, int] = field(default_factory=dict, repr=False)

    def var(self, name: str, free: bool = False) -> int:
        if name in self._index:
            raise LPError(f"duplicate variable {name!r}")
        if len(self.names) >= MAX_VARIABLES:
            raise LPSizeError(f"more than {MAX_VARIABLES} variables")
        self._index[name] = len(self.names)
        self.names.append(name)
        self.free.append(free)
        return self._index[name]

    def index(self, name: str) -> int:
        return self._index[name]

    def add(self, coeffs: Mapping[int, object], sense: str, rhs=0, name: str = "") -> None:
        if sense not in (LE, GE, EQ):
            raise LPError(f"unknown sense {sense!r}")
        row: dict[int, Fraction] = {}
        for j, a in coeffs.items():
            if not 0 <= j < len(self.names):
                raise LPError(f"unknown variable index {j}")
            a = _frac(a)
            if a:
                row[j] = row.get(j, Fraction(0)) + a
        row = {j: a for j, a in row.items() if a}
        self.constraints.append(Constraint(row, sense, _frac(rhs), name))

    def maximize(self, coeffs: Mapping[int, object]) -> None:
        self.objective = {j: _frac(a) for j, a in coeffs.items() if a}

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.constraints), len(self.names)

    def check(self, values: Mapping[int, Fraction]) -> list[str]:
        """Names (or indices) of constraints violated by ``values``."""
        bad = []
        for k, c in enumerate(self.constraints):
            lhs = sum((a * values.get(j, 0) for j, a in c.coeffs.items()), Fraction(0))
            ok = (lhs <= c.rhs) if c.sense == LE else (lhs >= c.rhs) if c.sense == GE else lhs == c.rhs
            if not ok:
                bad.append(c.name or f"#{k}")
        for j, is_free in enumerate(self.free):
            if not is_free and values.get(j, 0) < 0:
                bad.append(f"{self.names[j]} >= 0")
        return bad

    def evaluate(self, values: Mapping[int, Fraction]) -> Fraction:
        return sum((a * values.get(j, 0) for j, a in self.objective.items()), Fraction(0))

    def to_lp_format(self) -> str:
        """CPLEX-LP text; each row is scaled to integer coefficients."""

        def term_list(coeffs):
            parts = []
            for j in sorted(coeffs):
                a = coeffs[j]
                sign = "-" if a < 0 else "+"
                parts.append(f"{sign} {abs(a)} {self.names[j]}")
            return " ".join(parts) if parts else "0 " + (self.names[0] if self.names else "x")

        def scaled(coeffs, rhs):
            m = lcm(*(a.denominator for a in list(coeffs.values()) + [rhs]))
            return {j: int(a * m) for j, a in coeffs.items()}, int(rhs * m)

        lines = ["\\ exact rational LP, rows scaled to integer coefficients"]
        obj_scale = lcm(*(a.denominator for a in self.objective.values())) if self.objective else 1
        if obj_scale != 1:
            lines.append(f"\\ objective multiplied by {obj_scale}")
        lines.append("Maximize")
        lines.append(" obj: " + term_list({j: int(a * obj_scale) for j, a in self.objective.items()}))
        lines.append("Subject To")
        for k, c in enumerate(self.constraints):
            coeffs, rhs = scaled(c.coeffs, c.rhs)
            lines.append(f" c{k}: {term_list(coeffs)} {c.sense} {rhs}")
        lines.append("Bounds")
        for j, name in enumerate(self.names):
            lines.append(f" {name} free" if self.free[j] else f" {name} >= 0")
        lines.append("End")
        return "\n".join(lines) + "\n"


@dataclass
class LPSolution:
    status: str
    value: Fraction | None = None
    values: dict[int, Fraction] = field(default_factory=dict)
    names: list[str] = field(default_factory=list, repr=False)
    pivots: int = 0

    def __getitem__(self, name: str) -> Fraction:
        return self.values.get(self.names.index(name), Fraction(0))

    def by_name(self) -> dict[str, Fraction]:
        return {self.names[j]: v for j, v in self.values.items()}


class _Tableau:
    """Sparse simplex tableau.  Row ``i`` reads ``x_basis[i] + sum_j rows[i][j] x_j = rhs[i]``."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[dict[int, mpq]] = []
        self.rhs: list[mpq] = []
        self.basis: list[int] = []
        self.colrows: list[set[int]] = [set() for _ in range(ncols)]
        self.cost: dict[int, mpq] = {}
        self.z = mpq(0)
        self.blocked: set[int] = set()
        self.pivots = 0

    def add_row(self, row: dict[int, mpq], rhs: mpq, basic: int) -> None:
        i = len(self.rows)
        self.rows.append(row)
        self.rhs.append(rhs)
        self.basis.append(basic)
        for j in row:
            self.colrows[j].add(i)

    def set_objective(self, c: dict[int, mpq]) -> None:
        d = dict(c)
        z = mpq(0)
        for i, b in enumerate(self.basis):
            cb = c.get(b)
            if cb:
                z += cb * self.rhs[i]
                for j, a in self.rows[i].items():
                    v = d.get(j, 0) - cb * a
                    if v:
                        d[j] = v
                    else:
                        d.pop(j, None)
        for b in self.basis:
            d.pop(b, None)
        self.cost = d
        self.z = z

    def pivot(self, r: int, c: int) -> None:
        self.pivots += 1
        rows, colrows = self.rows, self.colrows
        prow = rows[r]
        piv = prow[c]
        if piv != 1:
            inv = 1 / piv
            for j in prow:
                prow[j] *= inv
            self.rhs[r] *= inv
        # the leaving variable becomes a regular column of the pivot row
        leave = self.basis[r]
        del prow[c]
        colrows[c].discard(r)
        prow[leave] = 1 / piv
        colrows[leave].add(r)
        # prow now expresses x_c = rhs_r - sum prow_j x_j
        prhs = self.rhs[r]
        for i in list(colrows[c]):
            row = rows[i]
            f = row.pop(c)
            colrows[c].discard(i)
            for j, a in prow.items():
                v = row.get(j, 0) - f * a
                if v:
                    if j not in row:
                        colrows[j].add(i)
                    row[j] = v
                elif j in row:
                    del row[j]
                    colrows[j].discard(i)
            self.rhs[i] -= f * prhs
        f = self.cost.pop(c, 0)
        if f:
            for j, a in prow.items():
                v = self.cost.get(j, 0) - f * a
                if v:
                    self.cost[j] = v
                else:
                    self.cost.pop(j, None)
            self.z += f * prhs
        self.basis[r] = c

    def run(self) -> str:
        """Maximise the current objective. Returns OPTIMAL or UNBOUNDED."""
        bland = False
        streak = 0
        while True:
            cands = [(d, j) for j, d in self.cost.items() if d > 0 and j not in self.blocked]
            if not cands:
                return OPTIMAL
            if bland:
                c = min(j for _, j in cands)
            else:
                c = max(cands, key=lambda t: (t[0], -t[1]))[1]
            best = None
            for i in self.colrows[c]:
                a = self.rows[i][c]
                if a > 0:
                    key = (self.rhs[i] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            (ratio, _), r = best
            if ratio == 0:
                streak += 1
                if streak > DEGENERATE_STREAK:
                    bland = True
            else:
                streak = 0
            self.pivot(r, c)


def lp_solve(lp: RationalLP) -> LPSolution:
    """Solve ``lp`` exactly; infeasible and unbounded are statuses, not errors."""
    nvar = len(lp.names)
    # column layout: originals, negative parts of free vars, slacks, artificials
    neg = {}
    ncols = nvar
    for j, is_free in enumerate(lp.free):
        if is_free:
            neg[j] = ncols
            ncols += 1
    nslack = sum(1 for c in lp.constraints if c.sense != EQ)
    slack0 = ncols
    ncols += nslack
    art0 = ncols
    ncols += len(lp.constraints)
    tab = _Tableau(ncols)

    artificial = []
    s = slack0
    for k, con in enumerate(lp.constraints):
        row = {}
        for j, a in con.coeffs.items():
            row[j] = mpq(a.numerator, a.denominator)
            if j in neg:
                row[neg[j]] = -row[j]
        rhs = mpq(con.rhs.numerator, con.rhs.denominator)
        slack = None
        if con.sense == LE:
            slack, sgn = s, 1
            s += 1
        elif con.sense == GE:
            slack, sgn = s, -1
            s += 1
        if slack is not None:
            row[slack] = mpq(sgn)
        if rhs < 0:
            row = {j: -a for j, a in row.items()}
            rhs = -rhs
        if slack is not None and row[slack] == 1:
            basic = slack
            del row[slack]
        else:
            basic = art0 + k
            artificial.append(basic)
        tab.add_row(row, rhs, basic)

    if artificial:
        art = set(artificial)
        tab.set_objective({a: mpq(-1) for a in artificial})
        tab.run()
        if tab.z < 0:
            return LPSolution(INFEASIBLE, names=list(lp.names), pivots=tab.pivots)
        _drive_out_artificials(tab, art)
        tab.blocked = art

    tab.set_objective({j: mpq(a.numerator, a.denominator) for j, a in lp.objective.items()}
                      | {neg[j]: -mpq(a.numerator, a.denominator) for j, a in lp.objective.items() if j in neg})
    status = tab.run()
    if status == UNBOUNDED:
        return LPSolution(UNBOUNDED, names=list(lp.names), pivots=tab.pivots)

    raw = {b: tab.rhs[i] for i, b in enumerate(tab.basis) if b is not None}
    values = {}
    for j in range(nvar):
        v = raw.get(j, 0) - (raw.get(neg[j], 0) if j in neg else 0)
        if v:
            values[j] = Fraction(int(v.numerator), int(v.denominator))
    bad = lp.check(values)
    if bad:
        raise LPError(f"internal error: solution violates {bad[:5]}")
    value = lp.evaluate(values)
    if value != Fraction(int(tab.z.numerator), int(tab.z.denominator)):
        raise LPError("internal error: objective mismatch")
    return LPSolution(OPTIMAL, value, values, list(lp.names), tab.pivots)


def _drive_out_artificials(tab: _Tableau, art: set[int]) -> None:
    """Pivot zero-level artificials out of the basis; drop redundant rows."""
    for i, b in enumerate(tab.basis):
        if b not in art:
            continue
        col = next((j for j in sorted(tab.rows[i]) if j not in art), None)
        if col is None:
            # redundant row: every remaining coefficient sits on an artificial
            for j in tab.rows[i]:
                tab.colrows[j].discard(i)
            tab.rows[i] = {}
            tab.basis[i] = None
            continue
        tab.pivot(i, col)
    for j in art:
        for i in list(tab.colrows[j]):
            del tab.rows[i][j]
        tab.colrows[j].clear()
        tab.cost.pop(j, None)
