"""Exact LP optima recovered from a floating-point vertex.

HiGHS solves the LP in double precision.  The primal vertex is then rebuilt
in rational arithmetic from the constraints active at the float optimum, the
dual from the rows carrying nonzero float multipliers, and the pair is
accepted only if exact primal feasibility, exact dual feasibility and equal
objective values all hold.  Anything else falls back to the exact simplex,
so the float solver only ever saves time and never decides an answer.
"""

from __future__ import annotations

import logging
from fractions import Fraction

import numpy as np
from gmpy2 import mpq
from scipy.optimize import linprog
from scipy.sparse import csr_matrix

from .simplex import EQ, GE, OPTIMAL, LPSolution, RationalLP, lp_solve

log = logging.getLogger(__name__)

TOL = 1e-7


class _Echelon:
    """Incremental sparse row echelon form over the rationals."""

    def __init__(self):
        self.rows: list[tuple[int, dict[int, mpq], mpq]] = []

    def add(self, row: dict[int, mpq], rhs: mpq) -> bool:
        """Reduce and keep ``row``; False if it was dependent (consistency not checked)."""
        row = dict(row)
        for c, prow, prhs in self.rows:
            a = row.get(c)
            if a:
                for j, v in prow.items():
                    w = row.get(j, 0) - a * v
                    if w:
                        row[j] = w
                    else:
                        row.pop(j, None)
                rhs -= a * prhs
        if not row:
            return False
        c = min(row, key=lambda j: (len(str(row[j])), j))
        inv = 1 / row[c]
        self.rows.append((c, {j: v * inv for j, v in row.items()}, rhs * inv))
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def solve(self) -> dict[int, mpq]:
        """Back substitution with non-pivot unknowns set to zero."""
        x: dict[int, mpq] = {}
        for c, prow, prhs in reversed(self.rows):
            v = prhs - sum((a * x[j] for j, a in prow.items() if j != c and j in x), mpq(0))
            if v:
                x[c] = v
        return x


def _to_mpq(a: Fraction) -> mpq:
    return mpq(a.numerator, a.denominator)


def _standard_rows(lp: RationalLP):
    """Rows as (coeffs, rhs, is_eq) in ``<=`` / ``=`` form."""
    out = []
    for c in lp.constraints:
        if c.sense == GE:
            out.append(({j: -a for j, a in c.coeffs.items()}, -c.rhs, False))
        else:
            out.append((dict(c.coeffs), c.rhs, c.sense == EQ))
    return out


def _float_solve(lp: RationalLP, rows):
    nvar = len(lp.names)
    ub = [k for k, r in enumerate(rows) if not r[2]]
    eq = [k for k, r in enumerate(rows) if r[2]]

    def sparse(idx):
        data, ri, ci = [], [], []
        for new, k in enumerate(idx):
            for j, a in rows[k][0].items():
                data.append(float(a))
                ri.append(new)
                ci.append(j)
        return csr_matrix((data, (ri, ci)), shape=(len(idx), nvar)) if idx else None

    c = np.zeros(nvar)
    for j, a in lp.objective.items():
        c[j] = -float(a)
    bounds = [(None, None) if f else (0, None) for f in lp.free]
    res = linprog(c, A_ub=sparse(ub), b_ub=[float(rows[k][1]) for k in ub] or None,
                  A_eq=sparse(eq), b_eq=[float(rows[k][1]) for k in eq] or None,
                  bounds=bounds, method="highs-ds")
    return res, ub, eq


def certified_solve(lp: RationalLP) -> LPSolution:
    """Exact optimum of ``lp``; the float solver only proposes a vertex."""
    try:
        sol = _certify(lp)
    except (ValueError, ZeroDivisionError, ArithmeticError) as exc:  # pragma: no cover - defensive
        log.debug("certificate construction raised %s", exc)
        sol = None
    if sol is not None:
        return sol
    log.debug("float vertex not certified, running exact simplex")
    return lp_solve(lp)


def _certify(lp: RationalLP) -> LPSolution | None:
    rows = _standard_rows(lp)
    res, ub, eq = _float_solve(lp, rows)
    if res.status != 0:
        return None
    nvar = len(lp.names)
    x = res.x
    slack = dict(zip(ub, res.ineqlin.residual)) if ub else {}
    duals = {}
    if ub:
        duals.update(zip(ub, -res.ineqlin.marginals))
    if eq:
        duals.update(zip(eq, -res.eqlin.marginals))
    reduced = res.lower.marginals  # objective sensitivity to each lower bound

    # primal: active constraints, strongest evidence first
    primal = _Echelon()
    order = (sorted(eq)
             + sorted((k for k in ub if abs(duals[k]) > TOL), key=lambda k: -abs(duals[k]))
             + [k for k in ub if abs(duals[k]) <= TOL and abs(slack[k]) <= TOL])
    for k in order:
        coeffs, rhs, _ = rows[k]
        primal.add({j: _to_mpq(a) for j, a in coeffs.items()}, _to_mpq(rhs))
    for j in sorted(range(nvar), key=lambda j: -abs(reduced[j])):
        if primal.rank == nvar:
            break
        if not lp.free[j] and abs(x[j]) <= TOL:
            primal.add({j: mpq(1)}, mpq(0))
    if primal.rank < nvar:
        return None
    xs = {j: Fraction(int(v.numerator), int(v.denominator)) for j, v in primal.solve().items()}
    if lp.check(xs):
        return None
    value = lp.evaluate(xs)

    # dual: multipliers on rows the float solution marks as binding
    support = [k for k in range(len(rows)) if abs(duals.get(k, 0)) > TOL]
    dual = _Echelon()
    tight_cols = [j for j in range(nvar) if lp.free[j] or xs.get(j, 0) != 0 or abs(reduced[j]) <= TOL]
    by_col: dict[int, dict[int, mpq]] = {j: {} for j in range(nvar)}
    for k in support:
        for j, a in rows[k][0].items():
            by_col[j][k] = _to_mpq(a)
    for j in tight_cols:
        dual.add(by_col[j], _to_mpq(lp.objective.get(j, Fraction(0))))
    y = dual.solve()
    for k, v in y.items():
        if v < 0 and not rows[k][2]:
            return None
    # A^T y >= c on nonnegative columns, = c on free ones
    for j in range(nvar):
        lhs = sum((a * y[k] for k, a in by_col[j].items() if k in y), mpq(0))
        cj = _to_mpq(lp.objective.get(j, Fraction(0)))
        if lhs < cj or (lp.free[j] and lhs != cj):
            return None
    bound = sum((_to_mpq(rows[k][1]) * v for k, v in y.items()), mpq(0))
    if Fraction(int(bound.numerator), int(bound.denominator)) != value:
        return None
    return LPSolution(OPTIMAL, value, {j: v for j, v in xs.items() if v}, list(lp.names), 0)
