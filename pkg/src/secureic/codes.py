"""Secure linear index codes: assembly from a clique-cover weighting and
rank-based verification.

Layout of an assembled code, all counts in field symbols:

* ``D`` is the least common denominator of every ``lambda_J / kappa(J)`` and
  of the target rate, so subproblem ``J`` carries ``l_J = D lambda_J / kappa(J)``
  symbols per member message.
* message ``i`` has ``t_i`` symbols; its ``s_i = sum_{J containing i} l_J``
  sub-message slots are ``E_i x_i`` for an ``s_i x t_i`` splitting matrix
  (the identity when ``s_i = t_i``).
* subproblem ``J`` emits ``kappa(J) l_J`` parity symbols through a systematic
  MDS parity block applied slot-position by slot-position.
* the ``K`` parity symbols are compressed by an ``r x K`` outer matrix ``H``
  with ``r`` the largest number of parity symbols some receiver cannot
  rebuild from side information.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .gf import FieldTooSmall, FiniteField, GFMatrix, cauchy_superregular, gf, rank
from .graph import kappa
from .problem import Problem, bits, fmt_set, popcount
from .rates import FlpccSolution

__all__ = [
    "Block", "CodeSpec", "VerificationReport", "CodeFormatError", "SearchExhausted",
    "systematic_mds", "assemble_sflpcc_code", "verify_linear_code",
    "search_secure_assembly", "FieldTooSmall", "linear_code",
]


class CodeFormatError(ValueError):
    pass


class SearchExhausted(RuntimeError):
    def __init__(self, message: str, best: "VerificationReport | None" = None):
        super().__init__(message)
        self.best = best


@dataclass(frozen=True)
class Block:
    J: int
    kappa: int
    length: int  # l_J
    parity: GFMatrix  # kappa x |J|


@dataclass
class CodeSpec:
    """A linear index code ``y = M x`` over ``field``.

    ``M`` has ``r`` rows and ``sum(t)`` columns, message ``i`` owning the
    column block ``offsets[i] : offsets[i] + t[i]``.  The assembly fields are
    empty for codes read from a file or written by hand.
    """

    field: FiniteField
    t: tuple[int, ...]
    M: GFMatrix
    blocks: tuple[Block, ...] = ()
    H: GFMatrix | None = None
    split: tuple[GFMatrix, ...] = ()
    seed: int | None = None

    def __post_init__(self):
        if self.M.field != self.field:
            raise ValueError("matrix and code disagree on the field")
        if self.M.cols != sum(self.t):
            raise ValueError(f"M has {self.M.cols} columns, t sums to {sum(self.t)}")
        if any(x < 1 for x in self.t):
            raise ValueError("every message needs at least one symbol")

    @property
    def n(self) -> int:
        return len(self.t)

    @property
    def r(self) -> int:
        return self.M.rows

    @property
    def offsets(self) -> list[int]:
        out, acc = [], 0
        for x in self.t:
            out.append(acc)
            acc += x
        return out

    def columns_of(self, mask: int) -> list[int]:
        off = self.offsets
        return [c for i in bits(mask) for c in range(off[i], off[i] + self.t[i])]

    def rate(self, i: int) -> Fraction:
        return Fraction(self.t[i], self.r)

    def encode(self, x: Sequence[Sequence[int]]) -> list[int]:
        flat = [v for xi in x for v in xi]
        if len(flat) != self.M.cols:
            raise ValueError("message lengths do not match t")
        F = self.field
        out = []
        for row in self.M.data:
            acc = 0
            for a, v in zip(row, flat):
                acc ^= F.mul(a, v)
            out.append(acc)
        return out

    def to_dict(self) -> dict:
        width = (self.field.m + 3) // 4
        doc = {
            "format": "secureic-code",
            "field": {"m": self.field.m, "modulus": hex(self.field.modulus)},
            "t": list(self.t),
            "r": self.r,
            "M": [" ".join(f"{v:0{width}x}" for v in row) for row in self.M.data],
        }
        if self.blocks:
            doc["blocks"] = [{"J": fmt_set(b.J), "kappa": b.kappa, "length": b.length} for b in self.blocks]
        if self.seed is not None:
            doc["seed"] = self.seed
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, doc) -> "CodeSpec":
        try:
            fdoc = doc["field"]
            F = FiniteField(int(fdoc["m"]), int(str(fdoc["modulus"]), 16))
            t = tuple(int(x) for x in doc["t"])
            r = int(doc["r"])
            rows = [[int(tok, 16) for tok in row.split()] for row in doc["M"]]
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise CodeFormatError(f"malformed code document: {exc}") from exc
        if len(rows) != r:
            raise CodeFormatError(f"declared r={r} but M has {len(rows)} rows")
        width = sum(t)
        for k, row in enumerate(rows):
            if len(row) != width:
                raise CodeFormatError(f"row {k + 1} of M has {len(row)} symbols, expected {width}")
        try:
            return cls(F, t, GFMatrix(F, rows, width), seed=doc.get("seed"))
        except ValueError as exc:
            raise CodeFormatError(str(exc)) from exc

    @classmethod
    def loads(cls, text: str) -> "CodeSpec":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CodeFormatError(f"code file is not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise CodeFormatError("code file must hold an object")
        return cls.from_dict(doc)


def linear_code(rows: Sequence[Sequence[int]], t: Sequence[int] | None = None, m: int = 1) -> CodeSpec:
    """Hand-written code; ``t`` defaults to one symbol per column."""
    F = gf(m)
    M = GFMatrix(F, rows, len(rows[0]) if rows else sum(t or ()))
    return CodeSpec(F, tuple(t) if t is not None else (1,) * M.cols, M)


@dataclass
class DecodingCheck:
    receiver: int
    passed: bool
    rank_with: int  # rank of columns outside A_i
    rank_without: int  # rank of columns of B_i
    needed: int

    def to_dict(self):
        return {"receiver": self.receiver + 1, "passed": self.passed,
                "rank": [self.rank_with, self.rank_without], "needed": self.needed}


@dataclass
class SecurityCheck:
    receiver: int
    message: int
    leakage: int  # symbols
    rank_unknown: tuple[int, int]  # columns outside A_i, with and without j
    rank_interfering: tuple[int, int]  # columns of B_i, with and without j

    @property
    def passed(self) -> bool:
        return self.leakage == 0

    def to_dict(self):
        return {"receiver": self.receiver + 1, "message": self.message + 1, "passed": self.passed,
                "leakage": self.leakage, "rank": list(self.rank_unknown),
                "rank_interfering": list(self.rank_interfering)}


@dataclass
class VerificationReport:
    decoding: list[DecodingCheck]
    security: list[SecurityCheck]
    field_order: int = 2

    @property
    def decoding_ok(self) -> bool:
        return all(c.passed for c in self.decoding)

    @property
    def security_ok(self) -> bool:
        return all(c.passed for c in self.security)

    @property
    def passed(self) -> bool:
        return self.decoding_ok and self.security_ok

    @property
    def failures(self) -> int:
        return sum(not c.passed for c in self.decoding) + sum(not c.passed for c in self.security)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "field_order": self.field_order,
                "decoding": [c.to_dict() for c in self.decoding],
                "security": [c.to_dict() for c in self.security]}

    def lines(self) -> list[str]:
        out = []
        for c in self.decoding:
            out.append(f"decode  receiver {c.receiver + 1}: {'pass' if c.passed else 'FAIL'} "
                       f"(rank {c.rank_with} - {c.rank_without}, need {c.needed})")
        for c in self.security:
            tail = "" if c.passed else f", leaks {c.leakage} symbol(s)"
            out.append(f"secure  receiver {c.receiver + 1} vs x{c.message + 1}: "
                       f"{'pass' if c.passed else 'FAIL'}{tail}")
        return out


def verify_linear_code(p: Problem, spec: CodeSpec) -> VerificationReport:
    """Check every decoding and security constraint by column-block ranks.

    Receiver ``i`` decodes iff ``rank(M_{B_i + i}) - rank(M_{B_i}) = t_i``;
    it learns ``rank(M_{[n]-A_i}) - rank(M_{[n]-A_i-j})`` symbols about
    ``x_j``, which is the exact conditional mutual information in units of
    ``log2 q`` for uniform messages.
    """
    if spec.n != p.n:
        raise ValueError(f"code has {spec.n} messages, problem has {p.n}")
    F = spec.field
    data = spec.M.data
    cache: dict[int, int] = {}

    def rk(mask: int) -> int:
        if mask not in cache:
            cols = spec.columns_of(mask)
            cache[mask] = rank(F, [[row[c] for c in cols] for row in data]) if cols else 0
        return cache[mask]

    dec, sec = [], []
    for i in range(p.n):
        B = p.interfering(i)
        U = B | 1 << i
        a, b = rk(U), rk(B)
        dec.append(DecodingCheck(i, a - b == spec.t[i], a, b, spec.t[i]))
        for j in bits(p.prohibited[i]):
            leak = rk(U) - rk(U & ~(1 << j))
            sec.append(SecurityCheck(i, j, leak, (rk(U), rk(U & ~(1 << j))), (rk(B), rk(B & ~(1 << j)))))
    return VerificationReport(dec, sec, F.q)


# ---------------------------------------------------------------- assembly

def systematic_mds(J_size: int, kappa_: int, f: FiniteField, points: Sequence[int] | None = None) -> GFMatrix:
    """Generator ``[I | C]`` of a systematic ``(J_size + kappa, J_size)`` MDS code.

    ``C`` (``J_size x kappa``) is all ones for ``kappa = 1``, the identity for
    ``kappa = J_size`` and a Cauchy block otherwise, so any ``kappa`` rows of
    ``C`` are independent: knowing any ``J_size - kappa`` message symbols,
    the parities give back the rest.
    """
    if not 1 <= kappa_ <= J_size:
        raise ValueError("need 1 <= kappa <= J_size")
    C = _parity_block(J_size, kappa_, f, points).transpose()
    eye = GFMatrix.identity(f, J_size)
    return eye.hstack(C)


def _parity_block(size: int, k: int, f: FiniteField, points=None) -> GFMatrix:
    """``k x size`` parity rows (the transpose of the generator's ``C``)."""
    if k == 1:
        return GFMatrix(f, [[1] * size], size)
    if k == size:
        return GFMatrix.identity(f, size)
    return cauchy_superregular(k, size, f, points)


def _random_parity_block(size: int, k: int, f: FiniteField, rng: random.Random, strict: bool) -> GFMatrix:
    """Parity rows with fresh generator points and nonzero scalings.

    ``kappa = 1`` and ``kappa = |J|`` keep their canonical all-ones and
    identity forms.  Scaling rows and columns by nonzero elements keeps every
    minor nonzero.  When the field is too small for a Cauchy block, ``strict``
    raises and otherwise a uniformly random nonzero block is drawn for the
    verifier to judge.
    """
    if k == 1 or k == size:
        return _parity_block(size, k, f)
    nz = lambda: rng.randrange(1, f.q)  # noqa: E731
    if k + size > f.q:
        if strict:
            raise FieldTooSmall(f"{k}x{size} parity block needs {k + size} field elements, {f} has {f.q}")
        return GFMatrix(f, [[nz() for _ in range(size)] for _ in range(k)], size)
    base = cauchy_superregular(k, size, f, rng.sample(range(f.q), k + size))
    rs = [nz() for _ in range(k)]
    cs = [nz() for _ in range(size)]
    return GFMatrix(f, [[f.mul(f.mul(rs[a], v), cs[b]) for b, v in enumerate(row)]
                        for a, row in enumerate(base.data)], size)


def _random_outer(r: int, K: int, f: FiniteField, rng: random.Random, strict: bool) -> GFMatrix:
    if r == K:
        return GFMatrix.identity(f, K)
    if r + K > f.q:
        if strict:
            raise FieldTooSmall(f"{r}x{K} outer matrix needs {r + K} field elements, {f} has {f.q}")
        return GFMatrix(f, [[rng.randrange(1, f.q) for _ in range(K)] for _ in range(r)], K)
    return cauchy_superregular(r, K, f, rng.sample(range(f.q), r + K))


def _random_split(s: int, t: int, f: FiniteField, rng: random.Random) -> GFMatrix:
    if s == t:
        return GFMatrix.identity(f, t)
    while True:
        E = GFMatrix(f, [[rng.randrange(f.q) for _ in range(t)] for _ in range(s)], t)
        if E.rank() == t:
            return E


def symbol_plan(p: Problem, sol: FlpccSolution) -> tuple[int, dict[int, int], list[int]]:
    """Common denominator ``D``, per-subproblem lengths ``l_J`` and slot counts ``s_i``."""
    support = sol.support()
    kap = {J: kappa(p, J) for J in support}
    shares = [sol.lam[J] / kap[J] for J in support]
    D = lcm(sol.R.denominator, *(s.denominator for s in shares))
    lengths = {J: int(s * D) for J, s in zip(support, shares)}
    slots = [sum(lengths[J] for J in support if J >> i & 1) for i in range(p.n)]
    return D, lengths, slots


def assemble_sflpcc_code(p: Problem, sol: FlpccSolution, f: FiniteField, seed: int | None = 0,
                         symmetric: bool = True, strict: bool = True) -> CodeSpec:
    """Build the two-stage code for the weighting ``sol``.

    With ``symmetric`` every message gets ``t_i = D R`` symbols and extra
    sub-message slots are filled through the splitting matrix; otherwise
    ``t_i = s_i`` and receiver ``i`` gets its full LP rate.
    ``strict`` raises :class:`FieldTooSmall` instead of falling back to
    random blocks when a Cauchy block does not fit in ``f``.
    """
    support = sol.support()
    if not support or sol.R <= 0:
        raise ValueError("rate 0: the weighting has no support, nothing to build")
    rng = random.Random(seed)
    D, lengths, slots = symbol_plan(p, sol)
    if any(s == 0 for s in slots):
        raise ValueError("some message is in no subproblem of the support")
    t = tuple(int(sol.R * D) for _ in range(p.n)) if symmetric else tuple(slots)

    blocks = []
    for J in support:
        k = kappa(p, J)
        blocks.append(Block(J, k, lengths[J], _random_parity_block(popcount(J), k, f, rng, strict)))
    split = tuple(_random_split(slots[i], t[i], f, rng) for i in range(p.n))

    # slot index of (i, J, position) inside message i's slot vector
    slot_base: dict[tuple[int, int], int] = {}
    used = [0] * p.n
    for b in blocks:
        for i in bits(b.J):
            slot_base[(i, b.J)] = used[i]
            used[i] += b.length

    # parity-by-message map P: K x sum(t)
    offsets = [sum(t[:i]) for i in range(p.n)]
    width = sum(t)
    P_rows = []
    unknown_count = [0] * p.n
    for b in blocks:
        members_ = bits(b.J)
        for c in range(b.kappa):
            for pos in range(b.length):
                row = [0] * width
                for col, i in enumerate(members_):
                    coef = b.parity.data[c][col]
                    if not coef:
                        continue
                    srow = split[i].data[slot_base[(i, b.J)] + pos]
                    for a, e in enumerate(srow):
                        if e:
                            row[offsets[i] + a] ^= f.mul(coef, e)
                P_rows.append(row)
        for i in range(p.n):
            if b.J & ~p.side[i]:
                unknown_count[i] += b.kappa * b.length
    K = len(P_rows)
    r = max(unknown_count)
    H = _random_outer(r, K, f, rng, strict)
    M = H @ GFMatrix(f, P_rows, width)
    return CodeSpec(f, t, M, tuple(blocks), H, split, seed)


def search_secure_assembly(p: Problem, sol: FlpccSolution, f: FiniteField | None = None, attempts: int = 64,
                           seed: int = 0, escalate: bool = True,
                           symmetric: bool = True) -> tuple[CodeSpec, VerificationReport]:
    """Retry randomized assemblies until one verifies.

    Attempt ``a`` uses seed ``seed + a``.  With ``symmetric`` the equal-rate
    layout is tried first; if no attempt verifies, the same field is searched
    with independent sub-messages, where receiver ``i`` gets its LP rate.
    When the budget runs out in ``f`` and ``escalate`` is set, the search
    repeats in GF(2^16).
    """
    fields = [f or gf(8)]
    if escalate and fields[0].m < 16:
        fields.append(gf(16))
    D, _, slots = symbol_plan(p, sol)
    surplus = any(s_i != sol.R * D for s_i in slots)
    layouts = [True, False] if symmetric and surplus else [symmetric]
    best: VerificationReport | None = None
    for F in fields:
        for sym in layouts:
            for a in range(attempts):
                spec = assemble_sflpcc_code(p, sol, F, seed + a, symmetric=sym, strict=False)
                report = verify_linear_code(p, spec)
                if report.passed:
                    return spec, report
                if best is None or report.failures < best.failures:
                    best = report
    tried = ", ".join(str(F) for F in fields)
    raise SearchExhausted(f"no verified code in {attempts} attempts per layout over {tried}; "
                          f"best attempt had {best.failures} failed check(s)", best)
