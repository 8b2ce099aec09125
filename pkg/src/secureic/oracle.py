"""Exhaustive ground truth for tiny instances with one-bit messages.

An encoder with ``t_i = 1`` is determined by its fibres, the sets of message
tuples sharing a codeword.  Decoding and zero leakage are both properties of
single fibres:

* no two tuples in a fibre agree on ``x_{A_i}`` yet differ in ``x_i``;
* for each ``i``, ``j in P_i`` and value of ``x_{A_i}``, a fibre holds as many
  tuples with ``x_j = 0`` as with ``x_j = 1``.

So a code of length ``r`` exists iff the ``2^n`` tuples split into at most
``2^r`` valid fibres, which :func:`exact_feasible` decides by an exact
minimum-cover search.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import log2
from typing import Sequence

from .problem import Problem, bits, popcount

MAX_ORACLE_N = 4


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class ExactMI:
    """A nonnegative real ``sum_p c_p log2(p)`` over primes ``p`` with rational ``c_p``.

    Logs of distinct primes are linearly independent over the rationals, so
    equality and zero tests on this form are exact.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, Fraction] | None = None):
        self.terms = {p: Fraction(c) for p, c in (terms or {}).items() if c}

    @classmethod
    def log2_of(cls, n: int, coef: Fraction | int = 1) -> "ExactMI":
        if n < 1:
            raise ValueError("log of a non-positive integer")
        return cls({p: Fraction(coef) * e for p, e in _factor(n).items()})

    @classmethod
    def bits(cls, amount: Fraction | int) -> "ExactMI":
        return cls({2: Fraction(amount)})

    def __add__(self, other: "ExactMI") -> "ExactMI":
        terms = dict(self.terms)
        for p, c in other.terms.items():
            terms[p] = terms.get(p, 0) + c
        return ExactMI(terms)

    def __neg__(self):
        return ExactMI({p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a: Fraction) -> "ExactMI":
        return ExactMI({p: c * a for p, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactMI.bits(other)
        return isinstance(other, ExactMI) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __float__(self):
        return float(sum(float(c) * log2(p) for p, c in self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "ExactMI(0)"
        parts = [f"{c}*log2({p})" for p, c in sorted(self.terms.items())]
        return f"ExactMI({' + '.join(parts)})"


@dataclass(frozen=True)
class TruthTableCode:
    """Encoder ``x -> table[x]`` for one-bit messages; bit ``k`` of ``x`` is message ``k + 1``."""

    n: int
    r: int
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != 1 << self.n:
            raise ValueError(f"table needs {1 << self.n} entries, got {len(self.table)}")
        if any(not 0 <= y < 1 << self.r for y in self.table):
            raise ValueError(f"codeword outside [0, 2^{self.r})")

    @classmethod
    def from_function(cls, n: int, r: int, fn) -> "TruthTableCode":
        return cls(n, r, tuple(fn(x) for x in range(1 << n)))

    @classmethod
    def from_gf2_matrix(cls, rows: Sequence[Sequence[int]], n: int) -> "TruthTableCode":
        """Linear code ``y = M x`` over GF(2) with codeword bit ``k`` from row ``k``."""
        masks = [sum(1 << c for c, v in enumerate(row) if v & 1) for row in rows]

        def enc(x):
            return sum((popcount(m & x) & 1) << k for k, m in enumerate(masks))

        return cls.from_function(n, len(rows), enc)


def _entropy_sum(counts) -> ExactMI:
    """``sum c log2 c`` over the counts, as an exact form."""
    out = ExactMI()
    for c in counts:
        if c > 1:
            out = out + ExactMI.log2_of(c, c)
    return out


def _conditional_entropy(code: TruthTableCode, cond_mask: int) -> ExactMI:
    """``H(Y | X_cond)`` under uniform messages."""
    N = 1 << code.n
    groups: dict[int, Counter] = defaultdict(Counter)
    for x, y in enumerate(code.table):
        groups[x & cond_mask][y] += 1
    # H = log2 N' - (1/N') sum c log2 c per group, averaged over 2^|cond| groups
    per_group = N // (1 << popcount(cond_mask))
    total = ExactMI()
    for counter in groups.values():
        total = total + _entropy_sum(counter.values())
    return ExactMI.log2_of(per_group) - total.scale(Fraction(1, N))


def exact_conditional_mi(code: TruthTableCode, j: int, A: int) -> ExactMI:
    """``I(X_j; Y | X_A)``; ``j`` is 0-based and ``A`` a bitmask not containing it."""
    if A >> j & 1:
        raise ValueError("j must not lie in A")
    return _conditional_entropy(code, A) - _conditional_entropy(code, A | 1 << j)


def decodes(code: TruthTableCode, i: int, A: int) -> bool:
    """True iff ``(y, x_A)`` determines ``x_i``."""
    if A >> i & 1:
        raise ValueError("i must not lie in A")
    seen: dict[tuple[int, int], int] = {}
    for x, y in enumerate(code.table):
        key = (y, x & A)
        bit = x >> i & 1
        if seen.setdefault(key, bit) != bit:
            return False
    return True


def code_satisfies(p: Problem, code: TruthTableCode) -> bool:
    if code.n != p.n:
        raise ValueError("code and problem sizes differ")
    for i in range(p.n):
        if not decodes(code, i, p.side[i]):
            return False
        for j in bits(p.prohibited[i]):
            if not exact_conditional_mi(code, j, p.side[i]).is_zero():
                return False
    return True


@dataclass
class OracleResult:
    feasible: bool
    code: TruthTableCode | None
    r_max: int
    min_fibres: int | None  # fewest valid fibres covering all tuples, None if no cover exists

    @property
    def r(self) -> int | None:
        return self.code.r if self.code else None

    @property
    def verdict(self) -> str:
        return "feasible" if self.feasible else "no-code-found"


def _confusion(p: Problem) -> list[int]:
    N = 1 << p.n
    conf = [0] * N
    for x in range(N):
        m = 0
        for y in range(N):
            for i in range(p.n):
                A = p.side[i]
                if (x ^ y) & A == 0 and (x ^ y) >> i & 1:
                    m |= 1 << y
                    break
        conf[x] = m
    return conf


def _balance_masks(p: Problem) -> list[tuple[int, int]]:
    """Pairs (zeros, ones) of tuple sets that every fibre must meet equally."""
    N = 1 << p.n
    out = []
    for i in range(p.n):
        A = p.side[i]
        for j in bits(p.prohibited[i]):
            groups: dict[int, list[int]] = defaultdict(lambda: [0, 0])
            for x in range(N):
                groups[x & A][x >> j & 1] |= 1 << x
            out.extend((z, o) for z, o in groups.values())
    return out


def valid_fibres(p: Problem) -> list[int]:
    """Every nonempty set of tuples usable as one codeword's preimage."""
    N = 1 << p.n
    conf = _confusion(p)
    balance = _balance_masks(p)
    found = []

    def grow(F: int, allowed: int):
        # enumerate confusion-free supersets of F using tuples from ``allowed``
        if F and all(popcount(F & z) == popcount(F & o) for z, o in balance):
            found.append(F)
        while allowed:
            low = allowed & -allowed
            x = low.bit_length() - 1
            allowed &= ~low
            grow(F | low, allowed & ~conf[x])

    grow(0, (1 << N) - 1)
    return found


def exact_feasible(p: Problem, r_max: int) -> OracleResult:
    """Shortest code with ``t = 1`` and ``r <= r_max`` meeting every constraint."""
    if p.n > MAX_ORACLE_N:
        raise ValueError(f"exhaustive oracle limited to n <= {MAX_ORACLE_N}")
    if not 1 <= r_max <= p.n:
        raise ValueError("r_max must be in 1..n")
    N = 1 << p.n
    full = (1 << N) - 1
    by_low: dict[int, list[int]] = defaultdict(list)
    for F in valid_fibres(p):
        by_low[(F & -F).bit_length() - 1].append(F)
    for lst in by_low.values():
        lst.sort(key=lambda F: (-popcount(F), F))

    INF = N + 1

    @lru_cache(maxsize=None)
    def need(covered: int) -> int:
        if covered == full:
            return 0
        rest = full & ~covered
        x = (rest & -rest).bit_length() - 1
        best = INF
        for F in by_low.get(x, ()):
            if F & covered:
                continue
            best = min(best, 1 + need(covered | F))
            if best == 1:
                break
        return best

    k = need(0)
    min_fibres = k if k < INF else None
    need_r = None if min_fibres is None else max(1, (min_fibres - 1).bit_length())
    if need_r is None or need_r > r_max:
        need.cache_clear()
        return OracleResult(False, None, r_max, min_fibres)
    # rebuild one optimal cover, following the same candidate order
    table = [0] * N
    covered, word = 0, 0
    while covered != full:
        rest = full & ~covered
        x = (rest & -rest).bit_length() - 1
        F = next(F for F in by_low[x] if not F & covered and 1 + need(covered | F) == need(covered))
        for y in bits(F):
            table[y] = word
        covered |= F
        word += 1
    need.cache_clear()
    code = TruthTableCode(p.n, need_r, tuple(table))
    return OracleResult(True, code, r_max, min_fibres)
