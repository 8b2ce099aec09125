"""Arithmetic in GF(2^m) and dense matrices over it."""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

# primitive polynomials, bit k is the coefficient of x^k
PRIMITIVE_POLY = {
    1: 0x3, 2: 0x7, 3: 0xB, 4: 0x13, 5: 0x25, 6: 0x43, 7: 0x89, 8: 0x11D,
    9: 0x211, 10: 0x409, 11: 0x805, 12: 0x1053, 13: 0x201B, 14: 0x4443,
    15: 0x8003, 16: 0x1100B,
}


class FieldTooSmall(ValueError):
    pass


class FiniteField:
    """GF(2^m) for 1 <= m <= 16 with log/antilog tables.

    Elements are ints in ``[0, q)``; addition is XOR.
    """

    def __init__(self, m: int, modulus: int | None = None):
        if not 1 <= m <= 16:
            raise ValueError("field exponent must be in 1..16")
        self.m = m
        self.q = 1 << m
        self.modulus = modulus if modulus is not None else PRIMITIVE_POLY[m]
        if self.modulus >> m != 1:
            raise ValueError("modulus degree must equal m")
        order = self.q - 1
        exp = [0] * (2 * order)
        log = [0] * self.q
        x = 1
        for i in range(order):
            if i and x == 1:
                raise ValueError(f"modulus {self.modulus:#x} is not primitive")
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & self.q:
                x ^= self.modulus
        if x != 1:
            raise ValueError(f"modulus {self.modulus:#x} is not primitive")
        for i in range(order, 2 * order):
            exp[i] = exp[i - order]
        self._exp = exp
        self._log = log

    def __repr__(self):
        return f"GF(2^{self.m})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.m, self.modulus) == (other.m, other.modulus)

    def __hash__(self):
        return hash((self.m, self.modulus))

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e else 1
        return self._exp[(self._log[a] * e) % (self.q - 1)]


@lru_cache(maxsize=None)
def gf(m: int) -> FiniteField:
    return FiniteField(m)


class GFMatrix:
    """Dense ``rows x cols`` matrix over a :class:`FiniteField`."""

    def __init__(self, field: FiniteField, data: Sequence[Sequence[int]], cols: int | None = None):
        self.field = field
        self.data = [list(r) for r in data]
        self.cols = cols if cols is not None else (len(self.data[0]) if self.data else 0)
        for r in self.data:
            if len(r) != self.cols:
                raise ValueError("ragged matrix")
            for v in r:
                if not 0 <= v < field.q:
                    raise ValueError(f"entry {v} outside {field}")

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, [[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, field, size):
        return cls(field, [[int(i == j) for j in range(size)] for i in range(size)], size)

    @property
    def rows(self) -> int:
        return len(self.data)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        return isinstance(other, GFMatrix) and self.field == other.field and self.shape == other.shape \
            and self.data == other.data

    def __repr__(self):
        return f"GFMatrix({self.field}, {self.data})"

    def __matmul__(self, other: "GFMatrix") -> "GFMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        F = self.field
        out = [[0] * other.cols for _ in range(self.rows)]
        for i, row in enumerate(self.data):
            acc = out[i]
            for k, a in enumerate(row):
                if not a:
                    continue
                for j, b in enumerate(other.data[k]):
                    if b:
                        acc[j] ^= F.mul(a, b)
        return GFMatrix(F, out, other.cols)

    def columns(self, idx: Sequence[int]) -> "GFMatrix":
        return GFMatrix(self.field, [[r[j] for j in idx] for r in self.data], len(idx))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "GFMatrix":
        return GFMatrix(self.field, [[self.data[i][j] for j in cols] for i in rows], len(cols))

    def transpose(self) -> "GFMatrix":
        return GFMatrix(self.field, [list(c) for c in zip(*self.data)] if self.rows else [], self.rows)

    def rank(self) -> int:
        return rank(self.field, self.data)

    def hstack(self, other: "GFMatrix") -> "GFMatrix":
        return GFMatrix(self.field, [a + b for a, b in zip(self.data, other.data)], self.cols + other.cols)


def rank(F: FiniteField, rows: Sequence[Sequence[int]]) -> int:
    """Rank by Gaussian elimination; the input is not modified."""
    if F.m == 1:
        return _rank_gf2(rows)
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return 0
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = F.inv(mat[r][c])
        prow = [F.mul(inv, v) for v in mat[r]]
        mat[r] = prow
        for i in range(r + 1, len(mat)):
            f = mat[i][c]
            if f:
                row = mat[i]
                for j in range(c, ncols):
                    if prow[j]:
                        row[j] ^= F.mul(f, prow[j])
        r += 1
        if r == len(mat):
            break
    return r


def _rank_gf2(rows) -> int:
    basis: dict[int, int] = {}
    for row in rows:
        v = 0
        for j, b in enumerate(row):
            if b:
                v |= 1 << j
        while v:
            top = v.bit_length() - 1
            if top in basis:
                v ^= basis[top]
            else:
                basis[top] = v
                break
    return len(basis)


def cauchy(F: FiniteField, xs: Sequence[int], ys: Sequence[int]) -> GFMatrix:
    """``C[i][j] = 1 / (x_i + y_j)``; every square submatrix is nonsingular."""
    if len(set(xs) | set(ys)) != len(xs) + len(ys):
        raise ValueError("Cauchy points must be pairwise distinct")
    return GFMatrix(F, [[F.inv(x ^ y) for y in ys] for x in xs], len(ys))


def cauchy_superregular(r: int, k: int, F: FiniteField, points: Sequence[int] | None = None) -> GFMatrix:
    """``r x k`` superregular matrix, normalised so its first row and column are all ones.

    ``points`` (r + k distinct field elements) defaults to ``0..r+k-1``.
    """
    if r < 1 or k < 1:
        raise ValueError("dimensions must be positive")
    if r + k > F.q:
        raise FieldTooSmall(f"{r}x{k} Cauchy matrix needs {r + k} distinct elements, {F} has {F.q}")
    pts = list(points) if points is not None else list(range(r + k))
    C = cauchy(F, pts[:r], pts[r:r + k])
    # row/column scaling keeps every minor nonzero
    rs = [F.inv(C.data[i][0]) for i in range(r)]
    data = [[F.mul(rs[i], v) for v in C.data[i]] for i in range(r)]
    cs = [F.inv(data[0][j]) for j in range(k)]
    data = [[F.mul(cs[j], row[j]) for j in range(k)] for row in data]
    return GFMatrix(F, data, k)
