"""Secure index coding problem instances.

A problem has ``n`` messages and ``n`` receivers.  Receiver ``i`` wants
message ``i``, knows the messages in ``A_i`` and must learn nothing about
each individual message in ``P_i``.

Subsets of messages are stored as integer bitmasks (bit ``k`` is message
``k + 1``).  Receivers are 0-indexed inside the package; 1-based indices
only appear in documents read by :func:`parse_problem` and written by
:func:`serialize_problem`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_MESSAGES = 20


class ProblemError(ValueError):
    """Invalid problem document or instance."""

    def __init__(self, message: str, receiver: int | None = None):
        if receiver is not None:
            message = f"receiver {receiver}: {message}"
        super().__init__(message)
        self.receiver = receiver


def bits(mask: int) -> list[int]:
    """0-based members of ``mask`` in ascending order."""
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def to_mask(members: Iterable[int], one_based: bool = True) -> int:
    off = 1 if one_based else 0
    mask = 0
    for m in members:
        mask |= 1 << (m - off)
    return mask


def members(mask: int) -> list[int]:
    """1-based members of ``mask``, ascending."""
    return [k + 1 for k in bits(mask)]


def fmt_set(mask: int) -> str:
    return "{" + ",".join(str(k) for k in members(mask)) + "}"


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Problem:
    """Validated instance; ``side[i]`` is A_i and ``prohibited[i]`` is P_i as bitmasks."""

    n: int
    side: tuple[int, ...]
    prohibited: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or not 1 <= self.n <= MAX_MESSAGES:
            raise ProblemError(f"n must be an integer in [1, {MAX_MESSAGES}], got {self.n!r}")
        if len(self.side) != self.n or len(self.prohibited) != self.n:
            raise ProblemError("A and P must each have exactly n entries")
        full = (1 << self.n) - 1
        for i in range(self.n):
            a, p = self.side[i], self.prohibited[i]
            if a & ~full or p & ~full:
                raise ProblemError("index out of range", receiver=i + 1)
            if a >> i & 1:
                raise ProblemError("receiver cannot have its own message as side information",
                                   receiver=i + 1)
            if p & ~self.interfering(i):
                raise ProblemError(f"P_{i + 1}={fmt_set(p)} is not contained in "
                                   f"B_{i + 1}={fmt_set(self.interfering(i))}", receiver=i + 1)

    @classmethod
    def from_lists(cls, side: Sequence[Iterable[int]], prohibited: Sequence[Iterable[int]]) -> "Problem":
        """Build from 1-based index lists, e.g. ``Problem.from_lists([[], [3], [2]], [[2, 3], [], []])``."""
        n = len(side)
        if len(prohibited) != n:
            raise ProblemError("A and P must have the same length")
        A, P = [], []
        for i in range(n):
            for name, seq, out in (("A", side[i], A), ("P", prohibited[i], P)):
                seq = list(seq)
                for k in seq:
                    if not isinstance(k, int) or isinstance(k, bool) or not 1 <= k <= n:
                        raise ProblemError(f"{name} index {k!r} out of range 1..{n}", receiver=i + 1)
                if len(set(seq)) != len(seq):
                    raise ProblemError(f"duplicate index in {name}", receiver=i + 1)
                out.append(to_mask(seq))
        return cls(n, tuple(A), tuple(P))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def interfering(self, i: int) -> int:
        """B_i: messages neither wanted nor known by receiver ``i``."""
        return self.full & ~(self.side[i] | 1 << i)

    @property
    def is_secure(self) -> bool:
        return any(self.prohibited)

    def without_security(self) -> "Problem":
        return Problem(self.n, self.side, (0,) * self.n)

    def as_lists(self) -> tuple[list[list[int]], list[list[int]]]:
        return [members(a) for a in self.side], [members(p) for p in self.prohibited]

    def __str__(self):
        A, P = self.as_lists()
        return f"Problem(n={self.n}, A={A}, P={P})"


def interfering_set(p: Problem, i: int) -> int:
    return p.interfering(i)


@dataclass(frozen=True)
class Subproblem:
    """The problem induced by a message subset ``S``; prohibited sets are dropped."""

    parent: Problem
    S: int

    def __post_init__(self):
        if self.S & ~self.parent.full:
            raise ProblemError("subset not contained in [n]")

    @property
    def receivers(self) -> list[int]:
        return bits(self.S)

    @property
    def side(self) -> dict[int, int]:
        return {i: self.parent.side[i] & self.S for i in bits(self.S)}

    def restrict(self, S: int) -> "Subproblem":
        if S & ~self.S:
            raise ProblemError("restriction must be to a subset")
        return Subproblem(self.parent, S)

    def __len__(self):
        return popcount(self.S)


def induced_subproblem(p: Problem, S: int) -> Subproblem:
    return Subproblem(p, S)


def problem_from_dict(doc) -> Problem:
    if not isinstance(doc, dict):
        raise ProblemError("document must be an object with keys n, A, P")
    missing = {"n", "A", "P"} - doc.keys()
    if missing:
        raise ProblemError(f"missing keys: {sorted(missing)}")
    n, A, P = doc["n"], doc["A"], doc["P"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ProblemError("n must be an integer")
    if not 1 <= n <= MAX_MESSAGES:
        raise ProblemError(f"n must be in [1, {MAX_MESSAGES}]")
    for name, arr in (("A", A), ("P", P)):
        if not isinstance(arr, list) or len(arr) != n:
            raise ProblemError(f"{name} must be a list of {n} index lists")
        for i, entry in enumerate(arr):
            if not isinstance(entry, list):
                raise ProblemError(f"{name} entry must be a list", receiver=i + 1)
    return Problem.from_lists(A, P)


def parse_problem(text: str) -> Problem:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemError(f"malformed document: {exc}") from None
    return problem_from_dict(doc)


def problem_to_dict(p: Problem) -> dict:
    A, P = p.as_lists()
    return {"n": p.n, "A": A, "P": P}


def serialize_problem(p: Problem) -> str:
    return json.dumps(problem_to_dict(p), separators=(",", ":"))
