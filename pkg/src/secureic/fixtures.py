"""Named problem instances with their published or frozen reference values."""

from __future__ import annotations

from fractions import Fraction

from .problem import Problem


def _complement(n: int, i: int) -> list[int]:
    return [k for k in range(1, n + 1) if k != i]


TOY = Problem.from_lists([[], [3], [2]], [[2, 3], [], []])

EXAMPLE1 = Problem.from_lists(
    [
        _complement(9, 1),
        _complement(9, 2),
        [4, 5, 6, 8, 9],
        [5, 6, 7, 8],
        [3, 4, 7, 8, 9],
        [2, 3, 4, 5, 7, 9],
        _complement(9, 7),
        _complement(9, 8),
        _complement(9, 9),
    ],
    [[], [], [1, 2, 7], [1, 2, 3, 9], [1, 2, 6], [1, 8], [], [], []],
)

EXAMPLE2 = Problem.from_lists(
    [[2, 4, 5], [1, 5], [], [2], [1, 2]],
    [[], [4], [1, 2, 5], [1], []],
)

SINGLE = Problem.from_lists([[]], [[]])

# the clique assignment quoted for the 9-message instance
EXAMPLE1_CLIQUES = ([1, 2, 8], [2, 6, 7, 9], [3, 9], [4, 5])

# g-subsets of the 5-message instance, as listed in the worked example
# (the second family also contains the full set {1,2,4,5}, see N(3, {}))
EXAMPLE2_GSUBSETS = {
    "N1": [[3], [3, 4]],
    "N2": [[2, 4, 5], [1, 4, 5], [1, 2, 4], [1, 2, 4, 5]],
    "N3": [[1, 3], [1, 3, 4]],
    "N4": [[2, 3], [2, 3, 4]],
    "N5": [[1, 2, 3], [1, 2, 3, 4], [3, 5], [1, 3, 5], [2, 3, 5],
           [1, 2, 3, 5], [3, 4, 5], [1, 3, 4, 5], [2, 3, 4, 5], [1, 2, 3, 4, 5]],
}

PROBLEMS = {
    "example1": EXAMPLE1,
    "example2": EXAMPLE2,
    "example3": EXAMPLE1,
    "example4": EXAMPLE2,
    "toy": TOY,
}

# Reference values compared by ``secureic reproduce``.
EXPECTED = {
    "example1": {
        "sflpcc_rate": Fraction(1, 4),
        "beta_mais": 3,
        "beta_smais": 4,
        "csym": Fraction(1, 4),
    },
    "example2": {
        "gamma": 6,
        "gsubsets": EXAMPLE2_GSUBSETS,
        "remaining_size": 12,
        "theorem3": {"S": [1, 3, 4, 5], "S_prime": [1, 3, 5], "i": 4},
    },
    "example3": {
        "beta_mais": 3,
        "beta_smais": 4,
    },
    "example4": {
        "theorem5": {"class": EXAMPLE2_GSUBSETS["N5"], "rho": 4, "min_size": 2},
    },
    "toy": {
        "beta_smais": 2,
        "oracle_r": 2,
        "oracle_rate": Fraction(1, 2),
        "linear_code_passes": True,
    },
}
