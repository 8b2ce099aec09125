"""Secure index coding: bounds, feasibility tests and linear code construction."""

from .bounds import analyze_bounds, check_theorem3, check_theorem5, mais_bound, smais
from .codes import CodeSpec, assemble_sflpcc_code, search_secure_assembly, verify_linear_code
from .gpartition import GPartition, build_g_partition, g_partition
from .graph import kappa, mais
from .problem import Problem, ProblemError, parse_problem, serialize_problem
from .rates import flpcc_symmetric, polymatroidal_outer_symmetric, sflpcc_symmetric

__version__ = "0.1.0"

__all__ = [
    "Problem", "ProblemError", "parse_problem", "serialize_problem",
    "GPartition", "build_g_partition", "g_partition", "kappa", "mais",
    "analyze_bounds", "check_theorem3", "check_theorem5", "mais_bound", "smais",
    "flpcc_symmetric", "sflpcc_symmetric", "polymatroidal_outer_symmetric",
    "CodeSpec", "assemble_sflpcc_code", "search_secure_assembly", "verify_linear_code",
]
