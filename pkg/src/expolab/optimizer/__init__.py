from .maximin import (BranchSelection, Certificate, NoFeasibleBranch, OptimizeResult,
                      branch_space_size, certify, enumerate_branches, lower_branch,
                      maximin_optimize)
from .simplex import LPInstance, LPResult, simplex_solve

__all__ = [
    "BranchSelection", "Certificate", "LPInstance", "LPResult", "NoFeasibleBranch",
    "OptimizeResult", "branch_space_size", "certify", "enumerate_branches",
    "lower_branch", "maximin_optimize", "simplex_solve",
]
