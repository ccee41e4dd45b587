"""Exact counting and construction of positive solutions of rank-2 integral equations."""

__version__ = "0.1.0"

from .analyzer import (  # noqa: E402
    AnalysisReport,
    SolutionCandidate,
    analyze,
    analyze_n1,
    classify_cubic,
    construct_solutions,
    count_negative_solutions,
    count_positive_solutions,
    verify_solution,
)
from .discrimination import (  # noqa: E402
    count_distinct_positive_roots,
    count_distinct_real_roots,
    cubic_invariants,
    discriminant_sequence,
    discrimination_matrix,
    revise_sign_list,
)
from .exactnum import ExactMatrix, Polynomial, parse_rational  # noqa: E402
from .kernel import (  # noqa: E402
    AlphaVector,
    KernelSpec,
    MomentTable,
    PiecewisePoly,
    assemble_alpha,
    compute_moments,
    numeric_moments,
)
from .rootfind import Interval, cauchy_bound, isolate_positive_roots, refine_root, sturm_count  # noqa: E402
