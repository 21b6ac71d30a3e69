"""Graded invariants of projective hypersurfaces with isolated singularities.

The package computes Hilbert functions of Jacobian (Milnor) algebras by exact
multi-prime linear algebra, derives coincidence and stability thresholds,
defects of node sets, Alexander polynomials and Betti numbers of nodal
hypersurfaces, builds the Chebyshev hypersurface family, and cross-checks
everything against an independent node-evaluation oracle over cyclotomic
fields.

The one-call entry point is :func:`analyze`; the submodules expose each stage
of the pipeline separately.
"""

from __future__ import annotations

from .cache import HilbertCache, cached_hilbert_function, default_cache_dir
from .chebyshev import (
    ChebyshevSpec,
    ConjectureVerdict,
    canonical_spec,
    cc_node_count,
    critical_tuples,
    node_count_formula,
    st_formula,
    verify_conjectures,
)
from .hilbert import (
    HilbertFunction,
    NotNodalError,
    ThresholdReport,
    hilbert_function,
    koszul_hn_dim,
    smooth_hilbert,
    thresholds,
)
from .linalg import (
    RankConfig,
    RankResult,
    StrandMatrix,
    certified_rank,
    jacobian_strand_matrix,
    rank_exact,
)
from .monomials import Monomial, monomial_index, monomials_of_degree, num_monomials
from .nodes import (
    OracleConfig,
    defect_direct,
    enumerate_nodes,
    evaluation_matrix,
    injectivity_threshold,
)
from .poly import (
    PolynomialParseError,
    SparsePolynomial,
    chebyshev_poly,
    dehomogenize,
    format_polynomial,
    homogenize,
    parse_polynomial,
    partial_derivatives,
)
from .report import HypersurfaceReport, ReportLintError, RunConfig, analyze
from .topology import (
    AlexanderPolynomial,
    BettiNumbers,
    DefectTable,
    TheoremCheck,
    alexander_polynomial,
    betti_numbers,
    check_theorem_bounds,
    defect_table,
)

__version__ = "0.1.0"

__all__ = [
    "AlexanderPolynomial",
    "BettiNumbers",
    "ChebyshevSpec",
    "ConjectureVerdict",
    "DefectTable",
    "HilbertCache",
    "HilbertFunction",
    "HypersurfaceReport",
    "Monomial",
    "NotNodalError",
    "OracleConfig",
    "PolynomialParseError",
    "RankConfig",
    "RankResult",
    "ReportLintError",
    "RunConfig",
    "SparsePolynomial",
    "StrandMatrix",
    "TheoremCheck",
    "ThresholdReport",
    "alexander_polynomial",
    "analyze",
    "betti_numbers",
    "cached_hilbert_function",
    "canonical_spec",
    "cc_node_count",
    "certified_rank",
    "chebyshev_poly",
    "check_theorem_bounds",
    "critical_tuples",
    "default_cache_dir",
    "defect_direct",
    "defect_table",
    "dehomogenize",
    "enumerate_nodes",
    "evaluation_matrix",
    "format_polynomial",
    "hilbert_function",
    "homogenize",
    "injectivity_threshold",
    "jacobian_strand_matrix",
    "koszul_hn_dim",
    "monomial_index",
    "monomials_of_degree",
    "num_monomials",
    "parse_polynomial",
    "partial_derivatives",
    "rank_exact",
    "smooth_hilbert",
    "st_formula",
    "thresholds",
    "verify_conjectures",
    "__version__",
]
