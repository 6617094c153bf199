"""Constrained solver for Fredholm-like operator equations.

Solves A x + phi = x subject to <x, y_i> = 0 with an oblique
projection-like operator and a Neumann series, searches the admissible
k vectors for a vanishing solvability residual, estimates the open
region of k values around a solution, and ships numerical certification
checks for the supporting series identities.
"""

from fredproj._core import (
    AdmissibilityError,
    CheckReport,
    ConfigError,
    ConstraintSet,
    ContractionError,
    CorpusProblem,
    DependentConstraintError,
    DependentKError,
    DimensionError,
    KernelEvalError,
    KernelSpec,
    KVectors,
    NormEstimate,
    Problem,
    ProjectionPair,
    Quadrature,
    RegionEstimate,
    SeriesNotConvergedError,
    SingularSystemError,
    SolveReport,
    Space,
    UnsummableFamilyError,
    build_constraints,
    build_k,
    build_projections,
    check_projected_constraints,
    corpus,
    corpus_names,
    direct_solve_oracle,
    gauss_legendre,
    gram_schmidt,
    inner,
    k_from_vectors,
    lemma_names,
    load_problem_config,
    make_problem,
    neumann_solve,
    nystrom,
    operator_norm,
    region_radius,
    residual,
    run_lemma_trial,
    sigma,
    sigma_index,
    solve,
    trapezoid,
)

__all__ = [
    "AdmissibilityError",
    "CheckReport",
    "ConfigError",
    "ConstraintSet",
    "ContractionError",
    "CorpusProblem",
    "DependentConstraintError",
    "DependentKError",
    "DimensionError",
    "KernelEvalError",
    "KernelSpec",
    "KVectors",
    "NormEstimate",
    "Problem",
    "ProjectionPair",
    "Quadrature",
    "RegionEstimate",
    "SeriesNotConvergedError",
    "SingularSystemError",
    "SolveReport",
    "Space",
    "UnsummableFamilyError",
    "build_constraints",
    "build_k",
    "build_projections",
    "check_projected_constraints",
    "corpus",
    "corpus_names",
    "direct_solve_oracle",
    "gauss_legendre",
    "gram_schmidt",
    "inner",
    "k_from_vectors",
    "lemma_names",
    "load_problem_config",
    "make_problem",
    "neumann_solve",
    "nystrom",
    "operator_norm",
    "region_radius",
    "residual",
    "run_lemma_trial",
    "sigma",
    "sigma_index",
    "solve",
    "trapezoid",
]
