#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "fredproj/linear_operator.hpp"
#include "fredproj/projection.hpp"
#include "fredproj/space.hpp"

namespace fredproj {

enum class SearchMode { Newton, NelderMead, None };

std::string to_string(SearchMode mode);
SearchMode search_mode_from_string(const std::string& s);

struct SolverSettings {
  double neumann_tol = 1e-10;   // series tail bound
  int neumann_max_terms = 10000;
  double residual_tol = 1e-9;
  SearchMode search = SearchMode::Newton;
  int search_max_iters = 500;
  double fd_step = 1e-6;        // h = fd_step * (1 + |c|)
  bool direct_solve = false;    // dense solve of (I - A P) x = phi instead of the series
};

/// The constrained problem: A x + phi = x subject to <x, y_i> = 0.
struct Problem {
  SpacePtr space;
  LinearOperator A;
  Eigen::VectorXd phi;
  ConstraintSetPtr constraints;
  SolverSettings settings;
};

enum class SolveStatus { Solved, ResidualNonzero, NormGeOne, SearchFailed };

std::string to_string(SolveStatus status);
int exit_code_for(SolveStatus status);

struct SolveReport {
  SolveStatus status = SolveStatus::SearchFailed;
  Eigen::VectorXd x;
  KVectors k;
  NormEstimate norm_APk;
  Eigen::VectorXd residual;          // <B_k phi, y_i>, one per constraint
  double equation_residual = 0.0;    // |A x + phi - x|
  double constraint_residual = 0.0;  // max_i |<x, y_i>|
  int neumann_terms = 0;
  int search_iters = 0;
  double region_radius = 0.0;        // epsilon of the solution disk; +inf when unbounded, NaN when unavailable
  std::vector<double> residual_history;  // |g| at the start point and after each accepted step
};

/// Open-region radius around an admissible k (everything inside still solves).
struct RegionEstimate {
  double norm_APk = 0.0;
  double sup_APt_eta = 0.0;
  double epsilon = 0.0;   // (1 - norm_APk) / sup_APt_eta; +inf when unbounded
  bool exact = false;     // the sup is exact only for m = 1
  bool unbounded = false; // A vanishes on the constraint complement
};

/// Solution of (I - A P) x = phi by Neumann summation (geometric tail
/// stopping) or, when s.direct_solve is set, by dense solve. Returns the
/// solution and the number of series terms accumulated (0 for the dense
/// path). Throws ContractionError when |A P| >= 1 and SeriesNotConverged
/// when the term cap is hit first.
std::pair<Eigen::VectorXd, int> neumann_solve(const LinearOperator& A,
                                              const LinearOperator& P,
                                              const Eigen::VectorXd& phi,
                                              const SolverSettings& s);

/// Independent dense-LU oracle for (I - A P) x = phi. Throws
/// SingularSystemError when the system is numerically singular.
Eigen::VectorXd direct_solve_oracle(const LinearOperator& A,
                                    const LinearOperator& P,
                                    const Eigen::VectorXd& phi);

/// The m solvability scalars g_i(k) = <B_k phi, y_i>. All zero (within
/// residual_tol) means the series solution satisfies the constraints.
Eigen::VectorXd residual(const Problem& problem, const KVectors& k);

/// Root search over the free coefficients of k driving residual() to zero;
/// see SolverSettings for the search configuration. Every failure is a
/// status, never an exception.
SolveReport solve_constrained(const Problem& problem, const KVectors& k0);

/// Convenience: solve with k_i = y_i (zero free coefficients).
SolveReport solve_constrained(const Problem& problem);

RegionEstimate region_radius(const Problem& problem, const KVectors& k);

}  // namespace fredproj
