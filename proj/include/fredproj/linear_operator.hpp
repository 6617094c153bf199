#pragma once

#include <Eigen/Core>

#include "fredproj/space.hpp"

namespace fredproj {

/// Dense operator on a Space. matrix(i, j) maps input component j to output
/// component i.
struct LinearOperator {
  SpacePtr space;
  Eigen::MatrixXd matrix;

  static LinearOperator identity(SpacePtr space);
  static LinearOperator zero(SpacePtr space);
};

enum class NormMethod { ExactSvd, PowerIteration };

struct NormEstimate {
  double value = 0.0;
  NormMethod method = NormMethod::ExactSvd;
  int iterations = 0;
  double tolerance = 0.0;
  // Power-iteration estimates that hit max_iters come back flagged rather
  // than thrown away.
  bool converged = true;
};

struct NormConfig {
  Eigen::Index svd_cutoff = 512;
  double tol = 1e-10;
  int max_iters = 10000;
};

/// Operator norm induced by the weighted inner product: the largest singular
/// value of D^{1/2} M D^{-1/2}, D = diag(weights). Exact SVD when
/// dim <= cfg.svd_cutoff, else power iteration on the normal operator.
NormEstimate operator_norm(const LinearOperator& A, const NormConfig& cfg = {});

Eigen::VectorXd apply(const LinearOperator& A, const Eigen::VectorXd& x);
SpaceVector apply(const LinearOperator& A, const SpaceVector& x);

/// compose(A, B) acts as x -> A(B(x)).
LinearOperator compose(const LinearOperator& A, const LinearOperator& B);
LinearOperator add(const LinearOperator& A, const LinearOperator& B);
LinearOperator scale(const LinearOperator& A, double s);

}  // namespace fredproj
