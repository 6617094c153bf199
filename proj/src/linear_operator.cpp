#include "fredproj/linear_operator.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "fredproj/errors.hpp"

namespace fredproj {

LinearOperator LinearOperator::identity(SpacePtr space) {
  const Eigen::Index n = space->dim();
  return {std::move(space), Eigen::MatrixXd::Identity(n, n)};
}

LinearOperator LinearOperator::zero(SpacePtr space) {
  const Eigen::Index n = space->dim();
  return {std::move(space), Eigen::MatrixXd::Zero(n, n)};
}

namespace {

void require_square(const LinearOperator& A) {
  if (A.matrix.rows() != A.space->dim() || A.matrix.cols() != A.space->dim())
    throw DimensionError("LinearOperator: matrix shape does not match space");
}

// Similarity transform D^{1/2} M D^{-1/2} whose Euclidean singular values
// are the weighted-norm singular values of M.
Eigen::MatrixXd weighted_similarity(const LinearOperator& A) {
  const Eigen::ArrayXd ws = A.space->weights().array().sqrt();
  Eigen::MatrixXd B = A.matrix;
  for (Eigen::Index i = 0; i < B.rows(); ++i) B.row(i) *= ws(i);
  for (Eigen::Index j = 0; j < B.cols(); ++j) B.col(j) /= ws(j);
  return B;
}

}  // namespace

NormEstimate operator_norm(const LinearOperator& A, const NormConfig& cfg) {
  require_square(A);
  const Eigen::MatrixXd B = weighted_similarity(A);
  const Eigen::Index n = B.rows();

  if (n <= cfg.svd_cutoff) {
    NormEstimate est;
    est.method = NormMethod::ExactSvd;
    if (n <= 32) {
      est.value = Eigen::JacobiSVD<Eigen::MatrixXd>(B).singularValues()(0);
    } else {
      est.value = Eigen::BDCSVD<Eigen::MatrixXd>(B).singularValues()(0);
    }
    return est;
  }

  // Power iteration on B^T B; deterministic start vector.
  NormEstimate est;
  est.method = NormMethod::PowerIteration;
  est.tolerance = cfg.tol;
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) += 1e-3 * static_cast<double>(i) / static_cast<double>(n);
  v.normalize();
  double sigma = 0.0;
  bool converged = false;
  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    Eigen::VectorXd w = B.transpose() * (B * v);
    const double lambda = w.norm();
    if (lambda == 0.0) {
      sigma = 0.0;
      converged = true;
      break;
    }
    v = w / lambda;
    const double next = std::sqrt(lambda);
    if (it > 0 && std::abs(next - sigma) <= cfg.tol * std::max(1.0, next)) {
      sigma = next;
      converged = true;
      ++it;
      break;
    }
    sigma = next;
  }
  est.value = sigma;
  est.iterations = it;
  est.converged = converged;
  return est;
}

Eigen::VectorXd apply(const LinearOperator& A, const Eigen::VectorXd& x) {
  require_square(A);
  if (x.size() != A.space->dim())
    throw DimensionError("apply: vector length does not match operator dim");
  return A.matrix * x;
}

SpaceVector apply(const LinearOperator& A, const SpaceVector& x) {
  return {x.space, apply(A, x.values)};
}

LinearOperator compose(const LinearOperator& A, const LinearOperator& B) {
  require_square(A);
  require_square(B);
  if (A.space->dim() != B.space->dim())
    throw DimensionError("compose: operators act on different dims");
  return {A.space, A.matrix * B.matrix};
}

LinearOperator add(const LinearOperator& A, const LinearOperator& B) {
  require_square(A);
  require_square(B);
  if (A.space->dim() != B.space->dim())
    throw DimensionError("add: operators act on different dims");
  return {A.space, A.matrix + B.matrix};
}

LinearOperator scale(const LinearOperator& A, double s) {
  require_square(A);
  return {A.space, s * A.matrix};
}

}  // namespace fredproj
