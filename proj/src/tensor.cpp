#include "fredproj/tensor.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "fredproj/errors.hpp"

namespace fredproj {

ProductSpacePtr ProductSpace::build(SpacePtr h1, SpacePtr h2) {
  const Eigen::Index d1 = h1->dim();
  const Eigen::Index d2 = h2->dim();
  Eigen::VectorXd w(d1 * d2);
  for (Eigen::Index i = 0; i < d1; ++i)
    for (Eigen::Index j = 0; j < d2; ++j)
      w(i * d2 + j) = h1->weights()(i) * h2->weights()(j);
  auto flat = Space::weighted(std::move(w));
  return std::make_shared<const ProductSpace>(std::move(h1), std::move(h2),
                                              std::move(flat));
}

Eigen::VectorXd flatten(const ProductVector& x) {
  const Eigen::Index d1 = x.pspace->h1()->dim();
  const Eigen::Index d2 = x.pspace->h2()->dim();
  Eigen::VectorXd v(d1 * d2);
  for (Eigen::Index i = 0; i < d1; ++i)
    for (Eigen::Index j = 0; j < d2; ++j) v(i * d2 + j) = x.values(i, j);
  return v;
}

ProductVector unflatten(ProductSpacePtr pspace, const Eigen::VectorXd& v) {
  const Eigen::Index d1 = pspace->h1()->dim();
  const Eigen::Index d2 = pspace->h2()->dim();
  if (v.size() != d1 * d2)
    throw DimensionError("unflatten: length does not match product space");
  Eigen::MatrixXd m(d1, d2);
  for (Eigen::Index i = 0; i < d1; ++i)
    for (Eigen::Index j = 0; j < d2; ++j) m(i, j) = v(i * d2 + j);
  return {std::move(pspace), std::move(m)};
}

ProductVector outer(ProductSpacePtr pspace, const Eigen::VectorXd& a,
                    const Eigen::VectorXd& b) {
  if (a.size() != pspace->h1()->dim() || b.size() != pspace->h2()->dim())
    throw DimensionError("outer: factor lengths do not match product space");
  return {std::move(pspace), a * b.transpose()};
}

Eigen::VectorXd partial_inner(const ProductVector& x,
                              const Eigen::VectorXd& y) {
  const auto& h2 = *x.pspace->h2();
  if (y.size() != h2.dim())
    throw DimensionError("partial_inner: y does not live in H2");
  // u_i = sum_j w2_j X_ij y_j
  return x.values * (h2.weights().array() * y.array()).matrix();
}

ConstraintSetPtr lift_constraints(const LiftedConstraints& lc) {
  const auto& ps = *lc.pspace;
  const Eigen::Index d1 = ps.h1()->dim();
  const Eigen::Index d2 = ps.h2()->dim();
  const Eigen::Index m = lc.ys.cols();
  const Eigen::Index J = lc.truncation;
  if (J < 1 || J > d1)
    throw DimensionError("lift_constraints: truncation J must be in [1, dim1]");
  if (lc.ys.rows() != d2)
    throw DimensionError("lift_constraints: ys do not live in H2");
  if (J * m > d1 * d2)
    throw DimensionError("lift_constraints: J * m exceeds the total dimension");
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = inner(*ps.h2(), lc.ys.col(i), lc.ys.col(j));
      if (std::abs(v - (i == j ? 1.0 : 0.0)) > 1e-10)
        throw AdmissibilityError("lift_constraints: ys are not orthonormal");
    }

  // psi_j is the weight-normalized coordinate vector e_j / sqrt(w1_j), so
  // psi_j (x) y_i occupies block row j of the flattened vector.
  std::vector<Eigen::VectorXd> lifted;
  lifted.reserve(static_cast<std::size_t>(J * m));
  for (Eigen::Index j = 0; j < J; ++j) {
    const double s = 1.0 / std::sqrt(ps.h1()->weights()(j));
    for (Eigen::Index i = 0; i < m; ++i) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(d1 * d2);
      v.segment(j * d2, d2) = s * lc.ys.col(i);
      lifted.push_back(std::move(v));
    }
  }
  return ConstraintSet::build(ps.space(), lifted);
}

Eigen::MatrixXd lift_k_vectors(const ProductSpace& pspace,
                               const Eigen::MatrixXd& ks, Eigen::Index J) {
  const Eigen::Index d1 = pspace.h1()->dim();
  const Eigen::Index d2 = pspace.h2()->dim();
  const Eigen::Index m = ks.cols();
  if (ks.rows() != d2)
    throw DimensionError("lift_k_vectors: ks do not live in H2");
  if (J < 1 || J > d1)
    throw DimensionError("lift_k_vectors: truncation J must be in [1, dim1]");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d1 * d2, J * m);
  for (Eigen::Index j = 0; j < J; ++j) {
    const double s = 1.0 / std::sqrt(pspace.h1()->weights()(j));
    for (Eigen::Index i = 0; i < m; ++i)
      out.col(j * m + i).segment(j * d2, d2) = s * ks.col(i);
  }
  return out;
}

ProductVector expanded_projection(const ProductVector& x,
                                  const Eigen::MatrixXd& ys,
                                  const Eigen::MatrixXd& ks) {
  const auto& h2 = *x.pspace->h2();
  const Eigen::Index m = ys.cols();
  if (ks.cols() != m || ks.rows() != h2.dim() || ys.rows() != h2.dim())
    throw DimensionError("expanded_projection: ys/ks shapes do not match H2");
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      const double v = inner(h2, ks.col(i), ys.col(j));
      if (std::abs(v - (i == j ? 1.0 : 0.0)) > 1e-10)
        throw AdmissibilityError(
            "expanded_projection: <k_i, y_j>_2 = delta_ij violated at (" +
            std::to_string(i) + ", " + std::to_string(j) + ")");
    }
  ProductVector out = x;
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::VectorXd u = partial_inner(x, ys.col(i));
    out.values -= u * ks.col(i).transpose();
  }
  return out;
}

}  // namespace fredproj
