#include "fredproj/projection.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "fredproj/errors.hpp"

namespace fredproj {

namespace {

constexpr double kBiorthTol = 1e-10;
constexpr double kGramTol = 1e-12;

// diag(w) * M, the left factor appearing in every weighted adjoint below.
Eigen::MatrixXd weight_rows(const Space& space, const Eigen::MatrixXd& M) {
  Eigen::MatrixXd out = M;
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    out.row(i) *= space.weights()(i);
  return out;
}

}  // namespace

ConstraintSetPtr ConstraintSet::build(SpacePtr space,
                                      const std::vector<Eigen::VectorXd>& raw_ys,
                                      double tol) {
  if (raw_ys.empty()) return none(std::move(space));
  const Eigen::Index n = space->dim();
  if (static_cast<Eigen::Index>(raw_ys.size()) > n)
    throw DimensionError("ConstraintSet: more constraints than dimensions");

  const auto ortho = gram_schmidt(*space, raw_ys, tol);
  const Eigen::Index m = static_cast<Eigen::Index>(ortho.size());
  Eigen::MatrixXd Y(n, m);
  for (Eigen::Index j = 0; j < m; ++j) Y.col(j) = ortho[j];

  // Complete the basis in W-coordinates, where the weighted inner product
  // becomes Euclidean: columns m..n-1 of the full Q factor of W^{1/2} Y span
  // the orthogonal complement.
  const Eigen::ArrayXd ws = space->weights().array().sqrt();
  Eigen::MatrixXd Yt = Y;
  for (Eigen::Index i = 0; i < n; ++i) Yt.row(i) *= ws(i);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Yt);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd C(n, n - m);
  for (Eigen::Index j = 0; j < n - m; ++j)
    C.col(j) = Q.col(m + j).array() / ws;

  return std::make_shared<const ConstraintSet>(std::move(space), std::move(Y),
                                               std::move(C));
}

ConstraintSetPtr ConstraintSet::none(SpacePtr space) {
  const Eigen::Index n = space->dim();
  return std::make_shared<const ConstraintSet>(
      std::move(space), Eigen::MatrixXd(n, 0), Eigen::MatrixXd(n, 0));
}

namespace {

void check_k(const KVectors& k) {
  const auto& cs = *k.constraints;
  const Eigen::Index m = cs.m();
  if (m == 0) return;
  // Linear independence first (via the weighted Gram determinant): a
  // dependent family is a DependentKError even when the constraint data
  // is itself degenerate enough to break biorthogonality too.
  const Eigen::MatrixXd G = k.ks.transpose() * weight_rows(*cs.space(), k.ks);
  const double det = G.determinant();
  if (!(det > kGramTol))
    throw DependentKError("k vectors are linearly dependent (Gram determinant " +
                          std::to_string(det) + ")");
  // <k_i, y_j> = delta_ij
  const Eigen::MatrixXd B =
      k.ks.transpose() * weight_rows(*cs.space(), cs.ys());
  const double biorth =
      (B - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  if (biorth > kBiorthTol)
    throw AdmissibilityError("k vectors violate <k_i, y_j> = delta_ij (max "
                             "deviation " + std::to_string(biorth) + ")");
}

}  // namespace

KVectors build_k(ConstraintSetPtr constraints, const Eigen::MatrixXd& coeffs) {
  const Eigen::Index n = constraints->space()->dim();
  const Eigen::Index m = constraints->m();
  if (coeffs.rows() != n - m || coeffs.cols() != m)
    throw DimensionError("build_k: coeffs must be (dim - m) x m");
  KVectors k;
  k.constraints = std::move(constraints);
  k.coeffs = coeffs;
  k.ks = k.constraints->ys() + k.constraints->complement() * coeffs;
  check_k(k);
  return k;
}

KVectors k_from_vectors(ConstraintSetPtr constraints,
                        const Eigen::MatrixXd& ks) {
  const Eigen::Index n = constraints->space()->dim();
  const Eigen::Index m = constraints->m();
  if (ks.rows() != n || ks.cols() != m)
    throw DimensionError("k_from_vectors: ks must be dim x m");
  KVectors k;
  k.constraints = std::move(constraints);
  k.ks = ks;
  // Admissible k always decompose as y_i + (complement part); recover the
  // free coefficients by weighted projection onto the complement basis.
  k.coeffs = k.constraints->complement().transpose() *
             weight_rows(*k.constraints->space(), ks);
  check_k(k);
  return k;
}

ProjectionPair build_projections(const KVectors& k) {
  const auto& cs = *k.constraints;
  const Eigen::Index n = cs.space()->dim();
  // Pt x = sum_i k_i <x, y_i>  =>  Pt = K (W Y)^T
  Eigen::MatrixXd Pt =
      k.ks * weight_rows(*cs.space(), cs.ys()).transpose();
  if (cs.m() == 0) Pt = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(n, n) - Pt;
  return {k, {cs.space(), std::move(P)}, {cs.space(), std::move(Pt)}};
}

LinearOperator complementary_projection(const ConstraintSet& constraints,
                                        const Eigen::MatrixXd& etas) {
  const Eigen::Index n = constraints.space()->dim();
  if (etas.rows() != n || etas.cols() != constraints.m())
    throw DimensionError("complementary_projection: etas must be dim x m");
  return {constraints.space(),
          etas * weight_rows(*constraints.space(), constraints.ys()).transpose()};
}

Eigen::VectorXd check_projected_constraints(const ProjectionPair& pair,
                                            const Eigen::VectorXd& x) {
  const auto& cs = *pair.k.constraints;
  const Eigen::VectorXd px = apply(pair.P, x);
  Eigen::VectorXd out(cs.m());
  for (Eigen::Index j = 0; j < cs.m(); ++j)
    out(j) = inner(*cs.space(), px, cs.ys().col(j));
  return out;
}

}  // namespace fredproj
