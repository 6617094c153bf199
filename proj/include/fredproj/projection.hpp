#pragma once

#include <Eigen/Core>
#include <memory>

#include "fredproj/linear_operator.hpp"
#include "fredproj/space.hpp"

namespace fredproj {

/// Orthonormalized constraint vectors y_i plus an orthonormal basis of their
/// orthogonal complement. The complement basis parameterizes the admissible
/// k vectors. m = 0 is allowed and means "no constraints".
class ConstraintSet {
 public:
  /// Orthonormalizes raw_ys (modified Gram-Schmidt) and completes the basis.
  static std::shared_ptr<const ConstraintSet> build(
      SpacePtr space, const std::vector<Eigen::VectorXd>& raw_ys,
      double tol = 1e-10);

  /// Empty constraint set (unconstrained problems).
  static std::shared_ptr<const ConstraintSet> none(SpacePtr space);

  const SpacePtr& space() const { return space_; }
  Eigen::Index m() const { return ys_.cols(); }
  /// dim x m, columns orthonormal under the weighted inner product.
  const Eigen::MatrixXd& ys() const { return ys_; }
  /// dim x (dim - m), orthonormal, orthogonal to every y_i.
  const Eigen::MatrixXd& complement() const { return complement_; }

  ConstraintSet(SpacePtr space, Eigen::MatrixXd ys, Eigen::MatrixXd complement)
      : space_(std::move(space)), ys_(std::move(ys)),
        complement_(std::move(complement)) {}

 private:
  SpacePtr space_;
  Eigen::MatrixXd ys_;
  Eigen::MatrixXd complement_;
};

using ConstraintSetPtr = std::shared_ptr<const ConstraintSet>;

/// Admissible free vectors k_i = y_i + sum_a coeffs(a, i) * complement_a.
/// Biorthogonality <k_i, y_j> = delta_ij holds by construction and is
/// checked; linear independence is certified by the Gram determinant.
struct KVectors {
  ConstraintSetPtr constraints;
  Eigen::MatrixXd coeffs;  // (dim - m) x m
  Eigen::MatrixXd ks;      // dim x m, column i is k_i
};

/// Builds KVectors from free coefficients. Throws DimensionError on a bad
/// coeffs shape, DependentKError if the resulting k_i are dependent
/// (Gram determinant <= 1e-12).
KVectors build_k(ConstraintSetPtr constraints, const Eigen::MatrixXd& coeffs);

/// Builds KVectors from explicit k columns, recovering the free coefficients.
/// Throws AdmissibilityError if biorthogonality fails (tolerance 1e-10).
KVectors k_from_vectors(ConstraintSetPtr constraints, const Eigen::MatrixXd& ks);

/// P x = x - sum_i k_i <x, y_i>  and  Pt = I - P.
struct ProjectionPair {
  KVectors k;
  LinearOperator P;
  LinearOperator Pt;
};

ProjectionPair build_projections(const KVectors& k);

/// The complementary projection for a standalone vector family (used for the
/// perturbation directions eta): x -> sum_i etas_i <x, y_i>.
LinearOperator complementary_projection(const ConstraintSet& constraints,
                                        const Eigen::MatrixXd& etas);

/// The m values <P x, y_j>; all are <= 1e-10 in magnitude for any x.
Eigen::VectorXd check_projected_constraints(const ProjectionPair& pair,
                                            const Eigen::VectorXd& x);

}  // namespace fredproj
