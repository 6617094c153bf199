#pragma once

#include <Eigen/Core>
#include <memory>

#include "fredproj/projection.hpp"
#include "fredproj/space.hpp"

namespace fredproj {

/// H1 (x) H2 with the row-major pairing (i, j) -> i * dim2 + j and weights
/// given by the outer product of the factor weights, which makes flattening
/// a linear isometry.
class ProductSpace {
 public:
  static std::shared_ptr<const ProductSpace> build(SpacePtr h1, SpacePtr h2);

  const SpacePtr& h1() const { return h1_; }
  const SpacePtr& h2() const { return h2_; }
  /// The flattened space of dimension dim1 * dim2.
  const SpacePtr& space() const { return space_; }

  ProductSpace(SpacePtr h1, SpacePtr h2, SpacePtr space)
      : h1_(std::move(h1)), h2_(std::move(h2)), space_(std::move(space)) {}

 private:
  SpacePtr h1_;
  SpacePtr h2_;
  SpacePtr space_;
};

using ProductSpacePtr = std::shared_ptr<const ProductSpace>;

/// Element of H1 (x) H2 stored as a dim1 x dim2 matrix of coefficients.
struct ProductVector {
  ProductSpacePtr pspace;
  Eigen::MatrixXd values;
};

Eigen::VectorXd flatten(const ProductVector& x);
ProductVector unflatten(ProductSpacePtr pspace, const Eigen::VectorXd& v);

/// Rank-one element a (x) b.
ProductVector outer(ProductSpacePtr pspace, const Eigen::VectorXd& a,
                    const Eigen::VectorXd& b);

/// The partial inner product <x, y>_2' in H1: contracts the H2 index of x
/// against y under the H2 inner product. Satisfies
/// <<x, y>_2', z>_1 = <x, z (x) y> for every z in H1.
Eigen::VectorXd partial_inner(const ProductVector& x, const Eigen::VectorXd& y);

/// Finitely many H2 constraints lifted to the product space at truncation J.
struct LiftedConstraints {
  ProductSpacePtr pspace;
  Eigen::MatrixXd ys;  // dim2 x m, orthonormal in H2
  Eigen::Index truncation = 0;  // J <= dim1, number of basis vectors used
};

/// The J * m lifted constraint vectors psi_j (x) y_i as an orthonormal
/// constraint set on the flattened space. psi_j is the j-th (weight
/// normalized) coordinate vector of H1. Ordering: (j, i) -> j * m + i.
ConstraintSetPtr lift_constraints(const LiftedConstraints& lc);

/// Lifted k family psi_j (x) k_i matching the ordering of lift_constraints,
/// as a matrix of columns on the flattened space.
Eigen::MatrixXd lift_k_vectors(const ProductSpace& pspace,
                               const Eigen::MatrixXd& ks, Eigen::Index J);

/// x - sum_i <x, y_i>_2' (x) k_i. Requires <k_i, y_j>_2 = delta_ij
/// (AdmissibilityError otherwise). Agrees with the flattened-space
/// projection built from the lifted constraints at full truncation.
ProductVector expanded_projection(const ProductVector& x,
                                  const Eigen::MatrixXd& ys,
                                  const Eigen::MatrixXd& ks);

}  // namespace fredproj
