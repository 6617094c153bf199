#pragma once

#include <Eigen/Core>
#include <memory>
#include <optional>
#include <vector>

namespace fredproj {

/// Finite-dimensional weighted inner-product space: quadrature weights plus
/// optional abscissae. Unit weights give plain coordinate space. Immutable
/// after construction; share via SpacePtr.
class Space {
 public:
  /// Coordinate space of dimension dim, all weights 1.
  static std::shared_ptr<const Space> unit(Eigen::Index dim);

  /// Weighted space; weights must be positive, nodes (if given) strictly
  /// increasing with matching length.
  static std::shared_ptr<const Space> weighted(
      Eigen::VectorXd weights,
      std::optional<Eigen::VectorXd> nodes = std::nullopt);

  Eigen::Index dim() const { return weights_.size(); }
  const Eigen::VectorXd& weights() const { return weights_; }
  const std::optional<Eigen::VectorXd>& nodes() const { return nodes_; }

  Space(Eigen::VectorXd weights, std::optional<Eigen::VectorXd> nodes);

 private:
  Eigen::VectorXd weights_;
  std::optional<Eigen::VectorXd> nodes_;
};

using SpacePtr = std::shared_ptr<const Space>;

/// A vector together with the space whose inner product applies to it.
struct SpaceVector {
  SpacePtr space;
  Eigen::VectorXd values;
};

/// Throws DimensionError unless both sizes equal the space dimension.
void require_dim(const Space& space, const Eigen::VectorXd& u,
                 const Eigen::VectorXd& v);

/// Weighted inner product sum_i w_i u_i v_i.
double inner(const Space& space, const Eigen::VectorXd& u,
             const Eigen::VectorXd& v);
double inner(const SpaceVector& u, const SpaceVector& v);

/// Norm induced by the weighted inner product.
double norm(const Space& space, const Eigen::VectorXd& u);
double norm(const SpaceVector& u);

/// Modified Gram-Schmidt with one reorthogonalization pass. Returns an
/// orthonormal family spanning the same subspace. A vector whose
/// post-orthogonalization norm falls below tol raises
/// DependentConstraintError identifying its index.
std::vector<Eigen::VectorXd> gram_schmidt(
    const Space& space, const std::vector<Eigen::VectorXd>& vs, double tol);

std::vector<SpaceVector> gram_schmidt(const std::vector<SpaceVector>& vs,
                                      double tol);

}  // namespace fredproj
