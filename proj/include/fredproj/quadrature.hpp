#pragma once

#include <Eigen/Core>

namespace fredproj {

enum class QuadratureRule { GaussLegendre, Trapezoid };

struct Quadrature {
  QuadratureRule rule = QuadratureRule::GaussLegendre;
  double a = 0.0;
  double b = 1.0;
  Eigen::Index n = 0;
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Gauss-Legendre nodes and weights mapped to [a, b]. Nodes are computed by
/// Newton iteration on the Legendre polynomial and are accurate to machine
/// precision; sum of weights equals b - a to ~1e-15 relative.
Quadrature gauss_legendre(double a, double b, Eigen::Index n);

/// Composite trapezoid rule on [a, b] with n >= 2 nodes.
Quadrature trapezoid(double a, double b, Eigen::Index n);

}  // namespace fredproj
