#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fredproj/linear_operator.hpp"
#include "fredproj/quadrature.hpp"
#include "fredproj/solver.hpp"

namespace fredproj {

enum class KernelKind { SeparablePoly, Sine, Matrix };

/// Kernel of a 1-D integral operator.
///  - SeparablePoly: f(x, y) = p(x) q(y), p and q polynomial coefficient
///    lists (ascending powers).
///  - Sine: f(x, s) = sqrt(2/pi) sin(x s).
///  - Matrix: explicit square matrix of kernel values at the nodes.
/// scale multiplies the whole operator.
struct KernelSpec {
  KernelKind kind = KernelKind::SeparablePoly;
  Eigen::VectorXd p;
  Eigen::VectorXd q;
  double scale = 1.0;
  Eigen::MatrixXd matrix;

  static KernelSpec separable_poly(Eigen::VectorXd p, Eigen::VectorXd q,
                                   double scale = 1.0);
  static KernelSpec sine(double scale = 1.0);
  static KernelSpec explicit_matrix(Eigen::MatrixXd values, double scale = 1.0);
};

/// Kernel value f(x, y); KernelEvalError on a non-finite result.
double kernel_eval(const KernelSpec& kernel, double x, double y);

/// Nystrom rendering of the integral operator on the weighted space built
/// from the quadrature: A_ij = scale * w_j * f(node_i, node_j).
LinearOperator nystrom(const KernelSpec& kernel, const Quadrature& quad);

/// Nystrom interpolation of a solved grid function to an arbitrary point:
/// x(s) = phi(s) + scale * sum_j w_j f(s, node_j) x_j.
double nystrom_interpolate(const KernelSpec& kernel, const Quadrature& quad,
                           const Eigen::VectorXd& x,
                           const std::function<double(double)>& phi, double s);

/// A shipped problem with an optional closed-form reference.
struct CorpusProblem {
  std::string name;
  Problem problem;
  std::optional<KernelSpec> kernel;
  std::optional<Quadrature> quad;
  std::function<double(double)> phi_fn;       // continuum right-hand side, if any
  std::optional<Eigen::VectorXd> reference;   // reference solution at the nodes
  std::function<double(double)> reference_fn; // closed form, when one exists
  double reference_tol = 0.0;
};

/// Names: separable-basic, sine-singular, tensor-demo.
std::vector<std::string> corpus_names();

CorpusProblem corpus(const std::string& name);

}  // namespace fredproj
