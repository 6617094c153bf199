#include "fredproj/quadrature.hpp"

#include <cmath>

#include "fredproj/errors.hpp"

namespace fredproj {

namespace {

// Legendre P_n and P_n' at x by the three-term recurrence.
std::pair<double, double> legendre(Eigen::Index n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (Eigen::Index k = 2; k <= n; ++k) {
    const double p2 =
        ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
    p0 = p1;
    p1 = p2;
  }
  const double dp =
      n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

Quadrature gauss_legendre(double a, double b, Eigen::Index n) {
  if (n < 1) throw ConfigError("gauss_legendre: n must be >= 1");
  if (!(a < b)) throw ConfigError("gauss_legendre: need a < b");

  Quadrature q;
  q.rule = QuadratureRule::GaussLegendre;
  q.a = a;
  q.b = b;
  q.n = n;
  q.nodes.resize(n);
  q.weights.resize(n);

  if (n == 1) {
    q.nodes(0) = 0.5 * (a + b);
    q.weights(0) = b - a;
    return q;
  }

  // Roots on [-1, 1]; only the lower half is solved, the rest by symmetry.
  Eigen::VectorXd x(n), w(n);
  for (Eigen::Index i = 0; i < (n + 1) / 2; ++i) {
    double xi = -std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                          (static_cast<double>(n) + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, xi);
      const double dx = p / dp;
      xi -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    if (i == n - 1 - i) xi = 0.0;  // middle root of odd n is exactly 0
    const auto [p, dp] = legendre(n, xi);
    (void)p;
    x(i) = xi;
    x(n - 1 - i) = -xi;
    w(i) = 2.0 / ((1.0 - xi * xi) * dp * dp);
    w(n - 1 - i) = w(i);
  }

  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (Eigen::Index i = 0; i < n; ++i) {
    q.nodes(i) = mid + half * x(i);
    q.weights(i) = half * w(i);
  }
  return q;
}

Quadrature trapezoid(double a, double b, Eigen::Index n) {
  if (n < 2) throw ConfigError("trapezoid: n must be >= 2");
  if (!(a < b)) throw ConfigError("trapezoid: need a < b");
  Quadrature q;
  q.rule = QuadratureRule::Trapezoid;
  q.a = a;
  q.b = b;
  q.n = n;
  q.nodes.resize(n);
  q.weights.resize(n);
  const double h = (b - a) / static_cast<double>(n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    q.nodes(i) = a + h * static_cast<double>(i);
    q.weights(i) = (i == 0 || i == n - 1) ? 0.5 * h : h;
  }
  return q;
}

}  // namespace fredproj
