#include "fredproj/discretize.hpp"

#include <cmath>
#include <string>

#include "fredproj/errors.hpp"
#include "fredproj/rng.hpp"
#include "fredproj/tensor.hpp"

namespace fredproj {

KernelSpec KernelSpec::separable_poly(Eigen::VectorXd p, Eigen::VectorXd q,
                                      double scale) {
  if (p.size() == 0 || q.size() == 0)
    throw ConfigError("separable_poly: coefficient lists must be nonempty");
  KernelSpec k;
  k.kind = KernelKind::SeparablePoly;
  k.p = std::move(p);
  k.q = std::move(q);
  k.scale = scale;
  return k;
}

KernelSpec KernelSpec::sine(double scale) {
  KernelSpec k;
  k.kind = KernelKind::Sine;
  k.scale = scale;
  return k;
}

KernelSpec KernelSpec::explicit_matrix(Eigen::MatrixXd values, double scale) {
  if (values.rows() != values.cols())
    throw ConfigError("explicit_matrix: kernel matrix must be square");
  KernelSpec k;
  k.kind = KernelKind::Matrix;
  k.matrix = std::move(values);
  k.scale = scale;
  return k;
}

namespace {

double horner(const Eigen::VectorXd& coeffs, double x) {
  double v = 0.0;
  for (Eigen::Index i = coeffs.size() - 1; i >= 0; --i) v = v * x + coeffs(i);
  return v;
}

}  // namespace

double kernel_eval(const KernelSpec& kernel, double x, double y) {
  double v = 0.0;
  switch (kernel.kind) {
    case KernelKind::SeparablePoly:
      v = horner(kernel.p, x) * horner(kernel.q, y);
      break;
    case KernelKind::Sine:
      v = std::sqrt(2.0 / M_PI) * std::sin(x * y);
      break;
    case KernelKind::Matrix:
      throw ConfigError("matrix kernels have values only at the grid nodes");
  }
  if (!std::isfinite(v))
    throw KernelEvalError("kernel evaluation is not finite at (" +
                          std::to_string(x) + ", " + std::to_string(y) + ")");
  return v;
}

LinearOperator nystrom(const KernelSpec& kernel, const Quadrature& quad) {
  const Eigen::Index n = quad.n;
  auto space = Space::weighted(quad.weights, quad.nodes);
  Eigen::MatrixXd A(n, n);
  if (kernel.kind == KernelKind::Matrix) {
    if (kernel.matrix.rows() != n)
      throw DimensionError("nystrom: kernel matrix does not match node count");
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        const double f = kernel.matrix(i, j);
        if (!std::isfinite(f))
          throw KernelEvalError("kernel matrix entry (" + std::to_string(i) +
                                ", " + std::to_string(j) + ") is not finite");
        A(i, j) = kernel.scale * quad.weights(j) * f;
      }
  } else {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        A(i, j) = kernel.scale * quad.weights(j) *
                  kernel_eval(kernel, quad.nodes(i), quad.nodes(j));
  }
  return {std::move(space), std::move(A)};
}

double nystrom_interpolate(const KernelSpec& kernel, const Quadrature& quad,
                           const Eigen::VectorXd& x,
                           const std::function<double(double)>& phi, double s) {
  if (x.size() != quad.n)
    throw DimensionError("nystrom_interpolate: solution length mismatch");
  double acc = phi ? phi(s) : 0.0;
  for (Eigen::Index j = 0; j < quad.n; ++j)
    acc += kernel.scale * quad.weights(j) *
           kernel_eval(kernel, s, quad.nodes(j)) * x(j);
  return acc;
}

std::vector<std::string> corpus_names() {
  return {"separable-basic", "sine-singular", "tensor-demo"};
}

namespace {

CorpusProblem make_separable_basic() {
  CorpusProblem cp;
  cp.name = "separable-basic";
  cp.quad = gauss_legendre(0.0, 1.0, 64);
  Eigen::VectorXd lin(2);
  lin << 0.0, 1.0;
  cp.kernel = KernelSpec::separable_poly(lin, lin);
  LinearOperator A = nystrom(*cp.kernel, *cp.quad);
  auto space = A.space;

  cp.problem.space = space;
  cp.problem.A = std::move(A);
  cp.problem.phi = Eigen::VectorXd::Ones(space->dim());
  cp.problem.constraints = ConstraintSet::none(space);
  cp.phi_fn = [](double) { return 1.0; };
  // x(s) = 1 + c s with c = (1/2) / (1 - 1/3) = 3/4.
  cp.reference_fn = [](double s) { return 1.0 + 0.75 * s; };
  Eigen::VectorXd ref(space->dim());
  for (Eigen::Index i = 0; i < space->dim(); ++i)
    ref(i) = cp.reference_fn(cp.quad->nodes(i));
  cp.reference = std::move(ref);
  cp.reference_tol = 1e-6;
  return cp;
}

CorpusProblem make_sine_singular() {
  CorpusProblem cp;
  cp.name = "sine-singular";
  // Domain truncated to [0, 12]: the Gaussian-decay reference pushes the
  // truncation error below the quadrature-limited 1e-3 tolerance.
  cp.quad = gauss_legendre(0.0, 12.0, 200);
  cp.kernel = KernelSpec::sine();
  LinearOperator A = nystrom(*cp.kernel, *cp.quad);
  auto space = A.space;

  // Self-reciprocal reference x e^{-x^2/2}, normalized to unit weighted
  // norm and positive at the first node. The equation is homogeneous; this
  // normalization is the corpus' own choice of particular solution.
  Eigen::VectorXd ref(space->dim());
  for (Eigen::Index i = 0; i < space->dim(); ++i) {
    const double s = cp.quad->nodes(i);
    ref(i) = s * std::exp(-0.5 * s * s);
  }
  ref /= norm(*space, ref);
  if (ref(0) < 0.0) ref = -ref;

  cp.problem.space = space;
  cp.problem.A = std::move(A);
  cp.problem.phi = Eigen::VectorXd::Zero(space->dim());
  cp.problem.constraints = ConstraintSet::build(space, {ref});
  cp.problem.settings.search = SearchMode::None;
  cp.problem.settings.direct_solve = true;
  cp.phi_fn = [](double) { return 0.0; };
  cp.reference_fn = [](double s) { return s * std::exp(-0.5 * s * s); };
  cp.reference = std::move(ref);
  cp.reference_tol = 1e-3;  // quadrature + domain-truncation limited
  return cp;
}

CorpusProblem make_tensor_demo() {
  CorpusProblem cp;
  cp.name = "tensor-demo";
  auto h1 = Space::unit(4);
  const Quadrature q2 = gauss_legendre(0.0, 1.0, 4);
  auto h2 = Space::weighted(q2.weights, q2.nodes);
  auto ps = ProductSpace::build(h1, h2);
  auto space = ps->space();

  // One H2 constraint (the constant function, unit norm on [0, 1]) lifted
  // at full truncation J = dim(H1).
  Eigen::MatrixXd ys(h2->dim(), 1);
  ys.col(0) = Eigen::VectorXd::Ones(h2->dim());
  LiftedConstraints lc{ps, ys, h1->dim()};
  auto constraints = lift_constraints(lc);

  // Deterministic contraction A1 (x) A2 scaled to norm 0.6, and a planted
  // solution orthogonal to every lifted constraint.
  Rng rng(20240101u);
  Eigen::MatrixXd A1 = rng.gaussian_matrix(4, 4);
  Eigen::MatrixXd A2 = rng.gaussian_matrix(4, 4);
  Eigen::MatrixXd Akron(16, 16);
  for (Eigen::Index i1 = 0; i1 < 4; ++i1)
    for (Eigen::Index j1 = 0; j1 < 4; ++j1)
      for (Eigen::Index i2 = 0; i2 < 4; ++i2)
        for (Eigen::Index j2 = 0; j2 < 4; ++j2)
          Akron(i1 * 4 + i2, j1 * 4 + j2) = A1(i1, j1) * A2(i2, j2);
  LinearOperator A{space, std::move(Akron)};
  A.matrix *= 0.6 / operator_norm(A).value;

  Eigen::VectorXd xstar = rng.gaussian_vector(16);
  for (Eigen::Index j = 0; j < constraints->m(); ++j)
    xstar -= inner(*space, xstar, constraints->ys().col(j)) *
             constraints->ys().col(j);
  xstar /= norm(*space, xstar);

  cp.problem.space = space;
  cp.problem.phi = xstar - A.matrix * xstar;
  cp.problem.A = std::move(A);
  cp.problem.constraints = constraints;
  cp.reference = std::move(xstar);
  cp.reference_tol = 1e-8;
  return cp;
}

}  // namespace

CorpusProblem corpus(const std::string& name) {
  if (name == "separable-basic") return make_separable_basic();
  if (name == "sine-singular") return make_sine_singular();
  if (name == "tensor-demo") return make_tensor_demo();
  throw ConfigError("unknown corpus problem: " + name);
}

}  // namespace fredproj
