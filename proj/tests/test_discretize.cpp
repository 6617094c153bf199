#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "fredproj/discretize.hpp"
#include "fredproj/errors.hpp"

using namespace fredproj;

TEST_CASE("gauss-legendre n = 1 degenerates to the midpoint") {
  const Quadrature q = gauss_legendre(-1.0, 1.0, 1);
  CHECK(q.nodes(0) == doctest::Approx(0.0));
  CHECK(q.weights(0) == doctest::Approx(2.0));
}

TEST_CASE("gauss-legendre n = 2 textbook nodes") {
  const Quadrature q = gauss_legendre(-1.0, 1.0, 2);
  CHECK(q.nodes(0) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(q.nodes(1) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(q.weights(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(q.weights(1) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("gauss-legendre weights sum to the interval length") {
  for (Eigen::Index n : {1, 2, 3, 7, 16, 64, 200}) {
    const Quadrature q = gauss_legendre(0.0, 12.0, n);
    CHECK(std::abs(q.weights.sum() - 12.0) <= 1e-12);
    for (Eigen::Index i = 1; i < n; ++i) CHECK(q.nodes(i) > q.nodes(i - 1));
    for (Eigen::Index i = 0; i < n; ++i) CHECK(q.weights(i) > 0.0);
  }
}

TEST_CASE("gauss-legendre integrates x^2 exactly from n = 2") {
  for (Eigen::Index n : {2, 3, 5, 8}) {
    const Quadrature q = gauss_legendre(0.0, 1.0, n);
    const double integral = (q.weights.array() * q.nodes.array().square()).sum();
    CHECK(std::abs(integral - 1.0 / 3.0) <= 1e-14);
  }
}

TEST_CASE("gauss-legendre integrates e^x to machine precision at n = 64") {
  const Quadrature q = gauss_legendre(0.0, 1.0, 64);
  const double integral = (q.weights.array() * q.nodes.array().exp()).sum();
  CHECK(std::abs(integral - (std::exp(1.0) - 1.0)) <= 1e-14);
}

TEST_CASE("quadrature rejects bad parameters") {
  CHECK_THROWS_AS(gauss_legendre(0.0, 1.0, 0), ConfigError);
  CHECK_THROWS_AS(gauss_legendre(1.0, 0.0, 4), ConfigError);
  CHECK_THROWS_AS(trapezoid(0.0, 1.0, 1), ConfigError);
}

TEST_CASE("trapezoid rule integrates a line exactly") {
  const Quadrature q = trapezoid(0.0, 2.0, 9);
  const double integral = (q.weights.array() * q.nodes.array()).sum();
  CHECK(integral == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("nystrom: rank-one kernel has the analytic norm 1/3") {
  Eigen::VectorXd lin(2);
  lin << 0.0, 1.0;
  const KernelSpec k = KernelSpec::separable_poly(lin, lin);
  const Quadrature q = gauss_legendre(0.0, 1.0, 64);
  const LinearOperator A = nystrom(k, q);
  CHECK(std::abs(operator_norm(A).value - 1.0 / 3.0) <= 1e-6);
}

TEST_CASE("nystrom: zero kernel gives the zero operator") {
  Eigen::VectorXd zero(1);
  zero << 0.0;
  Eigen::VectorXd one(1);
  one << 1.0;
  const LinearOperator A =
      nystrom(KernelSpec::separable_poly(zero, one), gauss_legendre(0, 1, 8));
  CHECK(A.matrix.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("nystrom: sine kernel fixes the self-reciprocal profile") {
  const Quadrature q = gauss_legendre(0.0, 12.0, 200);
  const LinearOperator A = nystrom(KernelSpec::sine(), q);
  Eigen::VectorXd v(q.n);
  for (Eigen::Index i = 0; i < q.n; ++i)
    v(i) = q.nodes(i) * std::exp(-0.5 * q.nodes(i) * q.nodes(i));
  const double defect = norm(*A.space, A.matrix * v - v) / norm(*A.space, v);
  CHECK(defect <= 1e-3);
}

TEST_CASE("kernel evaluation overflow is caught with its location") {
  Eigen::VectorXd huge(2);
  huge << 0.0, 1e308;
  Eigen::VectorXd one(1);
  one << 1.0;
  const KernelSpec k = KernelSpec::separable_poly(huge, huge);
  CHECK_THROWS_AS(nystrom(k, gauss_legendre(0.0, 10.0, 4)), KernelEvalError);
}

TEST_CASE("explicit matrix kernels reject non-finite entries and bad shapes") {
  Eigen::MatrixXd bad(2, 2);
  bad << 1.0, std::numeric_limits<double>::quiet_NaN(), 0.0, 1.0;
  const Quadrature q = gauss_legendre(0.0, 1.0, 2);
  CHECK_THROWS_AS(nystrom(KernelSpec::explicit_matrix(bad), q),
                  KernelEvalError);
  Eigen::MatrixXd wrong(3, 3);
  wrong.setZero();
  CHECK_THROWS_AS(nystrom(KernelSpec::explicit_matrix(wrong), q),
                  DimensionError);
}

TEST_CASE("corpus: separable-basic reproduces 1 + 0.75 s") {
  const CorpusProblem cp = corpus("separable-basic");
  CHECK(cp.reference_fn(1.0) == doctest::Approx(1.75));
  const SolveReport rep = solve_constrained(cp.problem);
  CHECK(rep.status == SolveStatus::Solved);
  CHECK((rep.x - *cp.reference).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("corpus: separable-basic is stable under grid doubling at s = 1") {
  auto value_at_one = [](Eigen::Index n) {
    Eigen::VectorXd lin(2);
    lin << 0.0, 1.0;
    const KernelSpec k = KernelSpec::separable_poly(lin, lin);
    const Quadrature q = gauss_legendre(0.0, 1.0, n);
    const LinearOperator A = nystrom(k, q);
    Problem p;
    p.space = A.space;
    p.A = A;
    p.phi = Eigen::VectorXd::Ones(n);
    p.constraints = ConstraintSet::none(A.space);
    const SolveReport rep = solve_constrained(p);
    REQUIRE(rep.status == SolveStatus::Solved);
    return nystrom_interpolate(k, q, rep.x, [](double) { return 1.0; }, 1.0);
  };
  const double v64 = value_at_one(64);
  const double v128 = value_at_one(128);
  CHECK(std::abs(v64 - 1.75) <= 1e-9);
  CHECK(std::abs(v64 - v128) <= 1e-10);
}

TEST_CASE("corpus: sine-singular reference defect is quadrature-limited") {
  const CorpusProblem cp = corpus("sine-singular");
  const auto& p = cp.problem;
  const double defect =
      norm(*p.space, p.A.matrix * *cp.reference - *cp.reference) /
      norm(*p.space, *cp.reference);
  CHECK(defect <= cp.reference_tol);
  // normalization choices: unit weighted norm, positive first component
  CHECK(norm(*p.space, *cp.reference) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((*cp.reference)(0) > 0.0);
}

TEST_CASE("corpus: tensor-demo solves to its planted reference") {
  const CorpusProblem cp = corpus("tensor-demo");
  const SolveReport rep = solve_constrained(cp.problem);
  CHECK(rep.status == SolveStatus::Solved);
  CHECK((rep.x - *cp.reference).cwiseAbs().maxCoeff() <= cp.reference_tol);
}

TEST_CASE("every corpus reference satisfies its own equation") {
  for (const auto& name : corpus_names()) {
    const CorpusProblem cp = corpus(name);
    if (!cp.reference) continue;
    const auto& p = cp.problem;
    const Eigen::VectorXd defect =
        p.A.matrix * *cp.reference + p.phi - *cp.reference;
    CHECK(norm(*p.space, defect) / std::max(1.0, norm(*p.space, *cp.reference)) <=
          cp.reference_tol);
  }
}

TEST_CASE("unknown corpus name raises ConfigError") {
  CHECK_THROWS_AS(corpus("does-not-exist"), ConfigError);
}

TEST_CASE("nystrom interpolation reproduces grid values") {
  const CorpusProblem cp = corpus("separable-basic");
  const SolveReport rep = solve_constrained(cp.problem);
  REQUIRE(rep.status == SolveStatus::Solved);
  for (Eigen::Index i : {0, 10, 40}) {
    const double s = cp.quad->nodes(i);
    const double interp =
        nystrom_interpolate(*cp.kernel, *cp.quad, rep.x, cp.phi_fn, s);
    CHECK(interp == doctest::Approx(rep.x(i)).epsilon(1e-10));
  }
}
