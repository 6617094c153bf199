#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "fredproj/errors.hpp"
#include "fredproj/linear_operator.hpp"
#include "fredproj/rng.hpp"

using namespace fredproj;

namespace {
LinearOperator op2(double a, double b, double c, double d, SpacePtr s) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, c, d;
  return {std::move(s), std::move(m)};
}
}  // namespace

TEST_CASE("norm of the identity is 1 under any weights") {
  Rng rng(1);
  for (int t = 0; t < 10; ++t) {
    Eigen::VectorXd w(4);
    for (int i = 0; i < 4; ++i) w(i) = rng.uniform(0.1, 5.0);
    auto s = Space::weighted(w);
    CHECK(operator_norm(LinearOperator::identity(s)).value ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("2x2 norm against the hand singular value") {
  auto s = Space::unit(2);
  const auto est = operator_norm(op2(0, 0.3, 0, 0.2, s));
  CHECK(est.value == doctest::Approx(std::sqrt(0.13)).epsilon(1e-12));
  CHECK(est.method == NormMethod::ExactSvd);
}

TEST_CASE("zero operator has zero norm") {
  auto s = Space::unit(3);
  CHECK(operator_norm(LinearOperator::zero(s)).value == 0.0);
}

TEST_CASE("apply and compose follow matrix semantics") {
  auto s = Space::unit(2);
  const auto A = op2(1, 0.3, 0, 0.2, s);
  Eigen::VectorXd e2(2);
  e2 << 0, 1;
  const Eigen::VectorXd out = apply(A, e2);
  CHECK(out(0) == doctest::Approx(0.3));
  CHECK(out(1) == doctest::Approx(0.2));

  const auto I = LinearOperator::identity(s);
  CHECK((compose(A, I).matrix - A.matrix).cwiseAbs().maxCoeff() == 0.0);
  CHECK((apply(I, e2) - e2).cwiseAbs().maxCoeff() == 0.0);

  Eigen::VectorXd bad(3);
  CHECK_THROWS_AS(apply(A, bad), DimensionError);
}

TEST_CASE("norm dominates Rayleigh quotients") {
  Rng rng(5);
  for (int t = 0; t < 5; ++t) {
    const Eigen::Index n = 3 + static_cast<Eigen::Index>(rng.below(14));
    Eigen::VectorXd w(n);
    for (Eigen::Index i = 0; i < n; ++i) w(i) = rng.uniform(0.1, 4.0);
    auto s = Space::weighted(w);
    LinearOperator A{s, rng.gaussian_matrix(n, n)};
    const double nrm = operator_norm(A).value;
    for (int probe = 0; probe < 100; ++probe) {
      Eigen::VectorXd u = rng.gaussian_vector(n);
      u /= norm(*s, u);
      CHECK(nrm >= norm(*s, A.matrix * u) - 1e-8);
    }
  }
}

TEST_CASE("norm is submultiplicative under composition") {
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.below(10));
    Eigen::VectorXd w(n);
    for (Eigen::Index i = 0; i < n; ++i) w(i) = rng.uniform(0.2, 2.0);
    auto s = Space::weighted(w);
    LinearOperator A{s, rng.gaussian_matrix(n, n)};
    LinearOperator B{s, rng.gaussian_matrix(n, n)};
    CHECK(operator_norm(compose(A, B)).value <=
          operator_norm(A).value * operator_norm(B).value + 1e-8);
  }
}

TEST_CASE("power iteration agrees with the exact path") {
  Rng rng(8);
  const Eigen::Index n = 24;
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) w(i) = rng.uniform(0.3, 2.0);
  auto s = Space::weighted(w);
  LinearOperator A{s, rng.gaussian_matrix(n, n)};

  const auto exact = operator_norm(A);
  NormConfig cfg;
  cfg.svd_cutoff = 0;  // force the iterative path
  cfg.tol = 1e-12;
  const auto iter = operator_norm(A, cfg);
  CHECK(iter.method == NormMethod::PowerIteration);
  CHECK(iter.converged);
  CHECK(iter.value == doctest::Approx(exact.value).epsilon(1e-8));
}

TEST_CASE("starved power iteration comes back flagged, not thrown") {
  Rng rng(9);
  auto s = Space::unit(16);
  LinearOperator A{s, rng.gaussian_matrix(16, 16)};
  NormConfig cfg;
  cfg.svd_cutoff = 0;
  cfg.tol = 1e-15;
  cfg.max_iters = 1;
  const auto est = operator_norm(A, cfg);
  CHECK_FALSE(est.converged);
  CHECK(est.value >= 0.0);
}

TEST_CASE("algebra helpers: add and scale") {
  auto s = Space::unit(2);
  const auto A = op2(1, 2, 3, 4, s);
  const auto B = op2(0, 1, 1, 0, s);
  CHECK((add(A, B).matrix - (A.matrix + B.matrix)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((scale(A, 2.0).matrix - 2.0 * A.matrix).cwiseAbs().maxCoeff() == 0.0);
}
