#include "fredproj/series_checks.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "fredproj/errors.hpp"

namespace fredproj {

std::pair<std::int64_t, std::int64_t> sigma(std::int64_t i) {
  // t from the closed form, then fixed up against exact triangular numbers
  // so no index near a diagonal boundary is misplaced by sqrt rounding.
  std::int64_t t = static_cast<std::int64_t>(
      std::floor((std::sqrt(8.0 * static_cast<double>(i) + 1.0) - 1.0) / 2.0));
  while (t * (t + 1) / 2 > i) --t;
  while ((t + 1) * (t + 2) / 2 <= i) ++t;
  const std::int64_t j = i - t * (t + 1) / 2;
  return {j, t - j};
}

std::int64_t sigma_index(std::int64_t a, std::int64_t b) {
  const std::int64_t t = a + b;
  return t * (t + 1) / 2 + a;
}

std::pair<double, double> sigma_as_printed(std::int64_t i) {
  const double id = static_cast<double>(i);
  const double root = std::sqrt((8.0 * id + 1.0) / 4.0) - 0.5;
  const double floored = std::floor(root);
  const double first = id - 0.5 * root * root - 0.5 * floored;
  const double second = 1.5 * floored - id + 0.5 * root * root;
  return {first, second};
}

namespace {

double dimension_checked(const Eigen::MatrixXd& m, Eigen::Index dim) {
  if (m.rows() != dim || m.cols() != dim)
    throw DimensionError("operator family term has wrong shape");
  return 0.0;
}

void require_summable(double C, double r, double s) {
  if (!(C >= 0.0) || !(r >= 0.0) || !(s >= 0.0) || r >= 1.0 || s >= 1.0)
    throw UnsummableFamilyError(
        "family norm bound C r^i s^j is not summable (need 0 <= r, s < 1)");
}

void require_summable(double C, double r) {
  if (!(C >= 0.0) || !(r >= 0.0) || r >= 1.0)
    throw UnsummableFamilyError(
        "sequence norm bound C r^i is not summable (need 0 <= r < 1)");
}

}  // namespace

CheckReport check_reordering(const OperatorFamily& family,
                             const TruncationSchedule& sched) {
  require_summable(family.C, family.r, family.s);
  // The sigma-ordered sum runs over T complete anti-diagonals; the row- and
  // column-major sums over the B x B box with B = T/2. The box then sits
  // inside the triangle, and triangle \ box only contains indices with
  // i >= B or j >= B, which the geometric bound covers.
  const int T = std::max(2, sched.max_terms);
  const int B = T / 2;
  const Eigen::Index n = family.dim;

  Eigen::MatrixXd row_major = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < B; ++i)
    for (int j = 0; j < B; ++j) {
      const Eigen::MatrixXd t = family.term(i, j);
      dimension_checked(t, n);
      row_major += t;
    }
  Eigen::MatrixXd col_major = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < B; ++j)
    for (int i = 0; i < B; ++i) col_major += family.term(i, j);

  Eigen::MatrixXd diag_order = Eigen::MatrixXd::Zero(n, n);
  const std::int64_t count = static_cast<std::int64_t>(T) * (T + 1) / 2;
  for (std::int64_t idx = 0; idx < count; ++idx) {
    const auto [a, b] = sigma(idx);
    diag_order += family.term(static_cast<int>(a), static_cast<int>(b));
  }

  const double tail = family.C *
                      (std::pow(family.r, B) + std::pow(family.s, B)) /
                      ((1.0 - family.r) * (1.0 - family.s));
  const double tol = sched.epsilon + tail;

  const double d1 = (row_major - col_major).cwiseAbs().maxCoeff();
  const double d2 = (row_major - diag_order).cwiseAbs().maxCoeff();
  const double d3 = (col_major - diag_order).cwiseAbs().maxCoeff();

  CheckReport rep;
  rep.name = "reorder";
  rep.discrepancy = std::max({d1, d2, d3});
  rep.terms_used = B * B;
  rep.passed = rep.discrepancy <= tol;
  return rep;
}

CheckReport check_cauchy_product(const OperatorSequence& Xs,
                                 const OperatorSequence& Ys,
                                 const TruncationSchedule& sched) {
  require_summable(Xs.C, Xs.r);
  require_summable(Ys.C, Ys.r);
  if (Xs.dim != Ys.dim)
    throw DimensionError("check_cauchy_product: sequences act on different dims");
  // Diagonal accumulation over T anti-diagonals vs product of the two
  // B-term sums, B = T/2; each side is within a geometric tail of the limit.
  const int T = std::max(2, sched.max_terms);
  const int B = T / 2;
  const Eigen::Index n = Xs.dim;

  std::vector<Eigen::MatrixXd> xs(T), ys(T);
  for (int i = 0; i < T; ++i) {
    xs[i] = Xs.term(i);
    ys[i] = Ys.term(i);
    dimension_checked(xs[i], n);
    dimension_checked(ys[i], n);
  }

  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(n, n);
  for (int t = 0; t < T; ++t)
    for (int j = 0; j <= t; ++j) diag += xs[j] * ys[t - j];

  Eigen::MatrixXd sx = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd sy = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < B; ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const Eigen::MatrixXd product = sx * sy;

  const double sum_x = Xs.C / (1.0 - Xs.r);
  const double sum_y = Ys.C / (1.0 - Ys.r);
  const double tail_x = Xs.C * std::pow(Xs.r, B) / (1.0 - Xs.r);
  const double tail_y = Ys.C * std::pow(Ys.r, B) / (1.0 - Ys.r);
  double tail_diag = 0.0;
  {
    // terms with i + j >= T: sum over t >= T of (t+1) max(r_x, r_y)^t C_x C_y
    const double rho = std::max(Xs.r, Ys.r);
    if (rho > 0.0) {
      const double rT = std::pow(rho, T);
      tail_diag = Xs.C * Ys.C * rT *
                  (static_cast<double>(T) * (1.0 - rho) + 1.0) /
                  ((1.0 - rho) * (1.0 - rho));
    }
  }
  const double tol =
      sched.epsilon + tail_diag + tail_x * sum_y + tail_y * sum_x + tail_x * tail_y;

  CheckReport rep;
  rep.name = "cauchy";
  rep.discrepancy = (diag - product).cwiseAbs().maxCoeff();
  rep.terms_used = T;
  rep.passed = rep.discrepancy <= tol;
  return rep;
}

CheckReport check_neumann_perturbation(const LemmaOperands& ops,
                                       const TruncationSchedule& sched) {
  const auto& space = *ops.X.space;
  const Eigen::Index n = space.dim();
  const double nx = ops.norm_X.value;
  const double ny = ops.norm_Y.value;
  if (!(nx + ny < 1.0))
    throw ContractionError(
        "check_neumann_perturbation: |X| + |Y| >= 1 violates the hypothesis");

  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const double tol_series = sched.epsilon;

  // Truncated geometric operator sum with a certified contraction bound.
  auto geo = [&](const Eigen::MatrixXd& M, double q, int* used) {
    Eigen::MatrixXd sum = I;
    Eigen::MatrixXd term = I;
    int terms = 1;
    const double tail_factor = q / (1.0 - q);
    while (true) {
      term = M * term;
      sum += term;
      ++terms;
      const double tn =
          operator_norm({ops.X.space, term}).value * tail_factor;
      if (tn <= tol_series || terms >= 100000) break;
    }
    if (used) *used = terms;
    return sum;
  };

  int used_z = 0, used_xbar = 0, used_yx = 0;
  const Eigen::MatrixXd Zser = geo(ops.X.matrix + ops.Y.matrix, nx + ny, &used_z);
  const Eigen::MatrixXd Xbar = geo(ops.X.matrix, nx, &used_xbar);
  const Eigen::MatrixXd YXbar = ops.Y.matrix * Xbar;
  const double q_yx = ny / (1.0 - nx);
  const Eigen::MatrixXd Zbar_ser = Xbar * geo(YXbar, q_yx, &used_yx);

  // Dense-inverse oracles.
  const Eigen::MatrixXd Zinv = (I - ops.X.matrix - ops.Y.matrix).lu().solve(I);
  const Eigen::MatrixXd Xbar_inv = (I - ops.X.matrix).lu().solve(I);
  const Eigen::MatrixXd Zbar_inv =
      Xbar_inv * (I - ops.Y.matrix * Xbar_inv).lu().solve(I);

  auto gap = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return (a - b).cwiseAbs().maxCoeff();
  };
  const double d = std::max({gap(Zser, Zbar_ser), gap(Zser, Zinv),
                             gap(Zser, Zbar_inv), gap(Zbar_ser, Zinv),
                             gap(Zbar_ser, Zbar_inv), gap(Zinv, Zbar_inv)});

  CheckReport rep;
  rep.name = "perturb";
  rep.discrepancy = d;
  rep.terms_used = used_z + used_xbar + used_yx;
  rep.passed = d <= 1e-8;
  return rep;
}

CheckReport check_operator_split(const KVectors& k, const Eigen::MatrixXd& etas,
                                 double eps) {
  const auto& cs = *k.constraints;
  const auto& space = *cs.space();
  const Eigen::Index m = cs.m();
  if (etas.rows() != space.dim() || etas.cols() != m)
    throw DimensionError("check_operator_split: etas must be dim x m");
  for (Eigen::Index i = 0; i < m; ++i) {
    if (std::abs(norm(space, etas.col(i)) - 1.0) > 1e-10)
      throw AdmissibilityError("check_operator_split: eta_" +
                               std::to_string(i) + " is not a unit vector");
    for (Eigen::Index j = 0; j < m; ++j)
      if (std::abs(inner(space, etas.col(i), cs.ys().col(j))) > 1e-10)
        throw AdmissibilityError("check_operator_split: <eta_" +
                                 std::to_string(i) + ", y_" +
                                 std::to_string(j) + "> != 0");
  }

  const KVectors kprime = k_from_vectors(k.constraints, k.ks + eps * etas);
  const Eigen::MatrixXd lhs = build_projections(kprime).P.matrix;
  const Eigen::MatrixXd rhs =
      build_projections(k).P.matrix -
      eps * complementary_projection(cs, etas).matrix;

  CheckReport rep;
  rep.name = "split";
  rep.discrepancy = (lhs - rhs).cwiseAbs().maxCoeff();
  rep.terms_used = 0;
  rep.passed = rep.discrepancy <= 1e-12;
  return rep;
}

}  // namespace fredproj
