#include "fredproj/lemma_trials.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

#include "fredproj/errors.hpp"

namespace fredproj {

LinearOperator random_operator_with_norm(Rng& rng, SpacePtr space,
                                         double target_norm) {
  const Eigen::Index n = space->dim();
  Eigen::MatrixXd M = rng.gaussian_matrix(n, n);
  LinearOperator A{space, std::move(M)};
  const double nrm = operator_norm(A).value;
  A.matrix *= target_norm / nrm;
  return A;
}

Eigen::VectorXd random_unit_orthogonal(Rng& rng, const Space& space,
                                       const Eigen::MatrixXd& ys) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Eigen::VectorXd v = rng.gaussian_vector(space.dim());
    for (Eigen::Index j = 0; j < ys.cols(); ++j)
      v -= inner(space, v, ys.col(j)) * ys.col(j);
    const double n = norm(space, v);
    if (n > 1e-8) return v / n;
  }
  throw AdmissibilityError(
      "random_unit_orthogonal: complement appears to be trivial");
}

const std::vector<std::string>& lemma_names() {
  static const std::vector<std::string> names = {"pairing", "reorder", "cauchy",
                                                 "perturb", "split"};
  return names;
}

namespace {

CheckReport pairing_trial(std::uint64_t seed) {
  Rng rng(seed);
  CheckReport rep;
  rep.name = "pairing";
  rep.seed = seed;
  std::int64_t worst = 0;
  // Round-trip on a random sample plus the small prefix.
  for (int t = 0; t < 1000; ++t) {
    const std::int64_t i = static_cast<std::int64_t>(rng.below(100000000ull));
    const auto [a, b] = sigma(i);
    worst = std::max<std::int64_t>(worst, std::llabs(sigma_index(a, b) - i));
  }
  for (std::int64_t i = 0; i < 1000; ++i) {
    const auto [a, b] = sigma(i);
    worst = std::max<std::int64_t>(worst, std::llabs(sigma_index(a, b) - i));
  }
  rep.discrepancy = static_cast<double>(worst);
  rep.terms_used = 2000;
  rep.passed = (worst == 0);
  std::ostringstream detail;
  const auto s0 = sigma(0);
  const auto s1 = sigma(1);
  const auto s2 = sigma(2);
  detail << "sigma(0)=(" << s0.first << "," << s0.second << ") sigma(1)=("
         << s1.first << "," << s1.second << ") sigma(2)=(" << s2.first << ","
         << s2.second << ")";
  rep.detail = detail.str();
  return rep;
}

CheckReport reordering_trial(std::uint64_t seed) {
  Rng rng(seed);
  const Eigen::Index n = 4;
  const double r = rng.uniform(0.2, 0.7);
  const double s = rng.uniform(0.2, 0.7);
  Eigen::MatrixXd E = rng.gaussian_matrix(n, n);
  const double C = E.cwiseAbs().maxCoeff() * static_cast<double>(n);
  OperatorFamily family{n, C, r, s, [E, r, s](int i, int j) {
                          return std::pow(r, i) * std::pow(s, j) * E;
                        }};
  TruncationSchedule sched;
  sched.epsilon = 1e-10;
  sched.max_terms = 60;
  CheckReport rep = check_reordering(family, sched);
  rep.seed = seed;
  return rep;
}

CheckReport cauchy_trial(std::uint64_t seed) {
  Rng rng(seed);
  auto space = Space::unit(4);
  const double na = rng.uniform(0.2, 0.6);
  const double nb = rng.uniform(0.2, 0.6);
  const LinearOperator A = random_operator_with_norm(rng, space, na);
  const LinearOperator B = random_operator_with_norm(rng, space, nb);
  auto powers = [](Eigen::MatrixXd base) {
    return [base](int i) {
      Eigen::MatrixXd p = Eigen::MatrixXd::Identity(base.rows(), base.cols());
      for (int t = 0; t < i; ++t) p = base * p;
      return p;
    };
  };
  OperatorSequence Xs{4, 1.0, na, powers(A.matrix)};
  OperatorSequence Ys{4, 1.0, nb, powers(B.matrix)};
  TruncationSchedule sched;
  sched.epsilon = 1e-9;
  sched.max_terms = 80;
  CheckReport rep = check_cauchy_product(Xs, Ys, sched);
  rep.seed = seed;

  // Dense oracle: both accumulations approximate (I-A)^-1 (I-B)^-1.
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(4, 4);
  const Eigen::MatrixXd oracle =
      (I - A.matrix).lu().solve((I - B.matrix).lu().solve(I).eval());
  Eigen::MatrixXd sx = Eigen::MatrixXd::Zero(4, 4);
  Eigen::MatrixXd sy = Eigen::MatrixXd::Zero(4, 4);
  for (int i = 0; i < sched.max_terms; ++i) {
    sx += Xs.term(i);
    sy += Ys.term(i);
  }
  const double oracle_gap = (sx * sy - oracle).cwiseAbs().maxCoeff();
  rep.discrepancy = std::max(rep.discrepancy, oracle_gap);
  rep.passed = rep.passed && oracle_gap <= 1e-9;
  return rep;
}

CheckReport perturbation_trial(std::uint64_t seed) {
  Rng rng(seed);
  const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.below(7));  // 2..8
  auto space = Space::unit(n);
  const double nx = rng.uniform(0.1, 0.6);
  const double ny = rng.uniform(0.05, 0.9 - nx - 0.05);
  LemmaOperands ops;
  ops.X = random_operator_with_norm(rng, space, nx);
  ops.Y = random_operator_with_norm(rng, space, ny);
  ops.norm_X = operator_norm(ops.X);
  ops.norm_Y = operator_norm(ops.Y);
  TruncationSchedule sched;
  sched.epsilon = 1e-10;
  CheckReport rep = check_neumann_perturbation(ops, sched);
  rep.seed = seed;
  return rep;
}

CheckReport split_trial(std::uint64_t seed) {
  Rng rng(seed);
  const Eigen::Index n = 3 + static_cast<Eigen::Index>(rng.below(6));  // 3..8
  auto space = Space::unit(n);
  const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng.below(2));  // 1..2
  std::vector<Eigen::VectorXd> raw;
  for (Eigen::Index i = 0; i < m; ++i) raw.push_back(rng.gaussian_vector(n));
  auto cs = ConstraintSet::build(space, raw);
  Eigen::MatrixXd coeffs = rng.gaussian_matrix(n - m, m);
  const KVectors k = build_k(cs, coeffs);
  Eigen::MatrixXd etas(n, m);
  for (Eigen::Index i = 0; i < m; ++i)
    etas.col(i) = random_unit_orthogonal(rng, *space, cs->ys());
  const double eps = rng.uniform(0.0, 1.0);
  CheckReport rep = check_operator_split(k, etas, eps);
  rep.seed = seed;
  return rep;
}

}  // namespace

CheckReport run_lemma_trial(const std::string& name, std::uint64_t seed) {
  if (name == "pairing") return pairing_trial(seed);
  if (name == "reorder") return reordering_trial(seed);
  if (name == "cauchy") return cauchy_trial(seed);
  if (name == "perturb") return perturbation_trial(seed);
  if (name == "split") return split_trial(seed);
  throw ConfigError("unknown lemma check: " + name);
}

}  // namespace fredproj
