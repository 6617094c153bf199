#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>

#include "fredproj/linear_operator.hpp"
#include "fredproj/projection.hpp"

namespace fredproj {

/// Anti-diagonal enumeration of N x N: sigma(i) = (j, t - j) with
/// t = floor((sqrt(8i + 1) - 1) / 2), j = i - t (t + 1) / 2.
std::pair<std::int64_t, std::int64_t> sigma(std::int64_t i);

/// Inverse of sigma: the index of the pair (a, b).
std::int64_t sigma_index(std::int64_t a, std::int64_t b);

/// The printed closed form, floors applied exactly where printed (the
/// squared term is left unfloored). Generally non-integer; kept so the gap
/// against sigma() can be measured instead of guessed at.
std::pair<double, double> sigma_as_printed(std::int64_t i);

struct TruncationSchedule {
  double epsilon = 1e-10;  // target tail bound
  int mu = 0;              // index threshold mu(epsilon), informational
  int max_terms = 60;      // anti-diagonals / box side for partial sums
};

struct CheckReport {
  std::string name;
  bool passed = false;
  double discrepancy = 0.0;
  int terms_used = 0;
  std::uint64_t seed = 0;
  std::string detail;  // optional human-facing note (known values etc.)
};

/// Doubly indexed operator family with a certified geometric norm bound
/// |X_ij| <= C r^i s^j. The bound is what makes truncated comparison sound.
struct OperatorFamily {
  Eigen::Index dim = 0;
  double C = 1.0;
  double r = 0.5;
  double s = 0.5;
  std::function<Eigen::MatrixXd(int, int)> term;
};

/// Singly indexed operator sequence with certified bound |X_i| <= C r^i.
struct OperatorSequence {
  Eigen::Index dim = 0;
  double C = 1.0;
  double r = 0.5;
  std::function<Eigen::MatrixXd(int)> term;
};

/// X and Y operands for the Neumann perturbation identity, with their norms.
struct LemmaOperands {
  LinearOperator X;
  LinearOperator Y;
  NormEstimate norm_X;
  NormEstimate norm_Y;
};

/// Row-major, column-major and sigma-ordered partial sums of the family all
/// agree within epsilon plus the analytic geometric tail bound.
CheckReport check_reordering(const OperatorFamily& family,
                             const TruncationSchedule& sched);

/// Diagonal (Cauchy) accumulation of sum X_i Y_j against the product of the
/// two sums, within epsilon plus analytic tails.
CheckReport check_cauchy_product(const OperatorSequence& Xs,
                                 const OperatorSequence& Ys,
                                 const TruncationSchedule& sched);

/// Z = sum (X + Y)^i and Zbar = Xbar sum (Y Xbar)^i, each by truncated
/// series and by dense inverse; all four must agree within 1e-8. Requires
/// |X| + |Y| < 1.
CheckReport check_neumann_perturbation(const LemmaOperands& ops,
                                       const TruncationSchedule& sched);

/// P_{k'} == P_k - eps * Pt_eta as assembled matrices, to 1e-12. etas must
/// be unit and orthogonal to every y (AdmissibilityError otherwise).
CheckReport check_operator_split(const KVectors& k, const Eigen::MatrixXd& etas,
                                 double eps);

}  // namespace fredproj
