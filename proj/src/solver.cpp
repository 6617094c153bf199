#include "fredproj/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "fredproj/errors.hpp"
#include "fredproj/logging.hpp"

namespace fredproj {

std::string to_string(SearchMode mode) {
  switch (mode) {
    case SearchMode::Newton: return "newton";
    case SearchMode::NelderMead: return "nelder-mead";
    case SearchMode::None: return "none";
  }
  return "newton";
}

SearchMode search_mode_from_string(const std::string& s) {
  if (s == "newton") return SearchMode::Newton;
  if (s == "nelder-mead") return SearchMode::NelderMead;
  if (s == "none") return SearchMode::None;
  throw ConfigError("unknown search mode: " + s);
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Solved: return "solved";
    case SolveStatus::ResidualNonzero: return "residual-nonzero";
    case SolveStatus::NormGeOne: return "norm-ge-one";
    case SolveStatus::SearchFailed: return "search-failed";
  }
  return "search-failed";
}

int exit_code_for(SolveStatus status) {
  switch (status) {
    case SolveStatus::Solved: return 0;
    case SolveStatus::ResidualNonzero: return 2;
    case SolveStatus::NormGeOne: return 3;
    case SolveStatus::SearchFailed: return 4;
  }
  return 4;
}

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Accumulate sum_i M^i phi with the geometric tail rule:
// after adding a term, the remaining tail is bounded by |term| q / (1 - q).
std::pair<Eigen::VectorXd, int> series_sum(const Space& space,
                                           const Eigen::MatrixXd& M,
                                           const Eigen::VectorXd& phi,
                                           double q, const SolverSettings& s) {
  const double tail_factor = q / (1.0 - q);
  Eigen::VectorXd x = phi;
  Eigen::VectorXd term = phi;
  int terms = 1;
  if (norm(space, term) * tail_factor <= s.neumann_tol) return {x, terms};
  while (terms < s.neumann_max_terms) {
    term = M * term;
    x += term;
    ++terms;
    if (norm(space, term) * tail_factor <= s.neumann_tol) return {x, terms};
  }
  throw SeriesNotConverged("Neumann series hit the " +
                           std::to_string(s.neumann_max_terms) +
                           "-term cap before the tail bound was met");
}

Eigen::VectorXd dense_solve(const Space& space, const Eigen::MatrixXd& AP,
                            const Eigen::VectorXd& phi) {
  const Eigen::Index n = space.dim();
  const Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n, n) - AP;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-12))
    throw SingularSystemError("(I - A P) is numerically singular (rcond " +
                              std::to_string(rcond) + ")");
  return lu.solve(phi);
}

}  // namespace

std::pair<Eigen::VectorXd, int> neumann_solve(const LinearOperator& A,
                                              const LinearOperator& P,
                                              const Eigen::VectorXd& phi,
                                              const SolverSettings& s) {
  const LinearOperator M = compose(A, P);
  const NormEstimate q = operator_norm(M);
  if (!(q.value < 1.0))
    throw ContractionError("|A P| = " + std::to_string(q.value) + " >= 1");
  if (s.direct_solve) return {dense_solve(*A.space, M.matrix, phi), 0};
  return series_sum(*A.space, M.matrix, phi, q.value, s);
}

Eigen::VectorXd direct_solve_oracle(const LinearOperator& A,
                                    const LinearOperator& P,
                                    const Eigen::VectorXd& phi) {
  const LinearOperator M = compose(A, P);
  return dense_solve(*A.space, M.matrix, phi);
}

Eigen::VectorXd residual(const Problem& problem, const KVectors& k) {
  const ProjectionPair pair = build_projections(k);
  const auto [x, terms] =
      neumann_solve(problem.A, pair.P, problem.phi, problem.settings);
  const auto& cs = *k.constraints;
  Eigen::VectorXd g(cs.m());
  for (Eigen::Index i = 0; i < cs.m(); ++i)
    g(i) = inner(*problem.space, x, cs.ys().col(i));
  return g;
}

namespace {

// One evaluation of the solvability residual at a coefficient point.
struct Eval {
  bool feasible = false;       // |A P_k| < 1 and the solve succeeded
  bool series_failed = false;  // SeriesNotConverged at this point
  NormEstimate qest;
  double q = kInf;
  Eigen::VectorXd g;
  double gnorm = kInf;
  Eigen::VectorXd x;
  int terms = 0;
  KVectors k;
};

class Evaluator {
 public:
  explicit Evaluator(const Problem& p) : p_(p) {}

  Eigen::Index rows() const { return p_.constraints->space()->dim() - p_.constraints->m(); }
  Eigen::Index cols() const { return p_.constraints->m(); }

  Eval at(const Eigen::VectorXd& cflat) {
    Eval e;
    Eigen::MatrixXd coeffs =
        Eigen::Map<const Eigen::MatrixXd>(cflat.data(), rows(), cols());
    e.k = build_k(p_.constraints, coeffs);
    const ProjectionPair pair = build_projections(e.k);
    const Eigen::MatrixXd M = p_.A.matrix * pair.P.matrix;
    e.qest = operator_norm({p_.space, M});
    e.q = e.qest.value;
    if (!(e.q < 1.0)) return e;
    try {
      if (p_.settings.direct_solve) {
        e.x = dense_solve(*p_.space, M, p_.phi);
        e.terms = 0;
      } else {
        std::tie(e.x, e.terms) =
            series_sum(*p_.space, M, p_.phi, e.q, p_.settings);
      }
    } catch (const SeriesNotConverged&) {
      e.series_failed = true;
      return e;
    } catch (const SingularSystemError&) {
      return e;
    }
    e.feasible = true;
    const auto& cs = *p_.constraints;
    e.g.resize(cs.m());
    for (Eigen::Index i = 0; i < cs.m(); ++i)
      e.g(i) = inner(*p_.space, e.x, cs.ys().col(i));
    e.gnorm = e.g.norm();
    return e;
  }

 private:
  const Problem& p_;
};

struct NmResult {
  Eigen::VectorXd x;
  double f = kInf;
  int iters = 0;
  bool converged = false;
};

// Plain Nelder-Mead; stop_early short-circuits as soon as a value below the
// given threshold is seen (used by the norm-minimization phase).
NmResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                     const Eigen::VectorXd& x0, double step, int max_iters,
                     double ftol, double stop_below = -kInf) {
  const Eigen::Index p = x0.size();
  std::vector<Eigen::VectorXd> xs(p + 1, x0);
  std::vector<double> fs(p + 1);
  for (Eigen::Index i = 0; i < p; ++i) xs[i + 1](i) += step;
  for (Eigen::Index i = 0; i <= p; ++i) fs[i] = f(xs[i]);

  NmResult res;
  auto order = [&] {
    std::vector<std::size_t> idx(xs.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
    std::vector<Eigen::VectorXd> nx;
    std::vector<double> nf;
    for (auto i : idx) {
      nx.push_back(xs[i]);
      nf.push_back(fs[i]);
    }
    xs = std::move(nx);
    fs = std::move(nf);
  };
  order();

  int it = 0;
  double last_best = fs.front();
  int stalled_for = 0;
  for (; it < max_iters; ++it) {
    if (fs.front() < stop_below) break;
    if (std::abs(fs.back() - fs.front()) <=
        ftol * (1.0 + std::abs(fs.front()))) {
      res.converged = true;
      break;
    }
    // No meaningful improvement for a whole window: treat as converged
    // (typical when the minimum sits on the feasibility wall).
    if (last_best - fs.front() <= 1e-12 * (1.0 + std::abs(fs.front()))) {
      if (++stalled_for >= 60) {
        res.converged = true;
        break;
      }
    } else {
      stalled_for = 0;
      last_best = fs.front();
    }
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(p);
    for (Eigen::Index i = 0; i < p; ++i) centroid += xs[i];
    centroid /= static_cast<double>(p);

    const Eigen::VectorXd xr = centroid + (centroid - xs.back());
    const double fr = f(xr);
    if (fr < fs.front()) {
      const Eigen::VectorXd xe = centroid + 2.0 * (centroid - xs.back());
      const double fe = f(xe);
      if (fe < fr) {
        xs.back() = xe;
        fs.back() = fe;
      } else {
        xs.back() = xr;
        fs.back() = fr;
      }
    } else if (fr < fs[p - 1]) {
      xs.back() = xr;
      fs.back() = fr;
    } else {
      const Eigen::VectorXd xc = centroid + 0.5 * (xs.back() - centroid);
      const double fc = f(xc);
      if (fc < fs.back()) {
        xs.back() = xc;
        fs.back() = fc;
      } else {
        for (Eigen::Index i = 1; i <= p; ++i) {
          xs[i] = xs.front() + 0.5 * (xs[i] - xs.front());
          fs[i] = f(xs[i]);
        }
      }
    }
    order();
  }
  res.x = xs.front();
  res.f = fs.front();
  res.iters = it;
  return res;
}

}  // namespace

RegionEstimate region_radius(const Problem& problem, const KVectors& k) {
  const auto& cs = *k.constraints;
  const ProjectionPair pair = build_projections(k);
  const NormEstimate q = operator_norm(compose(problem.A, pair.P));
  if (!(q.value < 1.0))
    throw ContractionError("region_radius: |A P_k| = " +
                           std::to_string(q.value) + " >= 1");

  RegionEstimate est;
  est.norm_APk = q.value;
  est.exact = (cs.m() <= 1);

  // |A Pt_eta| over admissible unit eta is governed by A restricted to the
  // orthogonal complement of span{y_i}: Qperp x = sum_a c_a <x, c_a>.
  const Eigen::Index n = cs.space()->dim();
  Eigen::MatrixXd WC = cs.complement();
  for (Eigen::Index i = 0; i < n; ++i) WC.row(i) *= cs.space()->weights()(i);
  const Eigen::MatrixXd Qperp = cs.complement() * WC.transpose();
  const double s_max =
      operator_norm({problem.space, problem.A.matrix * Qperp}).value;

  est.sup_APt_eta = (cs.m() > 1) ? static_cast<double>(cs.m()) * s_max : s_max;
  if (est.sup_APt_eta == 0.0) {
    est.unbounded = true;
    est.epsilon = kInf;
  } else {
    est.epsilon = (1.0 - q.value) / est.sup_APt_eta;
  }
  return est;
}

namespace {

SolveReport finish(const Problem& problem, const Eval& e, int search_iters,
                   SolveStatus proposed, std::vector<double> history = {}) {
  SolveReport r;
  r.k = e.k;
  r.norm_APk = e.qest;
  r.search_iters = search_iters;
  r.neumann_terms = e.terms;
  r.region_radius = kNan;
  const Eigen::Index n = problem.space->dim();
  if (e.x.size() == n) {
    r.x = e.x;
    r.residual = e.g;
    r.equation_residual =
        norm(*problem.space, problem.A.matrix * e.x + problem.phi - e.x);
    r.constraint_residual =
        e.g.size() > 0 ? e.g.cwiseAbs().maxCoeff() : 0.0;
  } else {
    r.x = Eigen::VectorXd::Zero(n);
    r.residual = e.g;
    r.equation_residual = kNan;
    r.constraint_residual = kNan;
  }
  if (proposed == SolveStatus::Solved) {
    const double bound = 10.0 * problem.settings.residual_tol;
    if (!(r.equation_residual <= bound && r.constraint_residual <= bound))
      proposed = SolveStatus::ResidualNonzero;
  }
  if (e.feasible) {
    try {
      r.region_radius = region_radius(problem, e.k).epsilon;
    } catch (const Error&) {
      r.region_radius = kNan;
    }
  }
  r.status = proposed;
  r.residual_history = std::move(history);
  return r;
}

// Unconstrained path: P is the identity, no residual condition, no search.
SolveReport solve_unconstrained(const Problem& problem) {
  SolveReport r;
  const Eigen::Index n = problem.space->dim();
  r.k.constraints = problem.constraints;
  r.k.coeffs = Eigen::MatrixXd(n, 0);
  r.k.ks = Eigen::MatrixXd(n, 0);
  r.norm_APk = operator_norm(problem.A);
  r.residual = Eigen::VectorXd(0);
  r.region_radius = kNan;
  r.x = Eigen::VectorXd::Zero(n);
  if (!(r.norm_APk.value < 1.0)) {
    r.status = SolveStatus::NormGeOne;
    r.equation_residual = kNan;
    r.constraint_residual = kNan;
    return r;
  }
  try {
    if (problem.settings.direct_solve) {
      r.x = dense_solve(*problem.space, problem.A.matrix, problem.phi);
      r.neumann_terms = 0;
    } else {
      std::tie(r.x, r.neumann_terms) =
          series_sum(*problem.space, problem.A.matrix, problem.phi,
                     r.norm_APk.value, problem.settings);
    }
  } catch (const SeriesNotConverged&) {
    r.status = SolveStatus::SearchFailed;
    r.equation_residual = kNan;
    r.constraint_residual = kNan;
    return r;
  }
  r.equation_residual =
      norm(*problem.space, problem.A.matrix * r.x + problem.phi - r.x);
  r.constraint_residual = 0.0;
  r.status = r.equation_residual <= 10.0 * problem.settings.residual_tol
                 ? SolveStatus::Solved
                 : SolveStatus::ResidualNonzero;
  return r;
}

}  // namespace

SolveReport solve_constrained(const Problem& problem, const KVectors& k0) {
  const auto& cs = *problem.constraints;
  const Eigen::Index m = cs.m();
  if (m == 0) return solve_unconstrained(problem);

  const SolverSettings& s = problem.settings;
  Evaluator ev(problem);
  const Eigen::Index p = ev.rows() * ev.cols();

  Eigen::VectorXd c = Eigen::Map<const Eigen::VectorXd>(
      k0.coeffs.data(), k0.coeffs.size());
  if (c.size() != p)
    throw DimensionError("solve_constrained: k0 coefficients have wrong shape");

  Eval cur = ev.at(c);
  Eval best = cur;
  auto consider = [&](const Eval& e) {
    if (e.feasible && (!best.feasible || e.gnorm < best.gnorm)) best = e;
  };
  int search_iters = 0;
  bool budget_exhausted = false;
  std::vector<double> history;
  if (cur.feasible) history.push_back(cur.gnorm);

  // Phase 0: if the start is not contractive, hunt for |A P_k| < 1 by
  // Nelder-Mead on the norm itself before any root finding.
  if (!cur.feasible && s.search != SearchMode::None) {
    log_info("start point has |A P_k| >= 1; minimizing the norm first");
    auto qof = [&](const Eigen::VectorXd& cc) { return ev.at(cc).q; };
    NmResult nm = nelder_mead(qof, c, 0.25 * (1.0 + c.norm()),
                              s.search_max_iters, 1e-12, 1.0 - 1e-9);
    search_iters += nm.iters;
    if (nm.f < 1.0) {
      c = nm.x;
      cur = ev.at(c);
      consider(cur);
      if (cur.feasible) history.push_back(cur.gnorm);
    }
  }
  consider(cur);

  if (!cur.feasible) {
    // Never found a contractive point (k0 and all probes).
    SolveStatus st = cur.series_failed ? SolveStatus::SearchFailed
                                       : SolveStatus::NormGeOne;
    return finish(problem, cur, search_iters, st, std::move(history));
  }

  bool stalled = false;
  if (s.search == SearchMode::Newton) {
    // Damped Newton with forward-difference Jacobian; a step is accepted
    // only if |g| strictly decreases.
    while (cur.gnorm > s.residual_tol && search_iters < s.search_max_iters) {
      const double h = s.fd_step * (1.0 + c.norm());
      Eigen::MatrixXd J(m, p);
      for (Eigen::Index l = 0; l < p; ++l) {
        Eigen::VectorXd cp = c;
        cp(l) += h;
        const Eval probe = ev.at(cp);
        if (probe.feasible) {
          J.col(l) = (probe.g - cur.g) / h;
          consider(probe);
        } else {
          J.col(l).setZero();
        }
      }
      const Eigen::VectorXd d =
          -Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(J).solve(
              cur.g);
      if (!d.allFinite() || d.norm() == 0.0) {
        stalled = true;
        break;
      }
      double alpha = 1.0;
      bool accepted = false;
      for (int halve = 0; halve < 30; ++halve) {
        const Eval trial = ev.at(c + alpha * d);
        if (trial.feasible && trial.gnorm < cur.gnorm) {
          c += alpha * d;
          cur = trial;
          consider(trial);
          history.push_back(cur.gnorm);
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!accepted) {
        stalled = true;
        break;
      }
      ++search_iters;
    }
    if (search_iters >= s.search_max_iters && cur.gnorm > s.residual_tol)
      budget_exhausted = true;
  }

  if ((s.search == SearchMode::NelderMead ||
       (s.search == SearchMode::Newton && stalled)) &&
      cur.gnorm > s.residual_tol && !budget_exhausted) {
    auto fobj = [&](const Eigen::VectorXd& cc) {
      const Eval e = ev.at(cc);
      consider(e);
      if (!e.feasible) return 1e6 * (1.0 + std::min(e.q, 1e6));
      return e.gnorm * e.gnorm;
    };
    const int budget = s.search_max_iters - search_iters;
    NmResult nm = nelder_mead(fobj, c, 0.25 * (1.0 + c.norm()),
                              std::max(budget, 0), 1e-16,
                              s.residual_tol * s.residual_tol);
    search_iters += nm.iters;
    const Eval e = ev.at(nm.x);
    consider(e);
    if (e.feasible && e.gnorm < cur.gnorm) {
      cur = e;
      history.push_back(cur.gnorm);
    }
    if (!nm.converged && cur.gnorm > s.residual_tol &&
        search_iters >= s.search_max_iters)
      budget_exhausted = true;
  }

  if (best.feasible && best.gnorm <= s.residual_tol)
    return finish(problem, best, search_iters, SolveStatus::Solved,
                  std::move(history));
  if (budget_exhausted)
    return finish(problem, best, search_iters, SolveStatus::SearchFailed,
                  std::move(history));
  return finish(problem, best, search_iters, SolveStatus::ResidualNonzero,
                std::move(history));
}

SolveReport solve_constrained(const Problem& problem) {
  const auto& cs = *problem.constraints;
  if (cs.m() == 0) return solve_unconstrained(problem);
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(
      cs.space()->dim() - cs.m(), cs.m());
  return solve_constrained(problem, build_k(problem.constraints, zero));
}

}  // namespace fredproj
