#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fredproj/discretize.hpp"
#include "fredproj/errors.hpp"
#include "fredproj/lemma_trials.hpp"
#include "fredproj/problem_config.hpp"
#include "fredproj/projection.hpp"
#include "fredproj/series_checks.hpp"
#include "fredproj/solver.hpp"
#include "fredproj/tensor.hpp"

namespace py = pybind11;
using namespace fredproj;

namespace {

// The C++ side shares immutable objects as shared_ptr<const T>; pybind11
// holders want non-const. The objects are immutable by construction, so
// shedding const at the boundary is safe.
std::shared_ptr<Space> mut(SpacePtr p) {
  return std::const_pointer_cast<Space>(std::move(p));
}
std::shared_ptr<ConstraintSet> mut(ConstraintSetPtr p) {
  return std::const_pointer_cast<ConstraintSet>(std::move(p));
}

SolverSettings settings_from_kwargs(double neumann_tol, int neumann_max_terms,
                                    double residual_tol,
                                    const std::string& search,
                                    int search_max_iters, double fd_step,
                                    bool direct_solve) {
  SolverSettings s;
  s.neumann_tol = neumann_tol;
  s.neumann_max_terms = neumann_max_terms;
  s.residual_tol = residual_tol;
  s.search = search_mode_from_string(search);
  s.search_max_iters = search_max_iters;
  s.fd_step = fd_step;
  s.direct_solve = direct_solve;
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Constrained solver for A x + phi = x under <x, y_i> = 0: oblique "
      "projections, Neumann series, solution-region radii, and the "
      "series-identity certification checks.";

  py::register_exception<DimensionError>(m, "DimensionError");
  py::register_exception<DependentConstraintError>(m, "DependentConstraintError");
  py::register_exception<DependentKError>(m, "DependentKError");
  py::register_exception<AdmissibilityError>(m, "AdmissibilityError");
  py::register_exception<ContractionError>(m, "ContractionError");
  py::register_exception<SeriesNotConverged>(m, "SeriesNotConvergedError");
  py::register_exception<SingularSystemError>(m, "SingularSystemError");
  py::register_exception<UnsummableFamilyError>(m, "UnsummableFamilyError");
  py::register_exception<KernelEvalError>(m, "KernelEvalError");
  py::register_exception<ConfigError>(m, "ConfigError");

  py::class_<Space, std::shared_ptr<Space>>(m, "Space")
      .def_static("unit", [](Eigen::Index dim) { return mut(Space::unit(dim)); },
                  py::arg("dim"))
      .def_static(
          "weighted",
          [](Eigen::VectorXd weights, std::optional<Eigen::VectorXd> nodes) {
            return mut(Space::weighted(std::move(weights), std::move(nodes)));
          },
          py::arg("weights"), py::arg("nodes") = std::nullopt)
      .def_property_readonly("dim", &Space::dim)
      .def_property_readonly("weights",
                             [](const Space& s) { return s.weights(); })
      .def_property_readonly("nodes", [](const Space& s) { return s.nodes(); });

  m.def(
      "inner",
      [](const std::shared_ptr<Space>& s, const Eigen::VectorXd& u,
         const Eigen::VectorXd& v) { return inner(*s, u, v); },
      py::arg("space"), py::arg("u"), py::arg("v"),
      "Weighted inner product sum_i w_i u_i v_i.");

  m.def(
      "gram_schmidt",
      [](const std::shared_ptr<Space>& s,
         const std::vector<Eigen::VectorXd>& vs, double tol) {
        return gram_schmidt(*s, vs, tol);
      },
      py::arg("space"), py::arg("vectors"), py::arg("tol") = 1e-10);

  py::class_<NormEstimate>(m, "NormEstimate")
      .def_readonly("value", &NormEstimate::value)
      .def_readonly("iterations", &NormEstimate::iterations)
      .def_readonly("tolerance", &NormEstimate::tolerance)
      .def_readonly("converged", &NormEstimate::converged)
      .def_property_readonly("method",
                             [](const NormEstimate& e) {
                               return e.method == NormMethod::ExactSvd
                                          ? "exact-svd"
                                          : "power-iteration";
                             })
      .def("__repr__", [](const NormEstimate& e) {
        return "<NormEstimate value=" + std::to_string(e.value) + ">";
      });

  m.def(
      "operator_norm",
      [](const std::shared_ptr<Space>& s, const Eigen::MatrixXd& matrix,
         Eigen::Index svd_cutoff, double tol, int max_iters) {
        NormConfig cfg;
        cfg.svd_cutoff = svd_cutoff;
        cfg.tol = tol;
        cfg.max_iters = max_iters;
        return operator_norm({s, matrix}, cfg);
      },
      py::arg("space"), py::arg("matrix"), py::arg("svd_cutoff") = 512,
      py::arg("tol") = 1e-10, py::arg("max_iters") = 10000,
      "Operator norm induced by the weighted inner product.");

  py::class_<ConstraintSet, std::shared_ptr<ConstraintSet>>(m, "ConstraintSet")
      .def_property_readonly("m", &ConstraintSet::m)
      .def_property_readonly("ys", [](const ConstraintSet& c) { return c.ys(); })
      .def_property_readonly(
          "complement", [](const ConstraintSet& c) { return c.complement(); })
      .def_property_readonly(
          "space", [](const ConstraintSet& c) { return mut(c.space()); });

  m.def(
      "build_constraints",
      [](const std::shared_ptr<Space>& s,
         const std::vector<Eigen::VectorXd>& ys, double tol) {
        return mut(ConstraintSet::build(s, ys, tol));
      },
      py::arg("space"), py::arg("ys"), py::arg("tol") = 1e-10,
      "Orthonormalize constraint vectors and complete the basis.");

  py::class_<KVectors>(m, "KVectors")
      .def_readonly("coeffs", &KVectors::coeffs)
      .def_readonly("ks", &KVectors::ks);

  m.def(
      "build_k",
      [](const std::shared_ptr<ConstraintSet>& cs, const Eigen::MatrixXd& coeffs) {
        return build_k(cs, coeffs);
      },
      py::arg("constraints"), py::arg("coeffs"));
  m.def(
      "k_from_vectors",
      [](const std::shared_ptr<ConstraintSet>& cs, const Eigen::MatrixXd& ks) {
        return k_from_vectors(cs, ks);
      },
      py::arg("constraints"), py::arg("ks"));

  py::class_<ProjectionPair>(m, "ProjectionPair")
      .def_property_readonly("P",
                             [](const ProjectionPair& p) { return p.P.matrix; })
      .def_property_readonly(
          "Pt", [](const ProjectionPair& p) { return p.Pt.matrix; });

  m.def("build_projections", &build_projections, py::arg("k"));
  m.def(
      "check_projected_constraints",
      [](const ProjectionPair& pair, const Eigen::VectorXd& x) {
        return check_projected_constraints(pair, x);
      },
      py::arg("pair"), py::arg("x"));

  m.def(
      "neumann_solve",
      [](const std::shared_ptr<Space>& s, const Eigen::MatrixXd& A,
         const Eigen::MatrixXd& P, const Eigen::VectorXd& phi,
         double neumann_tol, int neumann_max_terms, bool direct_solve) {
        SolverSettings settings;
        settings.neumann_tol = neumann_tol;
        settings.neumann_max_terms = neumann_max_terms;
        settings.direct_solve = direct_solve;
        return neumann_solve({s, A}, {s, P}, phi, settings);
      },
      py::arg("space"), py::arg("A"), py::arg("P"), py::arg("phi"),
      py::arg("neumann_tol") = 1e-10, py::arg("neumann_max_terms") = 10000,
      py::arg("direct_solve") = false,
      "Returns (x, terms); terms is 0 on the dense path.");

  m.def(
      "direct_solve_oracle",
      [](const std::shared_ptr<Space>& s, const Eigen::MatrixXd& A,
         const Eigen::MatrixXd& P, const Eigen::VectorXd& phi) {
        return direct_solve_oracle({s, A}, {s, P}, phi);
      },
      py::arg("space"), py::arg("A"), py::arg("P"), py::arg("phi"));

  py::class_<SolveReport>(m, "SolveReport")
      .def_property_readonly(
          "status", [](const SolveReport& r) { return to_string(r.status); })
      .def_readonly("x", &SolveReport::x)
      .def_readonly("residual", &SolveReport::residual)
      .def_readonly("equation_residual", &SolveReport::equation_residual)
      .def_readonly("constraint_residual", &SolveReport::constraint_residual)
      .def_readonly("neumann_terms", &SolveReport::neumann_terms)
      .def_readonly("search_iters", &SolveReport::search_iters)
      .def_readonly("region_radius", &SolveReport::region_radius)
      .def_readonly("residual_history", &SolveReport::residual_history)
      .def_property_readonly(
          "norm_APk", [](const SolveReport& r) { return r.norm_APk.value; })
      .def_property_readonly("k_coeffs",
                             [](const SolveReport& r) { return r.k.coeffs; })
      .def_property_readonly("ks", [](const SolveReport& r) { return r.k.ks; })
      .def_property_readonly("exit_code", [](const SolveReport& r) {
        return exit_code_for(r.status);
      })
      .def("__repr__", [](const SolveReport& r) {
        return "<SolveReport status=" + to_string(r.status) + ">";
      });

  py::class_<RegionEstimate>(m, "RegionEstimate")
      .def_readonly("norm_APk", &RegionEstimate::norm_APk)
      .def_readonly("sup_APt_eta", &RegionEstimate::sup_APt_eta)
      .def_readonly("epsilon", &RegionEstimate::epsilon)
      .def_readonly("exact", &RegionEstimate::exact)
      .def_readonly("unbounded", &RegionEstimate::unbounded);

  py::class_<Problem>(m, "Problem")
      .def_property_readonly("space",
                             [](const Problem& p) { return mut(p.space); })
      .def_property_readonly("A", [](const Problem& p) { return p.A.matrix; })
      .def_readonly("phi", &Problem::phi)
      .def_property_readonly(
          "constraints", [](const Problem& p) { return mut(p.constraints); });

  m.def(
      "make_problem",
      [](const std::shared_ptr<Space>& s, const Eigen::MatrixXd& A,
         const Eigen::VectorXd& phi,
         const std::optional<std::vector<Eigen::VectorXd>>& ys,
         double neumann_tol, int neumann_max_terms, double residual_tol,
         const std::string& search, int search_max_iters, double fd_step,
         bool direct_solve) {
        Problem p;
        p.space = s;
        p.A = {s, A};
        p.phi = phi;
        p.constraints = ys && !ys->empty() ? ConstraintSet::build(s, *ys)
                                           : ConstraintSet::none(s);
        p.settings = settings_from_kwargs(neumann_tol, neumann_max_terms,
                                          residual_tol, search,
                                          search_max_iters, fd_step,
                                          direct_solve);
        return p;
      },
      py::arg("space"), py::arg("A"), py::arg("phi"),
      py::arg("ys") = std::nullopt, py::arg("neumann_tol") = 1e-10,
      py::arg("neumann_max_terms") = 10000, py::arg("residual_tol") = 1e-9,
      py::arg("search") = "newton", py::arg("search_max_iters") = 200,
      py::arg("fd_step") = 1e-6, py::arg("direct_solve") = false);

  m.def(
      "solve",
      [](const Problem& p, const std::optional<Eigen::MatrixXd>& k0_coeffs) {
        if (k0_coeffs) return solve_constrained(p, build_k(p.constraints, *k0_coeffs));
        return solve_constrained(p);
      },
      py::arg("problem"), py::arg("k0_coeffs") = std::nullopt,
      "Root search over the free coefficients of k; failures are statuses.");

  m.def(
      "residual",
      [](const Problem& p, const Eigen::MatrixXd& k_coeffs) {
        return residual(p, build_k(p.constraints, k_coeffs));
      },
      py::arg("problem"), py::arg("k_coeffs"));

  m.def(
      "region_radius",
      [](const Problem& p, const std::optional<Eigen::MatrixXd>& k_coeffs) {
        const auto& cs = *p.constraints;
        const Eigen::MatrixXd c =
            k_coeffs ? *k_coeffs
                     : Eigen::MatrixXd::Zero(cs.space()->dim() - cs.m(), cs.m());
        return region_radius(p, build_k(p.constraints, c));
      },
      py::arg("problem"), py::arg("k_coeffs") = std::nullopt);

  // pairing function and the certification checks
  m.def("sigma", &sigma, py::arg("i"),
        "Anti-diagonal pairing: index -> (a, b).");
  m.def("sigma_index", &sigma_index, py::arg("a"), py::arg("b"));

  py::class_<CheckReport>(m, "CheckReport")
      .def_readonly("name", &CheckReport::name)
      .def_readonly("passed", &CheckReport::passed)
      .def_readonly("discrepancy", &CheckReport::discrepancy)
      .def_readonly("terms_used", &CheckReport::terms_used)
      .def_readonly("seed", &CheckReport::seed)
      .def_readonly("detail", &CheckReport::detail)
      .def("__repr__", [](const CheckReport& r) {
        return "<CheckReport " + r.name + " passed=" +
               (r.passed ? std::string("True") : std::string("False")) + ">";
      });

  m.def("lemma_names", [] { return lemma_names(); });
  m.def("run_lemma_trial", &run_lemma_trial, py::arg("name"), py::arg("seed"));

  // quadrature / discretization / corpus
  py::class_<Quadrature>(m, "Quadrature")
      .def_readonly("a", &Quadrature::a)
      .def_readonly("b", &Quadrature::b)
      .def_readonly("n", &Quadrature::n)
      .def_readonly("nodes", &Quadrature::nodes)
      .def_readonly("weights", &Quadrature::weights);

  m.def("gauss_legendre", &gauss_legendre, py::arg("a"), py::arg("b"),
        py::arg("n"));
  m.def("trapezoid", &trapezoid, py::arg("a"), py::arg("b"), py::arg("n"));

  py::class_<KernelSpec>(m, "KernelSpec")
      .def_static("separable_poly", &KernelSpec::separable_poly, py::arg("p"),
                  py::arg("q"), py::arg("scale") = 1.0)
      .def_static("sine", &KernelSpec::sine, py::arg("scale") = 1.0)
      .def_static("explicit_matrix", &KernelSpec::explicit_matrix,
                  py::arg("values"), py::arg("scale") = 1.0);

  m.def(
      "nystrom",
      [](const KernelSpec& k, const Quadrature& q) {
        LinearOperator A = nystrom(k, q);
        return py::make_tuple(mut(A.space), A.matrix);
      },
      py::arg("kernel"), py::arg("quad"),
      "Returns (space, matrix) of the discretized integral operator.");

  py::class_<CorpusProblem>(m, "CorpusProblem")
      .def_readonly("name", &CorpusProblem::name)
      .def_readonly("problem", &CorpusProblem::problem)
      .def_readonly("reference", &CorpusProblem::reference)
      .def_readonly("reference_tol", &CorpusProblem::reference_tol);

  m.def("corpus_names", &corpus_names);
  m.def("corpus", &corpus, py::arg("name"));

  m.def(
      "load_problem_config",
      [](const std::string& path) {
        ProblemConfig pc = load_problem_config(path);
        return py::make_tuple(pc.problem, pc.k_init);
      },
      py::arg("path"), "Returns (problem, k_init_or_None).");
}
