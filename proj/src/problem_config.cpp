#include "fredproj/problem_config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fredproj/csv.hpp"
#include "fredproj/errors.hpp"
#include "fredproj/json_writer.hpp"

namespace fredproj {

namespace {

using nlohmann::json;

std::size_t line_of_byte(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

Eigen::MatrixXd matrix_from_json(const json& rows, const std::string& key) {
  if (!rows.is_array() || rows.empty() || !rows.front().is_array())
    throw ConfigError(key + ": expected an array of rows");
  const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index c = static_cast<Eigen::Index>(rows.front().size());
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != c)
      throw ConfigError(key + ": ragged rows");
    for (Eigen::Index j = 0; j < c; ++j)
      m(i, j) = row[static_cast<std::size_t>(j)].get<double>();
  }
  return m;
}

Eigen::VectorXd vector_from_json(const json& arr, const std::string& key) {
  if (!arr.is_array()) throw ConfigError(key + ": expected an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v(i) = arr[static_cast<std::size_t>(i)].get<double>();
  return v;
}

// Matrix given inline ("matrix"/jkey) or as a CSV path ("csv").
Eigen::MatrixXd load_matrix_field(const json& obj, const std::string& jkey,
                                  const std::filesystem::path& base,
                                  const std::string& where) {
  if (obj.contains(jkey)) return matrix_from_json(obj.at(jkey), where);
  if (obj.contains("csv"))
    return load_csv_matrix(base / obj.at("csv").get<std::string>());
  throw ConfigError(where + ": need either \"" + jkey + "\" or \"csv\"");
}

Eigen::VectorXd load_vector_field(const json& obj, const std::string& jkey,
                                  const std::filesystem::path& base,
                                  const std::string& where) {
  if (obj.contains(jkey)) return vector_from_json(obj.at(jkey), where);
  if (obj.contains("csv"))
    return load_csv_vector(base / obj.at("csv").get<std::string>());
  throw ConfigError(where + ": need either \"" + jkey + "\" or \"csv\"");
}

}  // namespace

ProblemConfig load_problem_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ":" +
                      std::to_string(line_of_byte(text, e.byte)) + ": " +
                      e.what());
  }

  const std::filesystem::path base = path.parent_path();
  ProblemConfig pc;

  if (!doc.contains("operator"))
    throw ConfigError("config: missing \"operator\"");
  Eigen::MatrixXd A = load_matrix_field(doc.at("operator"), "matrix", base,
                                        "operator");
  if (A.rows() != A.cols())
    throw ConfigError("operator: matrix must be square");
  const Eigen::Index dim = A.rows();

  Eigen::VectorXd weights = Eigen::VectorXd::Ones(dim);
  std::optional<Eigen::VectorXd> nodes;
  if (doc.contains("space")) {
    const auto& sp = doc.at("space");
    if (sp.contains("weights"))
      weights = vector_from_json(sp.at("weights"), "space.weights");
    else if (sp.contains("weights_csv"))
      weights = load_csv_vector(base / sp.at("weights_csv").get<std::string>());
    if (sp.contains("nodes"))
      nodes = vector_from_json(sp.at("nodes"), "space.nodes");
    else if (sp.contains("nodes_csv"))
      nodes = load_csv_vector(base / sp.at("nodes_csv").get<std::string>());
    if (sp.contains("dim") &&
        sp.at("dim").get<Eigen::Index>() != dim)
      throw ConfigError("space.dim does not match the operator shape");
  }
  if (weights.size() != dim)
    throw ConfigError("space.weights length does not match the operator");
  auto space = Space::weighted(std::move(weights), std::move(nodes));

  pc.problem.space = space;
  pc.problem.A = LinearOperator{space, std::move(A)};

  if (!doc.contains("phi")) throw ConfigError("config: missing \"phi\"");
  pc.problem.phi = load_vector_field(doc.at("phi"), "values", base, "phi");
  if (pc.problem.phi.size() != dim)
    throw ConfigError("phi length does not match the operator");

  if (doc.contains("constraints")) {
    Eigen::MatrixXd ys = load_matrix_field(doc.at("constraints"), "ys", base,
                                           "constraints");
    if (ys.cols() != dim)
      throw ConfigError("constraints: each row must have dim entries");
    std::vector<Eigen::VectorXd> rows;
    rows.reserve(static_cast<std::size_t>(ys.rows()));
    for (Eigen::Index i = 0; i < ys.rows(); ++i)
      rows.push_back(ys.row(i).transpose());
    pc.problem.constraints = ConstraintSet::build(space, rows);
  } else {
    pc.problem.constraints = ConstraintSet::none(space);
  }

  if (doc.contains("k_init")) {
    pc.k_init = load_matrix_field(doc.at("k_init"), "coeffs", base, "k_init");
    const Eigen::Index m = pc.problem.constraints->m();
    if (pc.k_init->rows() != dim - m || pc.k_init->cols() != m)
      throw ConfigError("k_init.coeffs must be (dim - m) x m");
  }

  if (doc.contains("solver")) {
    const auto& sv = doc.at("solver");
    SolverSettings& s = pc.problem.settings;
    if (sv.contains("neumann_tol")) s.neumann_tol = sv.at("neumann_tol").get<double>();
    if (sv.contains("neumann_max_terms"))
      s.neumann_max_terms = sv.at("neumann_max_terms").get<int>();
    if (sv.contains("residual_tol")) s.residual_tol = sv.at("residual_tol").get<double>();
    if (sv.contains("search"))
      s.search = search_mode_from_string(sv.at("search").get<std::string>());
    if (sv.contains("search_max_iters"))
      s.search_max_iters = sv.at("search_max_iters").get<int>();
    if (sv.contains("fd_step")) s.fd_step = sv.at("fd_step").get<double>();
    if (sv.contains("direct_solve")) s.direct_solve = sv.at("direct_solve").get<bool>();
    if (!(s.neumann_tol > 0.0) || !(s.residual_tol > 0.0) || !(s.fd_step > 0.0))
      throw ConfigError("solver tolerances must be positive");
  }

  return pc;
}

std::filesystem::path save_problem_config(
    const std::filesystem::path& dir, const std::string& name,
    const Problem& problem, const std::optional<Eigen::MatrixXd>& k_init) {
  std::filesystem::create_directories(dir);
  const auto csv_name = [&](const std::string& part) {
    return name + "_" + part + ".csv";
  };
  save_csv_matrix(dir / csv_name("operator"), problem.A.matrix);
  save_csv_vector(dir / csv_name("phi"), problem.phi);

  JsonWriter space_w;
  space_w.field("dim", static_cast<std::int64_t>(problem.space->dim()));
  {
    std::string arr = "[";
    for (Eigen::Index i = 0; i < problem.space->dim(); ++i) {
      if (i) arr += ',';
      arr += JsonWriter::number(problem.space->weights()(i));
    }
    arr += ']';
    space_w.raw_field("weights", arr);
  }
  if (problem.space->nodes()) {
    std::string arr = "[";
    for (Eigen::Index i = 0; i < problem.space->dim(); ++i) {
      if (i) arr += ',';
      arr += JsonWriter::number((*problem.space->nodes())(i));
    }
    arr += ']';
    space_w.raw_field("nodes", arr);
  }

  JsonWriter op_w, phi_w;
  op_w.field("csv", csv_name("operator"));
  phi_w.field("csv", csv_name("phi"));

  JsonWriter root;
  root.raw_field("space", space_w.str());
  root.raw_field("operator", op_w.str());
  root.raw_field("phi", phi_w.str());

  if (problem.constraints->m() > 0) {
    save_csv_matrix(dir / csv_name("constraints"),
                    problem.constraints->ys().transpose());
    JsonWriter cw;
    cw.field("csv", csv_name("constraints"));
    root.raw_field("constraints", cw.str());
  }
  if (k_init) {
    save_csv_matrix(dir / csv_name("k_init"), *k_init);
    JsonWriter kw;
    kw.field("csv", csv_name("k_init"));
    root.raw_field("k_init", kw.str());
  }

  const SolverSettings& s = problem.settings;
  JsonWriter sw;
  sw.field("neumann_tol", s.neumann_tol)
      .field("neumann_max_terms", s.neumann_max_terms)
      .field("residual_tol", s.residual_tol)
      .field("search", to_string(s.search))
      .field("search_max_iters", s.search_max_iters)
      .field("fd_step", s.fd_step)
      .field("direct_solve", s.direct_solve);
  root.raw_field("solver", sw.str());

  const std::filesystem::path out = dir / (name + ".json");
  std::ofstream of(out);
  if (!of) throw ConfigError("cannot write config: " + out.string());
  of << root.str() << "\n";
  return out;
}

void apply_override(SolverSettings& settings, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override must be key=value: " + spec);
  const std::string key = spec.substr(0, eq);
  const std::string value = spec.substr(eq + 1);
  try {
    if (key == "neumann_tol") settings.neumann_tol = std::stod(value);
    else if (key == "neumann_max_terms") settings.neumann_max_terms = std::stoi(value);
    else if (key == "residual_tol") settings.residual_tol = std::stod(value);
    else if (key == "search") settings.search = search_mode_from_string(value);
    else if (key == "search_max_iters") settings.search_max_iters = std::stoi(value);
    else if (key == "fd_step") settings.fd_step = std::stod(value);
    else if (key == "direct_solve") settings.direct_solve = (value == "true" || value == "1");
    else throw ConfigError("unknown override key: " + key);
  } catch (const std::invalid_argument&) {
    throw ConfigError("cannot parse override value: " + spec);
  } catch (const std::out_of_range&) {
    throw ConfigError("override value out of range: " + spec);
  }
  if (!(settings.neumann_tol > 0.0) || !(settings.residual_tol > 0.0) ||
      !(settings.fd_step > 0.0))
    throw ConfigError("solver tolerances must be positive");
}

}  // namespace fredproj
