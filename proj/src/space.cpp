#include "fredproj/space.hpp"

#include <cmath>
#include <string>

#include "fredproj/errors.hpp"

namespace fredproj {

Space::Space(Eigen::VectorXd weights, std::optional<Eigen::VectorXd> nodes)
    : weights_(std::move(weights)), nodes_(std::move(nodes)) {
  if (weights_.size() < 1) throw DimensionError("Space: dim must be >= 1");
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!(weights_(i) > 0.0))
      throw ConfigError("Space: weight " + std::to_string(i) +
                        " is not positive");
  }
  if (nodes_) {
    if (nodes_->size() != weights_.size())
      throw DimensionError("Space: nodes length does not match dim");
    for (Eigen::Index i = 1; i < nodes_->size(); ++i) {
      if (!((*nodes_)(i) > (*nodes_)(i - 1)))
        throw ConfigError("Space: nodes must be strictly increasing");
    }
  }
}

SpacePtr Space::unit(Eigen::Index dim) {
  return std::make_shared<const Space>(Eigen::VectorXd::Ones(dim),
                                       std::nullopt);
}

SpacePtr Space::weighted(Eigen::VectorXd weights,
                         std::optional<Eigen::VectorXd> nodes) {
  return std::make_shared<const Space>(std::move(weights), std::move(nodes));
}

void require_dim(const Space& space, const Eigen::VectorXd& u,
                 const Eigen::VectorXd& v) {
  if (u.size() != space.dim() || v.size() != space.dim())
    throw DimensionError("inner: vector length does not match space dim");
}

double inner(const Space& space, const Eigen::VectorXd& u,
             const Eigen::VectorXd& v) {
  require_dim(space, u, v);
  return (space.weights().array() * u.array() * v.array()).sum();
}

double inner(const SpaceVector& u, const SpaceVector& v) {
  if (u.space->dim() != v.space->dim())
    throw DimensionError("inner: vectors belong to spaces of different dim");
  return inner(*u.space, u.values, v.values);
}

double norm(const Space& space, const Eigen::VectorXd& u) {
  return std::sqrt(inner(space, u, u));
}

double norm(const SpaceVector& u) { return norm(*u.space, u.values); }

std::vector<Eigen::VectorXd> gram_schmidt(
    const Space& space, const std::vector<Eigen::VectorXd>& vs, double tol) {
  if (vs.empty()) throw DimensionError("gram_schmidt: empty input family");
  if (!(tol > 0.0)) throw ConfigError("gram_schmidt: tol must be > 0");

  std::vector<Eigen::VectorXd> out;
  out.reserve(vs.size());
  for (std::size_t idx = 0; idx < vs.size(); ++idx) {
    Eigen::VectorXd r = vs[idx];
    if (r.size() != space.dim())
      throw DimensionError("gram_schmidt: vector length does not match dim");
    // MGS sweep, then one reorthogonalization sweep.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : out) r -= inner(space, r, q) * q;
    }
    const double rn = norm(space, r);
    if (rn < tol)
      throw DependentConstraintError(
          idx, "gram_schmidt: vector " + std::to_string(idx) +
                   " is dependent (residual norm " + std::to_string(rn) + ")");
    out.push_back(r / rn);
  }
  return out;
}

std::vector<SpaceVector> gram_schmidt(const std::vector<SpaceVector>& vs,
                                      double tol) {
  if (vs.empty()) throw DimensionError("gram_schmidt: empty input family");
  std::vector<Eigen::VectorXd> raw;
  raw.reserve(vs.size());
  for (const auto& v : vs) raw.push_back(v.values);
  auto ortho = gram_schmidt(*vs.front().space, raw, tol);
  std::vector<SpaceVector> out;
  out.reserve(ortho.size());
  for (auto& o : ortho) out.push_back({vs.front().space, std::move(o)});
  return out;
}

}  // namespace fredproj
