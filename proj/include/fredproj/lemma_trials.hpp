#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fredproj/linear_operator.hpp"
#include "fredproj/projection.hpp"
#include "fredproj/rng.hpp"
#include "fredproj/series_checks.hpp"

namespace fredproj {

/// Gaussian matrix rescaled to the given weighted operator norm.
LinearOperator random_operator_with_norm(Rng& rng, SpacePtr space,
                                         double target_norm);

/// Unit vector (weighted norm) orthogonal to every column of ys.
Eigen::VectorXd random_unit_orthogonal(Rng& rng, const Space& space,
                                       const Eigen::MatrixXd& ys);

/// Names accepted by run_lemma_trial / the lemmas CLI, in output order.
const std::vector<std::string>& lemma_names();

/// One seeded, reproducible trial of the named check. Hypothesis-violating
/// draws are regenerated at the source, never counted as passes.
CheckReport run_lemma_trial(const std::string& name, std::uint64_t seed);

}  // namespace fredproj
