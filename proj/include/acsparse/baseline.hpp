#pragma once

#include "acsparse/graph.hpp"

namespace acsparse {

/// Topology-unaware baseline: the `budget` candidates with the largest
/// weights, ties broken by ascending candidate index.
SelectionVector naive_topk(const SparsificationProblem& problem);

/// Indicator of the k largest entries of `values`, ties broken by ascending
/// index. Throws DimensionError unless 0 <= k <= size, and on NaN input.
SelectionVector top_k_indicator(const Eigen::VectorXd& values, Index k);

}  // namespace acsparse
