#include "acsparse/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "acsparse/errors.hpp"

namespace acsparse {

SelectionVector top_k_indicator(const Eigen::VectorXd& values, Index k) {
  const Index m = values.size();
  if (k < 0 || k > m) {
    throw DimensionError("top-k: k = " + std::to_string(k) + " outside [0, " + std::to_string(m) + "]");
  }
  for (Index i = 0; i < m; ++i) {
    if (std::isnan(values[i])) throw DimensionError("top-k: NaN at index " + std::to_string(i));
  }
  std::vector<Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Index{0});
  auto before = [&](Index a, Index b) {
    return values[a] > values[b] || (values[a] == values[b] && a < b);
  };
  std::partial_sort(order.begin(), order.begin() + k, order.end(), before);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(m);
  for (Index i = 0; i < k; ++i) s[order[static_cast<std::size_t>(i)]] = 1.0;
  return SelectionVector(std::move(s));
}

SelectionVector naive_topk(const SparsificationProblem& problem) {
  const auto& cand = problem.candidate_edges();
  Eigen::VectorXd kappa(static_cast<Index>(cand.size()));
  for (std::size_t k = 0; k < cand.size(); ++k) kappa[static_cast<Index>(k)] = cand[k].weight;
  return top_k_indicator(kappa, problem.budget());
}

}  // namespace acsparse
