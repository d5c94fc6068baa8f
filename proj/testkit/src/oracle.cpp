#include "acsparse/testkit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <Eigen/Eigenvalues>

#include "acsparse/errors.hpp"
#include "acsparse/fiedler.hpp"

namespace acsparse::testkit {

namespace {

void add_dense_edge(Eigen::MatrixXd& L, const WeightedEdge& e, double scale) {
  const double w = scale * e.weight;
  L(e.u, e.u) += w;
  L(e.v, e.v) += w;
  L(e.u, e.v) -= w;
  L(e.v, e.u) -= w;
}

// Combination of rank r (lexicographic order) of k items out of m.
std::vector<Index> unrank_combination(std::uint64_t r, Index m, Index k) {
  std::vector<Index> c;
  Index next = 0;
  for (Index slot = 0; slot < k; ++slot) {
    for (Index v = next;; ++v) {
      const auto count = binomial(static_cast<std::uint64_t>(m - v - 1), static_cast<std::uint64_t>(k - slot - 1));
      if (r < count) {
        c.push_back(v);
        next = v + 1;
        break;
      }
      r -= count;
    }
  }
  return c;
}

bool next_combination(std::vector<Index>& c, Index m) {
  const Index k = static_cast<Index>(c.size());
  Index i = k - 1;
  while (i >= 0 && c[i] == m - k + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (Index j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

double subset_lambda2(const SparsificationProblem& problem, const Eigen::MatrixXd& fixed,
                      const std::vector<Index>& chosen) {
  Eigen::MatrixXd L = fixed;
  for (Index k : chosen) add_dense_edge(L, problem.candidate_edges()[k], 1.0);
  return fiedler_pair_dense(L).lambda2;
}

struct Best {
  double value = -std::numeric_limits<double>::infinity();
  std::uint64_t rank = std::numeric_limits<std::uint64_t>::max();
  std::vector<Index> chosen;

  void offer(double v, std::uint64_t r, const std::vector<Index>& c) {
    if (v > value || (v == value && r < rank)) {
      value = v;
      rank = r;
      chosen = c;
    }
  }
};

}  // namespace

SparsificationProblem random_problem(const RandomProblemSpec& spec, Index budget) {
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> weight(spec.weight_range.first, spec.weight_range.second);
  const Index n = spec.n;

  std::vector<WeightedEdge> fixed;
  std::set<std::pair<Index, Index>> used;
  for (Index i = 1; i < n; ++i) {
    Index parent = i - 1;
    if (spec.fixed_topology == FixedTopology::RandomTree) {
      parent = std::uniform_int_distribution<Index>(0, i - 1)(rng);
    }
    fixed.push_back({parent, i, weight(rng)});
    used.insert({parent, i});
  }

  std::vector<std::pair<Index, Index>> free_pairs;
  const bool enumerate = n <= 2000;
  if (enumerate) {
    for (Index a = 0; a < n; ++a) {
      for (Index b = a + 1; b < n; ++b) {
        if (used.count({a, b}) == 0) free_pairs.emplace_back(a, b);
      }
    }
  }
  std::vector<WeightedEdge> candidates;
  if (enumerate && static_cast<Index>(free_pairs.size()) >= spec.m) {
    std::shuffle(free_pairs.begin(), free_pairs.end(), rng);
    for (Index k = 0; k < spec.m; ++k) {
      candidates.push_back({free_pairs[k].first, free_pairs[k].second, weight(rng)});
    }
  } else if (enumerate && !free_pairs.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, free_pairs.size() - 1);
    for (Index k = 0; k < spec.m; ++k) {
      const auto& p = free_pairs[pick(rng)];
      candidates.push_back({p.first, p.second, weight(rng)});
    }
  } else {
    std::uniform_int_distribution<Index> node(0, n - 1);
    std::set<std::pair<Index, Index>> taken = used;
    while (static_cast<Index>(candidates.size()) < spec.m) {
      Index a = node(rng);
      Index b = node(rng);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      if (!taken.insert({a, b}).second) continue;
      candidates.push_back({a, b, weight(rng)});
    }
  }
  return SparsificationProblem(n, std::move(fixed), std::move(candidates), budget);
}

Eigen::MatrixXd dense_laplacian(const SparsificationProblem& problem, const Eigen::VectorXd& w) {
  if (w.size() != problem.num_candidates()) throw DimensionError("oracle: selection length mismatch");
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(problem.num_nodes(), problem.num_nodes());
  for (const auto& e : problem.fixed_edges()) add_dense_edge(L, e, 1.0);
  for (Index k = 0; k < w.size(); ++k) add_dense_edge(L, problem.candidate_edges()[k], w[k]);
  return L;
}

double dense_lambda2(const SparsificationProblem& problem, const Eigen::VectorXd& w) {
  return fiedler_pair_dense(dense_laplacian(problem, w)).lambda2;
}

Eigen::VectorXd dense_spectrum(const Eigen::MatrixXd& L) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(L, Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

BruteForceResult brute_force_optimum(const SparsificationProblem& problem, Execution ex,
                                     std::uint64_t max_subsets) {
  const Index m = problem.num_candidates();
  const Index k = problem.budget();
  const std::uint64_t total = binomial(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(k));
  if (total > max_subsets) {
    throw OracleRefused("brute force refuses C(" + std::to_string(m) + ", " + std::to_string(k) +
                        ") = " + std::to_string(total) + " subsets");
  }
  const Eigen::MatrixXd fixed = dense_laplacian(problem.with_budget(0), Eigen::VectorXd::Zero(m));

  Best best;
  if (ex == Execution::Serial) {
    std::vector<Index> c(static_cast<std::size_t>(k));
    for (Index i = 0; i < k; ++i) c[i] = i;
    std::uint64_t rank = 0;
    do {
      best.offer(subset_lambda2(problem, fixed, c), rank++, c);
    } while (k > 0 && next_combination(c, m));
  } else {
    const auto chunks = static_cast<std::int64_t>(std::min<std::uint64_t>(total, 256));
    std::vector<Best> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t ch = 0; ch < chunks; ++ch) {
      const std::uint64_t lo = total * static_cast<std::uint64_t>(ch) / static_cast<std::uint64_t>(chunks);
      const std::uint64_t hi = total * static_cast<std::uint64_t>(ch + 1) / static_cast<std::uint64_t>(chunks);
      auto c = unrank_combination(lo, m, k);
      for (std::uint64_t r = lo; r < hi; ++r) {
        partial[ch].offer(subset_lambda2(problem, fixed, c), r, c);
        if (r + 1 < hi) next_combination(c, m);
      }
    }
    for (const auto& p : partial) best.offer(p.value, p.rank, p.chosen);
  }
  return {best.chosen, best.value, total};
}

Eigen::VectorXd finite_difference_gradient(const SparsificationProblem& problem, const Eigen::VectorXd& w,
                                           double h) {
  const Eigen::VectorXd spectrum = dense_spectrum(dense_laplacian(problem, w));
  if (spectrum.size() < 3 || spectrum[2] - spectrum[1] <= 10.0 * h) {
    throw OracleRefused("finite differences need a simple lambda2 (eigengap above 10 h)");
  }
  Eigen::VectorXd g(w.size());
  for (Index k = 0; k < w.size(); ++k) {
    Eigen::VectorXd plus = w;
    Eigen::VectorXd minus = w;
    plus[k] += h;
    minus[k] -= h;
    g[k] = (dense_lambda2(problem, plus) - dense_lambda2(problem, minus)) / (2.0 * h);
  }
  return g;
}

Eigen::VectorXd random_feasible_point(Index m, Index k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::VectorXd u(m);
  for (Index i = 0; i < m; ++i) u[i] = unif(rng);
  auto clipped_sum = [&](double tau) { return (u.array() + tau).cwiseMax(0.0).cwiseMin(1.0).sum(); };
  double lo = -1.0;
  double hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (clipped_sum(mid) < static_cast<double>(k) ? lo : hi) = mid;
  }
  Eigen::VectorXd w = (u.array() + 0.5 * (lo + hi)).cwiseMax(0.0).cwiseMin(1.0);
  // Spread the residual bisection error over the interior entries.
  const double deficit = static_cast<double>(k) - w.sum();
  Index interior = 0;
  for (Index i = 0; i < m; ++i) interior += (w[i] > 1e-6 && w[i] < 1.0 - 1e-6) ? 1 : 0;
  if (interior > 0) {
    for (Index i = 0; i < m; ++i) {
      if (w[i] > 1e-6 && w[i] < 1.0 - 1e-6) w[i] += deficit / static_cast<double>(interior);
    }
  }
  return w;
}

}  // namespace acsparse::testkit
