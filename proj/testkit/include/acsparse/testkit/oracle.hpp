#pragma once

// Brute-force and numerical oracles for tests and benchmarks. Nothing in the
// production library depends on this.

#include <cstdint>
#include <random>
#include <utility>

#include <Eigen/Core>

#include "acsparse/graph.hpp"
#include "acsparse/kernels.hpp"

namespace acsparse::testkit {

enum class FixedTopology { Path, RandomTree };

struct RandomProblemSpec {
  Index n = 8;
  Index m = 10;
  std::pair<double, double> weight_range = {0.5, 2.0};
  FixedTopology fixed_topology = FixedTopology::Path;
  std::uint64_t seed = 0;
};

/// Fixed edges form a spanning path or random tree; candidates are uniform
/// random node pairs not among the fixed pairs (distinct while enough pairs
/// exist, repeated otherwise). Always feasible for any budget.
SparsificationProblem random_problem(const RandomProblemSpec& spec, Index budget);

/// Dense L_fixed + sum_k w_k L_k assembled entry by entry. `w` may leave the
/// unit box (finite differences step outside it).
Eigen::MatrixXd dense_laplacian(const SparsificationProblem& problem, const Eigen::VectorXd& w);

/// lambda2 of the dense Laplacian via the dense Fiedler oracle.
double dense_lambda2(const SparsificationProblem& problem, const Eigen::VectorXd& w);

/// All eigenvalues of a dense symmetric matrix, ascending.
Eigen::VectorXd dense_spectrum(const Eigen::MatrixXd& L);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

struct BruteForceResult {
  std::vector<Index> chosen;  // lexicographically first maximizer
  double p_star = 0.0;
  std::uint64_t subsets = 0;
};

/// Exhaustive search over every budget-sized subset of candidates. Throws
/// OracleRefused when C(m, budget) exceeds `max_subsets`.
BruteForceResult brute_force_optimum(const SparsificationProblem& problem,
                                     Execution ex = Execution::Parallel,
                                     std::uint64_t max_subsets = 1'000'000);

/// Central differences of lambda2 along each coordinate. Throws OracleRefused
/// when lambda3 - lambda2 <= 10 h, where lambda2 need not be differentiable.
Eigen::VectorXd finite_difference_gradient(const SparsificationProblem& problem,
                                           const Eigen::VectorXd& w, double h = 1e-6);

/// Random point of {w in [0,1]^m, sum w = k}: uniform draws shifted by a
/// common offset (found by bisection) and clipped to the box.
Eigen::VectorXd random_feasible_point(Index m, Index k, std::mt19937_64& rng);

}  // namespace acsparse::testkit
