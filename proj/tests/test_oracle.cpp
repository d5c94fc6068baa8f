#include <doctest.h>

#include <random>

#include <Eigen/Dense>

#include "acsparse/errors.hpp"
#include "acsparse/testkit/oracle.hpp"

using namespace acsparse;

TEST_SUITE("testkit_oracle") {
  TEST_CASE("binomial") {
    CHECK(testkit::binomial(12, 6) == 924);
    CHECK(testkit::binomial(5, 0) == 1);
    CHECK(testkit::binomial(5, 7) == 0);
    CHECK(testkit::binomial(60, 30) == 118264581564861424ULL);
  }

  TEST_CASE("dense Laplacian agrees with the sparse assembly") {
    std::mt19937_64 rng(1);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      testkit::RandomProblemSpec spec;
      spec.seed = seed;
      const auto p = testkit::random_problem(spec, 3);
      const Eigen::VectorXd w = testkit::random_feasible_point(spec.m, 3, rng);
      const Eigen::MatrixXd sparse(build_laplacian(p, SelectionVector(w)));
      CHECK((testkit::dense_laplacian(p, w) - sparse).cwiseAbs().maxCoeff() <= 1e-14);
    }
  }

  TEST_CASE("random problems are well formed") {
    testkit::RandomProblemSpec spec;
    spec.n = 10;
    spec.m = 12;
    spec.fixed_topology = testkit::FixedTopology::RandomTree;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      spec.seed = seed;
      const auto p = testkit::random_problem(spec, 4);
      CHECK(p.fixed_edges().size() == 9);
      CHECK(p.num_candidates() == 12);
      CHECK(p.feasibility().feasible);
      for (const auto& e : p.candidate_edges()) {
        CHECK(e.weight >= 0.5);
        CHECK(e.weight <= 2.0);
      }
    }
    spec.seed = 3;
    const auto a = testkit::random_problem(spec, 4);
    const auto b = testkit::random_problem(spec, 4);
    CHECK(a.candidate_edges()[5].weight == b.candidate_edges()[5].weight);
  }

  TEST_CASE("random feasible points") {
    std::mt19937_64 rng(2);
    for (Index m = 1; m <= 15; ++m) {
      for (Index k = 0; k <= m; ++k) {
        const Eigen::VectorXd w = testkit::random_feasible_point(m, k, rng);
        CHECK(w.minCoeff() >= 0.0);
        CHECK(w.maxCoeff() <= 1.0);
        CHECK(std::abs(w.sum() - static_cast<double>(k)) <= 1e-9);
      }
    }
  }

  TEST_CASE("brute force: serial and parallel enumerations agree") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      testkit::RandomProblemSpec spec;
      spec.n = 8;
      spec.m = 11;
      spec.seed = seed;
      const auto p = testkit::random_problem(spec, 1 + static_cast<Index>(seed % 5));
      const auto s = testkit::brute_force_optimum(p, Execution::Serial);
      const auto q = testkit::brute_force_optimum(p, Execution::Parallel);
      CHECK(s.chosen == q.chosen);
      CHECK(s.p_star == q.p_star);
      CHECK(s.subsets == testkit::binomial(11, static_cast<std::uint64_t>(p.budget())));
      Eigen::VectorXd w = Eigen::VectorXd::Zero(11);
      for (Index k : s.chosen) w[k] = 1.0;
      CHECK(testkit::dense_lambda2(p, w) == s.p_star);
    }
  }

  TEST_CASE("brute force refuses large enumerations") {
    testkit::RandomProblemSpec spec;
    spec.n = 30;
    spec.m = 40;
    const auto p = testkit::random_problem(spec, 20);
    CHECK_THROWS_AS(testkit::brute_force_optimum(p), OracleRefused);
  }

  TEST_CASE("finite differences refuse repeated eigenvalues") {
    // Star around node 0 with a symmetric candidate: lambda2 has multiplicity > 1.
    const SparsificationProblem p(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}}, {{1, 2, 1.0}}, 1);
    Eigen::VectorXd w(1);
    w << 0.0;
    CHECK_THROWS_AS(testkit::finite_difference_gradient(p, w), OracleRefused);
  }

  TEST_CASE("finite differences on a smooth instance") {
    const SparsificationProblem p(3, {{0, 1, 1.0}, {1, 2, 1.0}}, {{0, 2, 1.0}}, 1);
    Eigen::VectorXd w(1);
    w << 0.5;
    // lambda2 = 1 + 2w on this triangle for w < 1, with lambda3 = 3.
    CHECK(testkit::finite_difference_gradient(p, w)[0] == doctest::Approx(2.0).epsilon(1e-6));
  }
}
