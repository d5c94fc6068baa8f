#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "acsparse/errors.hpp"
#include "acsparse/g2o.hpp"
#include "acsparse/testkit/fixtures.hpp"

using namespace acsparse;

namespace {

g2o::PoseGraph parse(const std::string& text) {
  std::istringstream in(text);
  return g2o::parse_g2o(in);
}

const char* kMinimal =
    "VERTEX_SE2 0 0 0 0\n"
    "VERTEX_SE2 1 1 0 0\n"
    "VERTEX_SE2 2 2 0 0\n"
    "EDGE_SE2 0 1 1 0 0 1 0 0 1 0 10\n"
    "EDGE_SE2 1 2 1 0 0 1 0 0 1 0 20\n"
    "EDGE_SE2 0 2 2 0 0 1 0 0 1 0 25\n";

std::string round_trip(const g2o::PoseGraph& g, const g2o::ExtractedProblem& x, const SelectionVector& s) {
  std::ostringstream out;
  g2o::write_selection(g, x, s, out);
  return out.str();
}

std::vector<std::tuple<Index, Index, double>> edge_multiset(const g2o::ExtractedProblem& x) {
  std::vector<std::tuple<Index, Index, double>> out;
  for (const auto* list : {&x.problem.fixed_edges(), &x.problem.candidate_edges()})
    for (const auto& e : *list) out.emplace_back(e.u, e.v, e.weight);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("io_g2o") {
  TEST_CASE("minimal SE2 file") {
    const auto g = parse(kMinimal);
    CHECK(g.num_nodes() == 3);
    CHECK(g.edges.size() == 3);
    const auto x = g2o::extract_problem(g, 1.0);
    CHECK(x.problem.fixed_edges().size() == 2);
    REQUIRE(x.problem.num_candidates() == 1);
    CHECK(x.problem.candidate_edges()[0].weight == 25.0);
    CHECK(x.problem.fixed_edges()[1].weight == 20.0);
    CHECK(x.problem.budget() == 1);
    CHECK(x.candidate_edge_ids == std::vector<std::size_t>{2});
  }

  TEST_CASE("two vertices and one edge") {
    const auto g = parse("VERTEX_SE2 0 0 0 0\nVERTEX_SE2 1 1 0 0\nEDGE_SE2 0 1 1 0 0 100 0 0 100 0 25\n");
    CHECK(g.num_nodes() == 2);
    CHECK(g.edges.size() == 1);
    CHECK(g2o::rotational_weight(g.edges[0]) == 25.0);
  }

  TEST_CASE("reversed odometry edges are still odometry and keep their orientation") {
    const auto g = parse(
        "VERTEX_SE2 0 0 0 0\nVERTEX_SE2 1 0 0 0\nVERTEX_SE2 2 0 0 0\n"
        "EDGE_SE2 1 0 1 0 0 1 0 0 1 0 1\nEDGE_SE2 2 1 1 0 0 1 0 0 1 0 1\nEDGE_SE2 2 0 1 0 0 1 0 0 1 0 1\n");
    const auto x = g2o::partition_edges(g);
    CHECK(x.fixed_edge_ids == std::vector<std::size_t>{0, 1});
    CHECK(x.problem.candidate_edges()[0].u == 0);
    CHECK(x.problem.candidate_edges()[0].v == 2);
    std::ostringstream out;
    g2o::write_selection(g, x, SelectionVector::ones(1), out);
    CHECK(out.str().find("EDGE_SE2 2 0 ") != std::string::npos);
  }

  TEST_CASE("partition is exhaustive and weights are positive") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      testkit::SyntheticPoseGraphSpec spec;
      spec.kind = seed % 2 ? g2o::PoseKind::SE3 : g2o::PoseKind::SE2;
      spec.seed = seed;
      const auto g = parse(testkit::synthetic_g2o(spec));
      const auto x = g2o::partition_edges(g);
      CHECK(x.fixed_edge_ids.size() + x.candidate_edge_ids.size() == g.edges.size());
      std::vector<std::size_t> all = x.fixed_edge_ids;
      all.insert(all.end(), x.candidate_edge_ids.begin(), x.candidate_edge_ids.end());
      std::sort(all.begin(), all.end());
      CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
      for (const auto& e : g.edges) {
        CHECK((e.information - e.information.transpose()).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK(g2o::rotational_weight(e) > 0.0);
      }
    }
  }

  TEST_CASE("edge-only files infer their vertices") {
    const std::string text =
        "EDGE_SE2 5 6 1 0 0 1 0 0 1 0 1\n"
        "EDGE_SE2 5 7 1 0 0 1 0 0 1 0 3\n"
        "EDGE_SE2 6 7 1 0 0 1 0 0 1 0 2\n";
    const auto g = parse(text);
    CHECK(g.num_nodes() == 3);
    CHECK(g.index_of.at(5) == 0);
    CHECK(g.index_of.at(7) == 2);
    const auto x = g2o::partition_edges(g);
    CHECK(x.candidate_edge_ids == std::vector<std::size_t>{1});
    std::ostringstream out;
    g2o::write_selection(g, x, SelectionVector::ones(1), out);
    CHECK(out.str() == text);
  }

  TEST_CASE("SE3 weight is the mean rotational information") {
    std::string text =
        "VERTEX_SE3:QUAT 0 0 0 0 0 0 0 1\n"
        "VERTEX_SE3:QUAT 1 1 0 0 0 0 0 1\n"
        "EDGE_SE3:QUAT 0 1 1 0 0 0 0 0 1";
    // Upper triangle of diag(1, 2, 3, 10, 20, 60).
    const double d[6] = {1, 2, 3, 10, 20, 60};
    for (int r = 0; r < 6; ++r)
      for (int c = r; c < 6; ++c) text += r == c ? " " + std::to_string(d[r]) : " 0";
    text += "\n";
    const auto g = parse(text);
    CHECK(g2o::rotational_weight(g.edges[0]) == doctest::Approx(30.0));
    CHECK(g.edges[0].information(4, 4) == 20.0);
  }

  TEST_CASE("information matrices are symmetrized from the upper triangle") {
    const auto g = parse(
        "VERTEX_SE2 0 0 0 0\nVERTEX_SE2 1 0 0 0\n"
        "EDGE_SE2 0 1 1 0 0 4 0.5 0.25 5 0.125 6\n");
    const auto& I = g.edges[0].information;
    CHECK(I(0, 1) == 0.5);
    CHECK(I(1, 0) == 0.5);
    CHECK(I(2, 0) == 0.25);
    CHECK(I(2, 1) == 0.125);
    CHECK(g2o::rotational_weight(g.edges[0]) == 6.0);
  }

  TEST_CASE("vertex ids are remapped densely in declaration order") {
    const auto g = parse(
        "VERTEX_SE2 100 0 0 0\nVERTEX_SE2 7 0 0 0\nVERTEX_SE2 42 0 0 0\n"
        "EDGE_SE2 100 7 1 0 0 1 0 0 1 0 1\n"
        "EDGE_SE2 42 7 1 0 0 1 0 0 1 0 2\n"
        "EDGE_SE2 100 42 1 0 0 1 0 0 1 0 3\n");
    CHECK(g.index_of.at(100) == 0);
    CHECK(g.index_of.at(7) == 1);
    CHECK(g.index_of.at(42) == 2);
    const auto x = g2o::partition_edges(g);
    CHECK(x.fixed_edge_ids == std::vector<std::size_t>{0, 1});
    CHECK(x.candidate_edge_ids == std::vector<std::size_t>{2});
    CHECK(x.problem.fixed_edges()[1].u == 1);
    CHECK(x.problem.fixed_edges()[1].v == 2);
  }

  TEST_CASE("comments and unknown records are skipped") {
    const auto g = parse(std::string("# header\n\nFIX 0\n") + kMinimal + "PARAMS_SE2OFFSET 0 0 0 0\n");
    CHECK(g.skipped_records == 2);
    CHECK(g.edges.size() == 3);
  }

  TEST_CASE("parse errors carry line numbers") {
    try {
      parse("VERTEX_SE2 0 0 0 0\nVERTEX_SE2 1 0 0\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse("VERTEX_SE2 0 0 0 x\nVERTEX_SE2 1 0 0 0\nEDGE_SE2 0 1 1 0 0 1 0 0 1 0 1\n"),
                    ParseError);
    CHECK_THROWS_AS(parse("VERTEX_SE2 0 0 0 0\nVERTEX_SE2 0 0 0 0\n"), ParseError);
    try {
      parse("VERTEX_SE2 0 0 0 0\nVERTEX_SE2 1 0 0 0\nEDGE_SE2 0 1 1 0 0 1 0 0 1 0 1\nEDGE_SE2 0 9 1 0 0 1 0 0 1 0 1\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 4);
    }
    CHECK_THROWS_AS(parse("VERTEX_XYZ 0 0 0 0\n"), UnsupportedTypeError);
    CHECK_THROWS_AS(parse("VERTEX_SE2 0 0 0 0\nEDGE_SE2_XY 0 0 1 1\n"), UnsupportedTypeError);
    CHECK_THROWS_AS(parse("# nothing\n"), EmptyGraphError);
    CHECK_THROWS_AS(parse("VERTEX_SE2 0 0 0 0\n"), EmptyGraphError);
  }

  TEST_CASE("budget from fraction") {
    CHECK(g2o::budget_from_fraction(0.5, 5) == 3);
    CHECK(g2o::budget_from_fraction(0.1, 785) == 79);
    CHECK(g2o::budget_from_fraction(0.0, 10) == 0);
    CHECK(g2o::budget_from_fraction(1.0, 10) == 10);
    CHECK_THROWS_AS(g2o::budget_from_fraction(1.5, 10), std::invalid_argument);
    CHECK_THROWS_AS(g2o::budget_from_fraction(-0.1, 10), std::invalid_argument);
  }

  TEST_CASE("a broken odometry chain needs enough budget") {
    const auto g = parse(
        "VERTEX_SE2 0 0 0 0\nVERTEX_SE2 1 0 0 0\nVERTEX_SE2 2 0 0 0\nVERTEX_SE2 3 0 0 0\n"
        "EDGE_SE2 0 1 1 0 0 1 0 0 1 0 1\n"
        "EDGE_SE2 2 3 1 0 0 1 0 0 1 0 1\n"
        "EDGE_SE2 0 2 1 0 0 1 0 0 1 0 1\n"
        "EDGE_SE2 1 3 1 0 0 1 0 0 1 0 1\n");
    CHECK_THROWS_AS(g2o::extract_problem(g, 0.0), InfeasibleProblemError);
    CHECK_NOTHROW(g2o::extract_problem(g, 0.5));
  }

  TEST_CASE("writing all or none of the candidates") {
    testkit::SyntheticPoseGraphSpec spec;
    spec.n = 40;
    spec.loop_closures = 25;
    spec.first_id = 1000;
    spec.id_stride = 3;
    const auto g = parse(testkit::synthetic_g2o(spec));
    const auto x = g2o::partition_edges(g);
    const Index m = x.problem.num_candidates();
    REQUIRE(m == 25);

    const auto none = parse(round_trip(g, x, SelectionVector::zeros(m)));
    CHECK(none.num_nodes() == 40);
    CHECK(none.edges.size() == 39);

    const std::string full_text = round_trip(g, x, SelectionVector::ones(m));
    const auto full = parse(full_text);
    CHECK(full.edges.size() == g.edges.size());
    CHECK(round_trip(full, g2o::partition_edges(full), SelectionVector::ones(m)) == full_text);
  }

  TEST_CASE("a written selection of K candidates re-parses with K candidates") {
    for (auto kind : {g2o::PoseKind::SE2, g2o::PoseKind::SE3}) {
      testkit::SyntheticPoseGraphSpec spec;
      spec.n = 30;
      spec.loop_closures = 20;
      spec.kind = kind;
      spec.seed = 9;
      const auto g = parse(testkit::synthetic_g2o(spec));
      const auto x = g2o::partition_edges(g);
      const std::vector<Index> chosen{1, 4, 5, 19};
      const auto again = g2o::partition_edges(parse(round_trip(g, x, SelectionVector::indicator(20, chosen))));
      CHECK(again.problem.num_candidates() == 4);
      for (std::size_t i = 0; i < chosen.size(); ++i) {
        const auto& a = again.problem.candidate_edges()[i];
        const auto& b = x.problem.candidate_edges()[static_cast<std::size_t>(chosen[i])];
        CHECK(a.u == b.u);
        CHECK(a.v == b.v);
        CHECK(a.weight == b.weight);
      }
    }
  }

  TEST_CASE("round trip preserves nodes, edges and weights") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      testkit::SyntheticPoseGraphSpec spec;
      spec.n = 60;
      spec.loop_closures = 45;
      spec.kind = seed % 2 ? g2o::PoseKind::SE3 : g2o::PoseKind::SE2;
      spec.seed = seed;
      const auto g = parse(testkit::synthetic_g2o(spec));
      const auto x = g2o::partition_edges(g);
      const auto g2 = parse(round_trip(g, x, SelectionVector::ones(x.problem.num_candidates())));
      const auto x2 = g2o::partition_edges(g2);
      CHECK(g2.num_nodes() == g.num_nodes());
      CHECK(edge_multiset(x2) == edge_multiset(x));
    }
  }

  TEST_CASE("fractional selections cannot be written") {
    const auto g = parse(kMinimal);
    const auto x = g2o::partition_edges(g);
    Eigen::VectorXd half(1);
    half << 0.5;
    std::ostringstream out;
    CHECK_THROWS_AS(g2o::write_selection(g, x, SelectionVector(half), out), FeasibilityError);
    CHECK_THROWS_AS(g2o::write_selection(g, x, SelectionVector::zeros(2), out), DimensionError);
  }
}
