#include "acsparse/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "acsparse/errors.hpp"
#include "acsparse/union_find.hpp"

namespace acsparse {

namespace {

std::pair<Index, Index> unordered(const WeightedEdge& e) {
  return {std::min(e.u, e.v), std::max(e.u, e.v)};
}

void check_edge(const WeightedEdge& e, Index n, const char* kind, std::size_t k) {
  auto fail = [&](const std::string& why) {
    std::ostringstream os;
    os << kind << " edge " << k << " (" << e.u << ", " << e.v << "): " << why;
    throw InvalidEdgeError(os.str());
  };
  if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) fail("node index out of range");
  if (e.u == e.v) fail("self loop");
  if (!std::isfinite(e.weight) || e.weight < 0.0) fail("weight must be finite and nonnegative");
}

void add_edge_triplets(std::vector<Eigen::Triplet<double>>& t, const WeightedEdge& e, double w) {
  t.emplace_back(e.u, e.u, w);
  t.emplace_back(e.v, e.v, w);
  t.emplace_back(e.u, e.v, -w);
  t.emplace_back(e.v, e.u, -w);
}

}  // namespace

SelectionVector::SelectionVector(Eigen::VectorXd values) : values_(std::move(values)) {
  for (Index k = 0; k < values_.size(); ++k) {
    const double x = values_[k];
    if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
      std::ostringstream os;
      os << "selection entry " << k << " = " << x << " outside [0,1]";
      throw FeasibilityError(os.str());
    }
    if (x != 0.0 && x != 1.0) integral_ = false;
  }
}

SelectionVector SelectionVector::zeros(Index m) { return SelectionVector(Eigen::VectorXd::Zero(m)); }

SelectionVector SelectionVector::ones(Index m) { return SelectionVector(Eigen::VectorXd::Ones(m)); }

SelectionVector SelectionVector::uniform(Index m, Index k) {
  if (m == 0) return zeros(0);
  if (k < 0 || k > m) throw DimensionError("uniform selection: budget outside [0, m]");
  return SelectionVector(Eigen::VectorXd::Constant(m, static_cast<double>(k) / static_cast<double>(m)));
}

SelectionVector SelectionVector::indicator(Index m, std::span<const Index> chosen) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
  for (Index k : chosen) {
    if (k < 0 || k >= m) throw DimensionError("selected index " + std::to_string(k) + " outside [0, m)");
    if (v[k] != 0.0) throw FeasibilityError("selected index " + std::to_string(k) + " repeated");
    v[k] = 1.0;
  }
  return SelectionVector(std::move(v));
}

Index SelectionVector::nonzeros() const {
  return static_cast<Index>((values_.array() != 0.0).count());
}

std::vector<Index> SelectionVector::support() const {
  std::vector<Index> out;
  for (Index k = 0; k < values_.size(); ++k) {
    if (values_[k] > 0.0) out.push_back(k);
  }
  return out;
}

void SelectionVector::require_budget(Index k, double tol) const {
  const double s = sum();
  if (std::abs(s - static_cast<double>(k)) > tol) {
    std::ostringstream os;
    os.precision(17);
    os << "selection sums to " << s << ", budget is " << k;
    throw FeasibilityError(os.str());
  }
}

SparsificationProblem::SparsificationProblem(Index num_nodes, std::vector<WeightedEdge> fixed_edges,
                                             std::vector<WeightedEdge> candidate_edges, Index budget)
    : num_nodes_(num_nodes),
      fixed_(std::move(fixed_edges)),
      candidates_(std::move(candidate_edges)),
      budget_(budget) {
  if (num_nodes_ < 1) throw DimensionError("problem needs at least one node");
  if (budget_ < 0 || budget_ > num_candidates()) {
    throw DimensionError("budget " + std::to_string(budget_) + " outside [0, " +
                         std::to_string(num_candidates()) + "]");
  }
  std::set<std::pair<Index, Index>> fixed_pairs;
  for (std::size_t k = 0; k < fixed_.size(); ++k) {
    check_edge(fixed_[k], num_nodes_, "fixed", k);
    fixed_pairs.insert(unordered(fixed_[k]));
  }
  for (std::size_t k = 0; k < candidates_.size(); ++k) {
    check_edge(candidates_[k], num_nodes_, "candidate", k);
    if (fixed_pairs.count(unordered(candidates_[k])) != 0) {
      std::ostringstream os;
      os << "candidate edge " << k << " (" << candidates_[k].u << ", " << candidates_[k].v
         << ") duplicates a fixed edge";
      throw InvalidEdgeError(os.str());
    }
  }
}

SparsificationProblem SparsificationProblem::with_budget(Index budget) const {
  return SparsificationProblem(num_nodes_, fixed_, candidates_, budget);
}

FeasibilityReport SparsificationProblem::feasibility() const {
  FeasibilityReport report;
  UnionFind uf(static_cast<std::size_t>(num_nodes_));
  for (const auto& e : fixed_) uf.unite(e.u, e.v);
  report.fixed_components = static_cast<Index>(uf.components());
  for (const auto& e : candidates_) uf.unite(e.u, e.v);
  report.full_graph_connected = uf.components() == 1;

  if (!report.full_graph_connected) {
    report.violations.push_back("fixed plus candidate edges do not form a connected graph (" +
                                std::to_string(uf.components()) + " components)");
  }
  if (report.fixed_components > budget_ + 1) {
    report.violations.push_back("fixed edges leave " + std::to_string(report.fixed_components) +
                                " components, more than budget + 1 = " + std::to_string(budget_ + 1));
  }
  report.feasible = report.violations.empty();

  auto warn_zero = [&](const std::vector<WeightedEdge>& edges, const char* kind) {
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (edges[k].weight == 0.0) {
        report.warnings.push_back(std::string(kind) + " edge " + std::to_string(k) + " has zero weight");
      }
    }
  };
  warn_zero(fixed_, "fixed");
  warn_zero(candidates_, "candidate");
  return report;
}

void SparsificationProblem::require_feasible() const {
  const auto report = feasibility();
  if (report.feasible) return;
  std::string msg = "infeasible problem:";
  for (const auto& v : report.violations) msg += " " + v + ";";
  msg.pop_back();
  throw InfeasibleProblemError(msg);
}

SparseMatrix edge_laplacian(const WeightedEdge& edge, Index n) {
  check_edge(edge, n, "laplacian", 0);
  std::vector<Eigen::Triplet<double>> t;
  add_edge_triplets(t, edge, edge.weight);
  SparseMatrix L(n, n);
  L.setFromTriplets(t.begin(), t.end());
  return L;
}

SparseMatrix build_laplacian(const SparsificationProblem& problem, const SelectionVector& w) {
  if (w.size() != problem.num_candidates()) {
    throw DimensionError("selection has length " + std::to_string(w.size()) + ", problem has " +
                         std::to_string(problem.num_candidates()) + " candidates");
  }
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(4 * (problem.fixed_edges().size() + problem.candidate_edges().size()));
  for (const auto& e : problem.fixed_edges()) add_edge_triplets(t, e, e.weight);
  const auto& cand = problem.candidate_edges();
  for (std::size_t k = 0; k < cand.size(); ++k) {
    add_edge_triplets(t, cand[k], w[static_cast<Index>(k)] * cand[k].weight);
  }
  SparseMatrix L(problem.num_nodes(), problem.num_nodes());
  L.setFromTriplets(t.begin(), t.end());
  return L;
}

SparseMatrix full_laplacian(const SparsificationProblem& problem) {
  return build_laplacian(problem, SelectionVector::ones(problem.num_candidates()));
}

bool is_connected(const SparsificationProblem& problem, const SelectionVector& w, double threshold) {
  if (w.size() != problem.num_candidates()) throw DimensionError("selection length mismatch");
  UnionFind uf(static_cast<std::size_t>(problem.num_nodes()));
  for (const auto& e : problem.fixed_edges()) uf.unite(e.u, e.v);
  const auto& cand = problem.candidate_edges();
  for (std::size_t k = 0; k < cand.size(); ++k) {
    if (w[static_cast<Index>(k)] > threshold) uf.unite(cand[k].u, cand[k].v);
  }
  return uf.components() == 1;
}

}  // namespace acsparse
