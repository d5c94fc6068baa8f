#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace acsparse {

using Index = Eigen::Index;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// An undirected measurement between two dense node indices. The weight is
/// the rotational concentration of the measurement.
struct WeightedEdge {
  Index u = 0;
  Index v = 0;
  double weight = 0.0;
};

/// Per-candidate selection weights in [0,1]. Fractional while Frank-Wolfe
/// runs, binary once rounded.
class SelectionVector {
 public:
  SelectionVector() = default;
  /// Throws FeasibilityError when an entry is non-finite or outside [0,1].
  explicit SelectionVector(Eigen::VectorXd values);

  static SelectionVector zeros(Index m);
  static SelectionVector ones(Index m);
  /// Uniform fractional point k/m in every entry.
  static SelectionVector uniform(Index m, Index k);
  /// Binary vector with ones at `chosen`. Throws DimensionError on an index
  /// outside [0,m) and FeasibilityError on a repeated index.
  static SelectionVector indicator(Index m, std::span<const Index> chosen);

  const Eigen::VectorXd& values() const noexcept { return values_; }
  Index size() const noexcept { return values_.size(); }
  double operator[](Index k) const { return values_[k]; }
  double sum() const { return values_.sum(); }
  Index nonzeros() const;

  /// True when every entry is exactly 0 or 1.
  bool integral() const noexcept { return integral_; }

  /// Indices of entries equal to 1 (integral vectors) or > 0 (fractional).
  std::vector<Index> support() const;

  /// Throws FeasibilityError unless |sum - k| <= tol.
  void require_budget(Index k, double tol = 1e-9) const;

 private:
  Eigen::VectorXd values_;
  bool integral_ = true;
};

struct FeasibilityReport {
  bool feasible = true;
  bool full_graph_connected = true;
  Index fixed_components = 0;
  std::vector<std::string> violations;
  std::vector<std::string> warnings;
};

/// Fixed edges, weighted candidate edges and an edge budget. Structural
/// invariants (index range, no self loops, finite nonnegative weights,
/// fixed/candidate disjointness, 0 <= budget <= m) are enforced on
/// construction; connectivity feasibility is checked separately.
class SparsificationProblem {
 public:
  SparsificationProblem(Index num_nodes, std::vector<WeightedEdge> fixed_edges,
                        std::vector<WeightedEdge> candidate_edges, Index budget);

  Index num_nodes() const noexcept { return num_nodes_; }
  Index num_candidates() const noexcept { return static_cast<Index>(candidates_.size()); }
  Index budget() const noexcept { return budget_; }
  const std::vector<WeightedEdge>& fixed_edges() const noexcept { return fixed_; }
  const std::vector<WeightedEdge>& candidate_edges() const noexcept { return candidates_; }

  /// Same graph with a different budget.
  SparsificationProblem with_budget(Index budget) const;

  /// The full graph must be connected and the fixed edges must leave at most
  /// budget + 1 components, so that some selection of `budget` candidates
  /// connects the graph.
  FeasibilityReport feasibility() const;

  /// Throws InfeasibleProblemError listing every violated condition.
  void require_feasible() const;

 private:
  Index num_nodes_;
  std::vector<WeightedEdge> fixed_;
  std::vector<WeightedEdge> candidates_;
  Index budget_;
};

/// Laplacian of a single weighted edge on n nodes.
SparseMatrix edge_laplacian(const WeightedEdge& edge, Index n);

/// L(w) = L_fixed + sum_k w_k L_k. Every candidate contributes a structural
/// entry even when w_k == 0, so the sparsity pattern does not depend on w.
SparseMatrix build_laplacian(const SparsificationProblem& problem, const SelectionVector& w);

/// Laplacian of the fixed edges plus all candidates (w = 1).
SparseMatrix full_laplacian(const SparsificationProblem& problem);

/// Combinatorial connectivity of the fixed edges plus candidates with
/// w_k > threshold.
bool is_connected(const SparsificationProblem& problem, const SelectionVector& w,
                  double threshold = 0.0);

}  // namespace acsparse
