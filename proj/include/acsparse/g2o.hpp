#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "acsparse/graph.hpp"

namespace acsparse::g2o {

enum class PoseKind { SE2, SE3 };

struct PoseVertex {
  long long id = 0;
  PoseKind kind = PoseKind::SE2;
  std::vector<std::string> tokens;  // record as read, including the tag; empty when inferred
};

struct PoseEdge {
  long long id_from = 0;
  long long id_to = 0;
  PoseKind kind = PoseKind::SE2;
  std::string tag;
  std::vector<std::string> measurement;  // kept verbatim
  std::vector<std::string> information_tokens;
  Eigen::MatrixXd information;  // symmetric 3x3 (SE2) or 6x6 (SE3)
  std::size_t line = 0;
};

struct PoseGraph {
  std::vector<PoseVertex> vertices;
  std::vector<PoseEdge> edges;
  /// Records of unknown, non-structural types (FIX, parameter blocks, ...).
  std::size_t skipped_records = 0;
  /// g2o vertex id -> dense index, in declaration order.
  std::unordered_map<long long, Index> index_of;

  Index num_nodes() const { return static_cast<Index>(vertices.size()); }
};

/// Parses VERTEX_SE2, VERTEX_SE3:QUAT, EDGE_SE2 and EDGE_SE3:QUAT records.
/// Information matrices are read as row-major upper triangles and
/// symmetrized. Other VERTEX_* / EDGE_* types raise UnsupportedTypeError;
/// remaining unknown records are counted in `skipped_records`.
/// A file with no vertex records gets one vertex per edge endpoint, in
/// ascending id order; otherwise every endpoint must be declared.
PoseGraph parse_g2o(std::istream& in);
PoseGraph parse_g2o(const std::filesystem::path& path);

/// Rotational concentration of an edge: the (theta, theta) information entry
/// for SE2, the mean of the three rotational diagonal entries for SE3.
double rotational_weight(const PoseEdge& edge);

/// Problem built from a pose graph. Edges between consecutive dense ids are
/// fixed (odometry); the rest are candidates (loop closures).
struct ExtractedProblem {
  SparsificationProblem problem;
  std::vector<std::size_t> fixed_edge_ids;      // indices into PoseGraph::edges
  std::vector<std::size_t> candidate_edge_ids;  // indices into PoseGraph::edges
};

/// Odometry/loop-closure partition with budget 0 and no feasibility check.
ExtractedProblem partition_edges(const PoseGraph& graph);

/// round(fraction * m), halves rounded up.
Index budget_from_fraction(double fraction, Index num_candidates);

/// Throws InfeasibleProblemError when the result cannot be connected within
/// the budget, std::invalid_argument when fraction is outside [0,1].
ExtractedProblem extract_problem(const PoseGraph& graph, double budget_fraction);
ExtractedProblem extract_problem_with_budget(const PoseGraph& graph, Index budget);

/// Writes all vertices, every fixed edge and the selected candidate edges,
/// in input order, with measurement and information tokens copied verbatim.
void write_selection(const PoseGraph& graph, const ExtractedProblem& extracted,
                     const SelectionVector& selection, std::ostream& out);
void write_selection(const PoseGraph& graph, const ExtractedProblem& extracted,
                     const SelectionVector& selection, const std::filesystem::path& path);

}  // namespace acsparse::g2o
