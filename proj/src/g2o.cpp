#include "acsparse/g2o.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "acsparse/errors.hpp"

namespace acsparse::g2o {

namespace {

struct RecordShape {
  PoseKind kind;
  std::size_t pose_values;  // numbers after the id(s)
  std::size_t info_values;  // upper-triangular information entries (edges only)
  Index info_dim;
};

constexpr RecordShape kVertexSE2{PoseKind::SE2, 3, 0, 0};
constexpr RecordShape kVertexSE3{PoseKind::SE3, 7, 0, 0};
constexpr RecordShape kEdgeSE2{PoseKind::SE2, 3, 6, 3};
constexpr RecordShape kEdgeSE3{PoseKind::SE3, 7, 21, 6};

double parse_number(const std::string& token, std::size_t line) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ParseError("malformed number '" + token + "'", line);
  }
  return value;
}

long long parse_id(const std::string& token, std::size_t line) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("malformed vertex id '" + token + "'", line);
  }
  return value;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line.substr(0, line.find('#')));
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

bool starts_with(const std::string& s, const char* prefix) { return s.rfind(prefix, 0) == 0; }

void expect_count(const std::vector<std::string>& tok, std::size_t expected, std::size_t line) {
  if (tok.size() != expected) {
    throw ParseError(tok[0] + " expects " + std::to_string(expected - 1) + " fields, found " +
                         std::to_string(tok.size() - 1),
                     line);
  }
}

void write_tokens(std::ostream& out, const std::vector<std::string>& tokens) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i != 0) out << ' ';
    out << tokens[i];
  }
}

}  // namespace

PoseGraph parse_g2o(std::istream& in) {
  PoseGraph graph;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto tok = tokenize(text);
    if (tok.empty()) continue;
    const std::string& tag = tok[0];

    const RecordShape* shape = nullptr;
    bool is_vertex = false;
    if (tag == "VERTEX_SE2") {
      shape = &kVertexSE2;
      is_vertex = true;
    } else if (tag == "VERTEX_SE3:QUAT") {
      shape = &kVertexSE3;
      is_vertex = true;
    } else if (tag == "EDGE_SE2") {
      shape = &kEdgeSE2;
    } else if (tag == "EDGE_SE3:QUAT") {
      shape = &kEdgeSE3;
    } else if (starts_with(tag, "VERTEX") || starts_with(tag, "EDGE")) {
      throw UnsupportedTypeError("unsupported record type " + tag, line);
    } else {
      ++graph.skipped_records;
      continue;
    }

    if (is_vertex) {
      expect_count(tok, 2 + shape->pose_values, line);
      PoseVertex v;
      v.id = parse_id(tok[1], line);
      v.kind = shape->kind;
      for (std::size_t i = 2; i < tok.size(); ++i) parse_number(tok[i], line);
      v.tokens = tok;
      if (!graph.index_of.emplace(v.id, graph.num_nodes()).second) {
        throw ParseError("duplicate vertex id " + tok[1], line);
      }
      graph.vertices.push_back(std::move(v));
      continue;
    }

    expect_count(tok, 3 + shape->pose_values + shape->info_values, line);
    PoseEdge e;
    e.tag = tag;
    e.kind = shape->kind;
    e.line = line;
    e.id_from = parse_id(tok[1], line);
    e.id_to = parse_id(tok[2], line);
    const std::size_t pose_begin = 3;
    const std::size_t info_begin = pose_begin + shape->pose_values;
    for (std::size_t i = pose_begin; i < info_begin; ++i) {
      parse_number(tok[i], line);
      e.measurement.push_back(tok[i]);
    }
    e.information.resize(shape->info_dim, shape->info_dim);
    std::size_t t = info_begin;
    for (Index r = 0; r < shape->info_dim; ++r) {
      for (Index c = r; c < shape->info_dim; ++c, ++t) {
        const double x = parse_number(tok[t], line);
        e.information(r, c) = x;
        e.information(c, r) = x;
      }
    }
    e.information_tokens.assign(tok.begin() + static_cast<std::ptrdiff_t>(info_begin), tok.end());
    graph.edges.push_back(std::move(e));
  }
  if (graph.vertices.empty()) {
    // Edge-only file: vertices are inferred in ascending id order.
    std::vector<long long> ids;
    for (const auto& e : graph.edges) {
      ids.push_back(e.id_from);
      ids.push_back(e.id_to);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (long long id : ids) {
      graph.index_of.emplace(id, graph.num_nodes());
      graph.vertices.push_back(PoseVertex{id, graph.edges.front().kind, {}});
    }
  } else {
    for (const auto& e : graph.edges) {
      for (long long id : {e.id_from, e.id_to}) {
        if (graph.index_of.count(id) == 0) {
          throw ParseError("edge references undeclared vertex " + std::to_string(id), e.line);
        }
      }
    }
  }
  if (graph.vertices.empty() || graph.edges.empty()) {
    throw EmptyGraphError("g2o input has " + std::to_string(graph.vertices.size()) + " vertices and " +
                          std::to_string(graph.edges.size()) + " edges");
  }
  return graph;
}

PoseGraph parse_g2o(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  return parse_g2o(in);
}

double rotational_weight(const PoseEdge& edge) {
  if (edge.kind == PoseKind::SE2) return edge.information(2, 2);
  return (edge.information(3, 3) + edge.information(4, 4) + edge.information(5, 5)) / 3.0;
}

Index budget_from_fraction(double fraction, Index num_candidates) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("budget fraction must lie in [0, 1]");
  }
  const auto k = static_cast<Index>(std::floor(fraction * static_cast<double>(num_candidates) + 0.5));
  return std::min(k, num_candidates);
}

ExtractedProblem partition_edges(const PoseGraph& graph) {
  std::vector<WeightedEdge> fixed;
  std::vector<WeightedEdge> candidates;
  std::vector<std::size_t> fixed_ids;
  std::vector<std::size_t> candidate_ids;
  for (std::size_t i = 0; i < graph.edges.size(); ++i) {
    const auto& e = graph.edges[i];
    const Index a = graph.index_of.at(e.id_from);
    const Index b = graph.index_of.at(e.id_to);
    WeightedEdge we{std::min(a, b), std::max(a, b), rotational_weight(e)};
    if (we.v - we.u == 1) {
      fixed.push_back(we);
      fixed_ids.push_back(i);
    } else {
      candidates.push_back(we);
      candidate_ids.push_back(i);
    }
  }
  SparsificationProblem problem(graph.num_nodes(), std::move(fixed), std::move(candidates), 0);
  return ExtractedProblem{std::move(problem), std::move(fixed_ids), std::move(candidate_ids)};
}

ExtractedProblem extract_problem_with_budget(const PoseGraph& graph, Index budget) {
  auto parts = partition_edges(graph);
  parts.problem = parts.problem.with_budget(budget);
  parts.problem.require_feasible();
  return parts;
}

ExtractedProblem extract_problem(const PoseGraph& graph, double budget_fraction) {
  auto parts = partition_edges(graph);
  const Index k = budget_from_fraction(budget_fraction, parts.problem.num_candidates());
  parts.problem = parts.problem.with_budget(k);
  parts.problem.require_feasible();
  return parts;
}

void write_selection(const PoseGraph& graph, const ExtractedProblem& extracted,
                     const SelectionVector& selection, std::ostream& out) {
  if (selection.size() != static_cast<Index>(extracted.candidate_edge_ids.size())) {
    throw DimensionError("selection length does not match candidate count");
  }
  if (!selection.integral()) throw FeasibilityError("only integral selections can be written");

  std::vector<bool> keep(graph.edges.size(), false);
  for (std::size_t i : extracted.fixed_edge_ids) keep[i] = true;
  for (std::size_t k = 0; k < extracted.candidate_edge_ids.size(); ++k) {
    if (selection[static_cast<Index>(k)] == 1.0) keep[extracted.candidate_edge_ids[k]] = true;
  }
  for (const auto& v : graph.vertices) {
    if (v.tokens.empty()) continue;  // inferred
    write_tokens(out, v.tokens);
    out << '\n';
  }
  for (std::size_t i = 0; i < graph.edges.size(); ++i) {
    if (!keep[i]) continue;
    const auto& e = graph.edges[i];
    out << e.tag << ' ' << e.id_from << ' ' << e.id_to << ' ';
    write_tokens(out, e.measurement);
    out << ' ';
    write_tokens(out, e.information_tokens);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed");
}

void write_selection(const PoseGraph& graph, const ExtractedProblem& extracted,
                     const SelectionVector& selection, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_selection(graph, extracted, selection, out);
}

}  // namespace acsparse::g2o
