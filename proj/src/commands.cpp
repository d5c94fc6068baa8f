#include "acsparse/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "acsparse/baseline.hpp"
#include "acsparse/errors.hpp"
#include "acsparse/g2o.hpp"
#include "acsparse/report.hpp"

namespace acsparse::cli {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

g2o::ExtractedProblem extract(const g2o::PoseGraph& graph, const Budget& budget) {
  if (budget.edges) return g2o::extract_problem_with_budget(graph, *budget.edges);
  return g2o::extract_problem(graph, budget.fraction.value_or(1.0));
}

std::string percent_label(double fraction) {
  std::ostringstream os;
  os << std::setw(3) << std::setfill('0') << static_cast<int>(std::lround(fraction * 100.0));
  return os.str();
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const EmptyGraphError*>(&e) ||
      dynamic_cast<const InvalidEdgeError*>(&e)) {
    return kParseFailure;
  }
  if (dynamic_cast<const InfeasibleProblemError*>(&e) || dynamic_cast<const FeasibilityError*>(&e) ||
      dynamic_cast<const DimensionError*>(&e)) {
    return kInfeasible;
  }
  if (dynamic_cast<const SolverFailure*>(&e)) return kNotConverged;
  if (dynamic_cast<const std::invalid_argument*>(&e)) return kUsage;
  return kError;
}

int cmd_sparsify(const SparsifyArgs& args, std::ostream& log) {
  const auto graph = g2o::parse_g2o(args.input);
  if (graph.skipped_records > 0) log << "warning: skipped " << graph.skipped_records << " unknown records\n";
  const auto extracted = extract(graph, args.budget);
  const auto& problem = extracted.problem;
  for (const auto& w : problem.feasibility().warnings) log << "warning: " << w << '\n';

  const auto start = Clock::now();
  try {
    const SolveCertificate cert = mac(problem, args.config);
    const double ms = args.timings ? elapsed_ms(start) : 0.0;
    g2o::write_selection(graph, extracted, cert.rounded_selection, args.output);
    if (!args.report.empty()) write_json_file(args.report, certificate_to_json(cert, ms));
    log << "selected " << problem.budget() << " of " << problem.num_candidates()
        << " candidates: lambda2 " << format_double(cert.f_rounded) << " (naive "
        << format_double(cert.f_initial) << "), dual bound " << format_double(cert.dual_upper_bound)
        << ", " << cert.iterations() << " iterations\n";
    return kOk;
  } catch (const SolverFailure& e) {
    // Best effort: fall back to the baseline selection so the output exists.
    const SelectionVector naive = naive_topk(problem);
    g2o::write_selection(graph, extracted, naive, args.output);
    if (!args.report.empty()) {
      write_json_file(args.report, {{"error", e.what()},
                                    {"best_residual", e.best_residual()},
                                    {"selection", naive.support()},
                                    {"fallback", "naive"}});
    }
    log << "warning: " << e.what() << "; wrote the top-weight selection instead\n";
    return kNotConverged;
  }
}

int cmd_sweep(const SweepArgs& args, std::ostream& log) {
  const auto graph = g2o::parse_g2o(args.input);
  const auto base = g2o::partition_edges(graph).problem;
  const Index m = base.num_candidates();
  args.config.validate();

  std::vector<SweepRow> rows(args.fractions.size());
  std::vector<std::vector<IterateRecord>> traces(args.fractions.size());
  std::vector<int> codes(args.fractions.size(), kOk);

#ifdef _OPENMP
  const int threads = args.threads > 0 ? args.threads : omp_get_max_threads();
#endif
  const auto count = static_cast<std::ptrdiff_t>(args.fractions.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    SweepRow& row = rows[i];
    row.budget_fraction = args.fractions[i];
    try {
      row.k = g2o::budget_from_fraction(row.budget_fraction, m);
      const auto problem = base.with_budget(row.k);
      const auto start = Clock::now();
      const SolveCertificate cert = mac(problem, args.config);
      row.wall_time_ms = args.timings ? elapsed_ms(start) : 0.0;
      row.lambda2_mac = cert.f_rounded;
      row.lambda2_naive = cert.f_initial;
      row.dual_bound = cert.dual_upper_bound;
      row.gap = cert.suboptimality_bound;
      row.iterations = cert.iterations();
      traces[i] = cert.trace;
    } catch (const std::exception& e) {
      row.status = e.what();
      std::replace(row.status.begin(), row.status.end(), ',', ';');
      codes[i] = exit_code_for(e);
      row.lambda2_mac = row.lambda2_naive = row.dual_bound = row.gap = std::nan("");
    }
  }

  {
    std::ofstream out(args.output);
    if (!out) throw std::runtime_error("cannot open " + args.output.string() + " for writing");
    if (args.format == Format::Csv) {
      write_sweep_csv(out, rows);
    } else {
      write_sweep_json(out, rows);
    }
  }
  if (args.trace_dir) {
    std::filesystem::create_directories(*args.trace_dir);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (codes[i] != kOk) continue;
      std::ofstream out(*args.trace_dir / ("trace_" + percent_label(rows[i].budget_fraction) + ".csv"));
      write_trace_csv(out, traces[i]);
    }
  }

  int worst = kOk;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (codes[i] != kOk) {
      log << "budget " << format_double(rows[i].budget_fraction) << ": " << rows[i].status << '\n';
      if (worst == kOk) worst = codes[i];
    }
  }
  return worst;
}

int cmd_certify(const CertifyArgs& args, std::ostream& out, std::ostream& log) {
  const auto graph = g2o::parse_g2o(args.input);
  const auto chosen = read_selection_file(args.selection);
  const auto base = g2o::partition_edges(graph).problem;
  const Index m = base.num_candidates();

  Index k = static_cast<Index>(chosen.size());
  if (args.budget.edges) {
    k = *args.budget.edges;
  } else if (args.budget.fraction) {
    k = g2o::budget_from_fraction(*args.budget.fraction, m);
  }
  if (static_cast<Index>(chosen.size()) != k) {
    throw FeasibilityError("selection has " + std::to_string(chosen.size()) + " edges, budget is " +
                           std::to_string(k));
  }
  const auto problem = base.with_budget(k);
  const SelectionVector w = SelectionVector::indicator(m, chosen);
  if (!is_connected(problem, w)) log << "warning: selected graph is disconnected\n";

  const auto cert = certify_selection(problem, w, args.fiedler);
  if (args.format == Format::Json) {
    const nlohmann::json doc = {{"budget", k},
                                {"num_candidates", m},
                                {"objective", cert.objective},
                                {"dual_bound", cert.dual_bound},
                                {"suboptimality_bound", cert.suboptimality_bound}};
    out << doc.dump(2) << '\n';
  } else {
    out << "budget,num_candidates,objective,dual_bound,suboptimality_bound\n"
        << k << ',' << m << ',' << format_double(cert.objective) << ',' << format_double(cert.dual_bound)
        << ',' << format_double(cert.suboptimality_bound) << '\n';
  }
  return kOk;
}

}  // namespace acsparse::cli
