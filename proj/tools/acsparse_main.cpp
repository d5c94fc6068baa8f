// acsparse: sparsify g2o pose graphs by maximizing algebraic connectivity.
//
//   acsparse sparsify in.g2o -o out.g2o --budget 0.3 --report cert.json
//   acsparse sweep    in.g2o -o sweep.csv --trace-dir traces/
//   acsparse certify  in.g2o --selection cert.json

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "acsparse/commands.hpp"

namespace {

using namespace acsparse;

struct SharedFlags {
  std::optional<double> budget;
  std::optional<Index> budget_edges;
  int max_iters = 20;
  double gap_tol = 1e-8;
  double fiedler_tol = 1e-10;
  InitMode init = InitMode::Naive;
  std::uint64_t seed = 0;

  SolverConfig config() const {
    SolverConfig c;
    c.max_iters = max_iters;
    c.gap_tol = gap_tol;
    c.fiedler_tol = fiedler_tol;
    c.init = init;
    c.fiedler.seed = seed;
    return c;
  }
  cli::Budget budget_spec() const { return {budget, budget_edges}; }
};

void add_solver_flags(CLI::App* app, SharedFlags& f) {
  app->add_option("--max-iters", f.max_iters, "Frank-Wolfe update step cap")->capture_default_str();
  app->add_option("--gap-tol", f.gap_tol, "Duality gap stopping tolerance")->capture_default_str();
  app->add_option("--fiedler-tol", f.fiedler_tol, "Relative eigen-residual tolerance")->capture_default_str();
  const std::map<std::string, InitMode> inits{{"naive", InitMode::Naive}, {"uniform", InitMode::Uniform}};
  app->add_option("--init", f.init, "Initial iterate")
      ->transform(CLI::CheckedTransformer(inits, CLI::ignore_case))
      ->default_str("naive");
  app->add_option("--seed", f.seed, "Eigensolver random start seed")->capture_default_str();
}

void add_budget_flags(CLI::App* app, SharedFlags& f) {
  auto* frac = app->add_option("--budget", f.budget, "Fraction of candidate edges to keep")
                   ->check(CLI::Range(0.0, 1.0));
  auto* edges = app->add_option("--budget-edges", f.budget_edges, "Number of candidate edges to keep")
                    ->check(CLI::NonNegativeNumber);
  frac->excludes(edges);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pose-graph sparsification by algebraic connectivity maximization"};
  app.require_subcommand(1);

  SharedFlags sp_flags;
  cli::SparsifyArgs sp;
  auto* sparsify = app.add_subcommand("sparsify", "Select loop closures at one budget");
  sparsify->add_option("input", sp.input, "Input g2o file")->required()->check(CLI::ExistingFile);
  sparsify->add_option("-o,--output", sp.output, "Sparsified g2o output")->required();
  sparsify->add_option("-r,--report", sp.report, "JSON certificate output");
  sparsify->add_flag("!--no-timings", sp.timings, "Write wall_time_ms as 0 for byte-stable reports");
  add_budget_flags(sparsify, sp_flags);
  add_solver_flags(sparsify, sp_flags);

  SharedFlags sw_flags;
  cli::SweepArgs sw;
  std::string sw_format = "csv";
  std::string trace_dir;
  auto* sweep = app.add_subcommand("sweep", "Solve a list of budgets and tabulate MAC vs naive");
  sweep->add_option("input", sw.input, "Input g2o file")->required()->check(CLI::ExistingFile);
  sweep->add_option("-o,--output", sw.output, "Sweep table output")->required();
  sweep->add_option("--fractions", sw.fractions, "Budget fractions (default 0.1 .. 1.0)")
      ->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--format", sw_format, "Table format")->check(CLI::IsMember({"csv", "json"}));
  bool no_traces = false;
  sweep->add_option("--trace-dir", trace_dir,
                    "Directory for per-budget iteration traces (default <output stem>_traces)");
  sweep->add_flag("--no-traces", no_traces, "Do not write iteration traces");
  sweep->add_option("--threads", sw.threads, "Budgets solved concurrently (0 = OpenMP default)");
  sweep->add_flag("!--no-timings", sw.timings, "Write wall_time_ms as 0 for byte-stable output");
  add_solver_flags(sweep, sw_flags);

  SharedFlags ce_flags;
  cli::CertifyArgs ce;
  std::string ce_format = "json";
  auto* certify = app.add_subcommand("certify", "Bound the suboptimality of any selection");
  certify->add_option("input", ce.input, "Input g2o file")->required()->check(CLI::ExistingFile);
  certify->add_option("-s,--selection", ce.selection,
                      "Candidate indices (plain list or a sparsify JSON report)")
      ->required()
      ->check(CLI::ExistingFile);
  certify->add_option("--format", ce_format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  add_budget_flags(certify, ce_flags);
  certify->add_option("--fiedler-tol", ce_flags.fiedler_tol, "Relative eigen-residual tolerance")
      ->capture_default_str();
  certify->add_option("--seed", ce_flags.seed, "Eigensolver random start seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : acsparse::cli::kUsage;
  }

  try {
    if (*sparsify) {
      sp.budget = sp_flags.budget_spec();
      sp.config = sp_flags.config();
      return cli::cmd_sparsify(sp, std::cerr);
    }
    if (*sweep) {
      sw.config = sw_flags.config();
      sw.format = sw_format == "json" ? cli::Format::Json : cli::Format::Csv;
      if (!no_traces) {
        sw.trace_dir = trace_dir.empty()
                           ? sw.output.parent_path() / (sw.output.stem().string() + "_traces")
                           : std::filesystem::path(trace_dir);
      }
      return cli::cmd_sweep(sw, std::cerr);
    }
    ce.budget = ce_flags.budget_spec();
    ce.fiedler.tol = ce_flags.fiedler_tol;
    ce.fiedler.seed = ce_flags.seed;
    ce.format = ce_format == "json" ? cli::Format::Json : cli::Format::Csv;
    return cli::cmd_certify(ce, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::exit_code_for(e);
  }
}
