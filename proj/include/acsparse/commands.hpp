#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "acsparse/mac.hpp"

namespace acsparse::cli {

enum ExitCode : int {
  kOk = 0,
  kError = 1,          // I/O and anything unclassified
  kUsage = 2,
  kParseFailure = 3,
  kInfeasible = 4,     // infeasible problem or selection of the wrong size
  kNotConverged = 5,   // eigensolver failed; best-effort output was written
};

enum class Format { Csv, Json };

struct Budget {
  std::optional<double> fraction;
  std::optional<Index> edges;
};

struct SparsifyArgs {
  std::filesystem::path input;
  std::filesystem::path output;
  std::filesystem::path report;
  Budget budget;
  SolverConfig config;
  bool timings = true;
};

struct SweepArgs {
  std::filesystem::path input;
  std::filesystem::path output;
  std::vector<double> fractions = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  SolverConfig config;
  Format format = Format::Csv;
  /// Directory for per-budget iteration traces; empty disables them.
  std::optional<std::filesystem::path> trace_dir;
  bool timings = true;
  int threads = 0;  // 0 keeps the OpenMP default
};

struct CertifyArgs {
  std::filesystem::path input;
  std::filesystem::path selection;
  Budget budget;  // defaults to the size of the selection
  FiedlerOptions fiedler;
  Format format = Format::Json;
};

int cmd_sparsify(const SparsifyArgs& args, std::ostream& log);
int cmd_sweep(const SweepArgs& args, std::ostream& log);
int cmd_certify(const CertifyArgs& args, std::ostream& out, std::ostream& log);

/// Exit code for an exception escaping a command.
int exit_code_for(const std::exception& e);

}  // namespace acsparse::cli
