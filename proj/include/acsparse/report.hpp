#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "acsparse/mac.hpp"

namespace acsparse {

/// One budget of a sweep. `gap` is dual_bound - lambda2_mac, the
/// suboptimality bound of the returned selection.
struct SweepRow {
  double budget_fraction = 0.0;
  Index k = 0;
  double lambda2_mac = 0.0;
  double lambda2_naive = 0.0;
  double dual_bound = 0.0;
  double gap = 0.0;
  int iterations = 0;
  double wall_time_ms = 0.0;
  std::string status = "ok";
};

/// CSV header of sweep output; column order is part of the file format.
inline constexpr const char* kSweepCsvHeader =
    "budget_fraction,k,lambda2_mac,lambda2_naive,dual_bound,gap,iterations,wall_time_ms,status";

inline constexpr const char* kTraceCsvHeader = "iter,objective,dual_bound,gap,step_size";

/// Shortest representation that round-trips the double.
std::string format_double(double x);

nlohmann::json certificate_to_json(const SolveCertificate& cert, double wall_time_ms);
nlohmann::json sweep_row_to_json(const SweepRow& row);

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);
void write_sweep_json(std::ostream& out, std::span<const SweepRow> rows);
void write_trace_csv(std::ostream& out, std::span<const IterateRecord> trace);

/// Candidate indices from either a JSON report (its "selection" array) or a
/// plain list of whitespace-separated integers with '#' comments.
std::vector<Index> read_selection_file(const std::filesystem::path& path);

}  // namespace acsparse
