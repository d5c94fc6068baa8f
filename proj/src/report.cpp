#include "acsparse/report.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "acsparse/errors.hpp"

namespace acsparse {

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

nlohmann::json certificate_to_json(const SolveCertificate& cert, double wall_time_ms) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& r : cert.trace) {
    trace.push_back({{"iter", r.iter},
                     {"objective", r.objective},
                     {"dual_bound", r.dual_bound},
                     {"gap", r.gap},
                     {"step_size", r.step_size}});
  }
  const auto& relaxed = cert.relaxed_selection.values();
  return {
      {"f_rounded", cert.f_rounded},
      {"f_relaxed", cert.f_relaxed},
      {"f_naive", cert.f_initial},
      {"dual_upper_bound", cert.dual_upper_bound},
      {"suboptimality_bound", cert.suboptimality_bound},
      {"iterations", cert.iterations()},
      {"terminated_by", std::string(to_string(cert.terminated_by))},
      {"used_initial_selection", cert.used_initial_selection},
      {"wall_time_ms", wall_time_ms},
      {"budget", cert.rounded_selection.support().size()},
      {"num_candidates", cert.rounded_selection.size()},
      {"selection", cert.rounded_selection.support()},
      {"relaxed_selection", std::vector<double>(relaxed.data(), relaxed.data() + relaxed.size())},
      {"trace", std::move(trace)},
  };
}

nlohmann::json sweep_row_to_json(const SweepRow& row) {
  return {{"budget_fraction", row.budget_fraction},
          {"k", row.k},
          {"lambda2_mac", row.lambda2_mac},
          {"lambda2_naive", row.lambda2_naive},
          {"dual_bound", row.dual_bound},
          {"gap", row.gap},
          {"iterations", row.iterations},
          {"wall_time_ms", row.wall_time_ms},
          {"status", row.status}};
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    out << format_double(r.budget_fraction) << ',' << r.k << ',' << format_double(r.lambda2_mac) << ','
        << format_double(r.lambda2_naive) << ',' << format_double(r.dual_bound) << ','
        << format_double(r.gap) << ',' << r.iterations << ',' << format_double(r.wall_time_ms) << ','
        << r.status << '\n';
  }
}

void write_sweep_json(std::ostream& out, std::span<const SweepRow> rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) arr.push_back(sweep_row_to_json(r));
  out << arr.dump(2) << '\n';
}

void write_trace_csv(std::ostream& out, std::span<const IterateRecord> trace) {
  out << kTraceCsvHeader << '\n';
  for (const auto& r : trace) {
    out << r.iter << ',' << format_double(r.objective) << ',' << format_double(r.dual_bound) << ','
        << format_double(r.gap) << ',' << format_double(r.step_size) << '\n';
  }
}

std::vector<Index> read_selection_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      const auto doc = nlohmann::json::parse(text);
      return doc.at("selection").get<std::vector<Index>>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("selection report: ") + e.what(), 0);
    }
  }
  std::vector<Index> out;
  std::istringstream lines(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    std::istringstream ss(line.substr(0, line.find('#')));
    std::string tok;
    while (ss >> tok) {
      Index v = 0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError("malformed edge index '" + tok + "'", lineno);
      }
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace acsparse
