#include "acsparse/testkit/fixtures.hpp"

#include <iomanip>
#include <random>
#include <sstream>

namespace acsparse::testkit {

namespace {

void write_information(std::ostream& out, Index dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> diag(5.0, 500.0);
  std::uniform_real_distribution<double> off(-0.5, 0.5);
  for (Index r = 0; r < dim; ++r) {
    for (Index c = r; c < dim; ++c) out << ' ' << (r == c ? diag(rng) : off(rng));
  }
}

void write_edge(std::ostream& out, const SyntheticPoseGraphSpec& spec, Index a, Index b,
                std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const long long ia = spec.first_id + spec.id_stride * a;
  const long long ib = spec.first_id + spec.id_stride * b;
  if (spec.kind == g2o::PoseKind::SE2) {
    out << "EDGE_SE2 " << ia << ' ' << ib << ' ' << u(rng) << ' ' << u(rng) << ' ' << u(rng);
    write_information(out, 3, rng);
  } else {
    out << "EDGE_SE3:QUAT " << ia << ' ' << ib << ' ' << u(rng) << ' ' << u(rng) << ' ' << u(rng)
        << " 0 0 0 1";
    write_information(out, 6, rng);
  }
  out << '\n';
}

}  // namespace

std::string synthetic_g2o(const SyntheticPoseGraphSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::ostringstream out;
  out << std::setprecision(17);
  for (Index i = 0; i < spec.n; ++i) {
    const long long id = spec.first_id + spec.id_stride * i;
    if (spec.kind == g2o::PoseKind::SE2) {
      out << "VERTEX_SE2 " << id << ' ' << u(rng) << ' ' << u(rng) << ' ' << u(rng) << '\n';
    } else {
      out << "VERTEX_SE3:QUAT " << id << ' ' << u(rng) << ' ' << u(rng) << ' ' << u(rng) << " 0 0 0 1\n";
    }
  }
  for (Index i = 0; i + 1 < spec.n; ++i) write_edge(out, spec, i, i + 1, rng);
  std::uniform_int_distribution<Index> node(0, spec.n - 1);
  for (Index k = 0; k < spec.loop_closures;) {
    Index a = node(rng);
    Index b = node(rng);
    if (a > b) std::swap(a, b);
    if (b - a < 2) continue;
    write_edge(out, spec, a, b, rng);
    ++k;
  }
  return out.str();
}

}  // namespace acsparse::testkit
