#pragma once

#include <cstdint>
#include <string>

#include "acsparse/g2o.hpp"

namespace acsparse::testkit {

struct SyntheticPoseGraphSpec {
  Index n = 50;
  Index loop_closures = 30;
  g2o::PoseKind kind = g2o::PoseKind::SE2;
  std::uint64_t seed = 0;
  /// Vertex ids are first_id, first_id + id_stride, ... to exercise remapping.
  long long first_id = 0;
  long long id_stride = 1;
};

/// g2o text with an odometry chain and random loop closures between
/// non-consecutive poses. Information matrices are random diagonally
/// dominant symmetric matrices written as upper triangles.
std::string synthetic_g2o(const SyntheticPoseGraphSpec& spec);

}  // namespace acsparse::testkit
