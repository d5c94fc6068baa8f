#pragma once

// Data-parallel inner loops. Each kernel has a plain serial reference in
// `serial` and an OpenMP version in `parallel`; the two must agree to
// rounding (they are compared in tests and in bench/).

#include <span>

#include <Eigen/Core>

#include "acsparse/graph.hpp"

namespace acsparse {

enum class Execution { Serial, Parallel };

namespace kernels {

namespace serial {

/// out_k = weight_k * (y[u_k] - y[v_k])^2
void edge_quadratic_forms(std::span<const WeightedEdge> edges, const Eigen::VectorXd& y,
                          Eigen::VectorXd& out);

/// Y = L X for a Laplacian with full symmetric storage.
void symmetric_spmm(const SparseMatrix& L, const Eigen::MatrixXd& X, Eigen::MatrixXd& Y);

}  // namespace serial

namespace parallel {

void edge_quadratic_forms(std::span<const WeightedEdge> edges, const Eigen::VectorXd& y,
                          Eigen::VectorXd& out);

void symmetric_spmm(const SparseMatrix& L, const Eigen::MatrixXd& X, Eigen::MatrixXd& Y);

}  // namespace parallel

inline void edge_quadratic_forms(Execution ex, std::span<const WeightedEdge> edges,
                                 const Eigen::VectorXd& y, Eigen::VectorXd& out) {
  if (ex == Execution::Parallel) {
    parallel::edge_quadratic_forms(edges, y, out);
  } else {
    serial::edge_quadratic_forms(edges, y, out);
  }
}

inline void symmetric_spmm(Execution ex, const SparseMatrix& L, const Eigen::MatrixXd& X,
                           Eigen::MatrixXd& Y) {
  if (ex == Execution::Parallel) {
    parallel::symmetric_spmm(L, X, Y);
  } else {
    serial::symmetric_spmm(L, X, Y);
  }
}

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int max_threads();

}  // namespace kernels
}  // namespace acsparse
