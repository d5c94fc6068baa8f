#include "acsparse/kernels.hpp"

namespace acsparse::kernels::serial {

void edge_quadratic_forms(std::span<const WeightedEdge> edges, const Eigen::VectorXd& y,
                          Eigen::VectorXd& out) {
  out.resize(static_cast<Index>(edges.size()));
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const double d = y[edges[k].u] - y[edges[k].v];
    out[static_cast<Index>(k)] = edges[k].weight * d * d;
  }
}

void symmetric_spmm(const SparseMatrix& L, const Eigen::MatrixXd& X, Eigen::MatrixXd& Y) {
  Y.setZero(L.rows(), X.cols());
  // Column i of a symmetric matrix is row i, so each output row is a gather.
  for (Index i = 0; i < L.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(L, i); it; ++it) {
      Y.row(i) += it.value() * X.row(it.index());
    }
  }
}

}  // namespace acsparse::kernels::serial
