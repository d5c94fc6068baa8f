#include "acsparse/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace acsparse::kernels {

namespace parallel {

void edge_quadratic_forms(std::span<const WeightedEdge> edges, const Eigen::VectorXd& y,
                          Eigen::VectorXd& out) {
  const auto m = static_cast<std::ptrdiff_t>(edges.size());
  out.resize(m);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < m; ++k) {
    const double d = y[edges[k].u] - y[edges[k].v];
    out[k] = edges[k].weight * d * d;
  }
}

void symmetric_spmm(const SparseMatrix& L, const Eigen::MatrixXd& X, Eigen::MatrixXd& Y) {
  const Index n = L.outerSize();
  const Index cols = X.cols();
  Y.resize(L.rows(), cols);
  const int* outer = L.outerIndexPtr();
  const int* inner = L.innerIndexPtr();
  const double* val = L.valuePtr();
  const int* nnz = L.innerNonZeroPtr();  // null when compressed
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    const int begin = outer[i];
    const int end = nnz ? begin + nnz[i] : outer[i + 1];
    for (Index c = 0; c < cols; ++c) {
      const double* x = X.col(c).data();
      double acc = 0.0;
      for (int p = begin; p < end; ++p) acc += val[p] * x[inner[p]];
      Y(i, c) = acc;
    }
  }
}

}  // namespace parallel

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace acsparse::kernels
