#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include <Eigen/Core>

#include "acsparse/graph.hpp"
#include "acsparse/kernels.hpp"

namespace acsparse {

/// Second-smallest Laplacian eigenvalue with a unit eigenvector orthogonal to
/// the all-ones vector. `residual` is ||L y - lambda2 y||_2.
struct FiedlerPair {
  double lambda2 = 0.0;
  Eigen::VectorXd vector;
  double residual = 0.0;
};

enum class Preconditioner {
  Auto,              // grounded Cholesky when the predicted fill is small, else Jacobi
  GroundedCholesky,  // exact solve with one node grounded; near-exact inverse on 1-perp
  Jacobi,
};

struct FiedlerOptions {
  /// Convergence when ||L y - lambda y|| <= tol * ||L||_F.
  double tol = 1e-10;
  int max_iters = 5000;
  std::uint64_t seed = 0;
  /// Problems with n <= dense_cutoff are handed to the dense eigensolver.
  Index dense_cutoff = 64;
  Index block_size = 4;
  Preconditioner preconditioner = Preconditioner::Auto;
  /// Auto mode budget for the grounded factor, in predicted nonzeros and in
  /// predicted multiply-adds (sum of squared column counts).
  double max_factor_nonzeros = 4e6;
  double max_factor_flops = 1e8;
  Execution execution = Execution::Parallel;
};

/// Default size cap for the dense oracle.
inline constexpr Index kDenseOracleCap = 2000;

/// Dense eigendecomposition on the complement of the all-ones vector. Throws
/// OracleRefused when n exceeds `size_cap` and DimensionError when n < 2.
FiedlerPair fiedler_pair_dense(const Eigen::MatrixXd& L, Index size_cap = kDenseOracleCap);
FiedlerPair fiedler_pair_dense(const SparseMatrix& L, Index size_cap = kDenseOracleCap);

/// Sparse Fiedler pair. Throws SolverFailure carrying the best residual when
/// the iteration cap is hit, DimensionError when n < 2.
FiedlerPair fiedler_pair(const SparseMatrix& L, const FiedlerOptions& options = {});

/// Stateful solver for a sequence of Laplacians sharing one sparsity pattern:
/// keeps the symbolic factorization and warm-starts from the previous vector.
class FiedlerSolver {
 public:
  explicit FiedlerSolver(FiedlerOptions options = {});
  ~FiedlerSolver();
  FiedlerSolver(FiedlerSolver&&) noexcept;
  FiedlerSolver& operator=(FiedlerSolver&&) noexcept;

  FiedlerPair solve(const SparseMatrix& L);

  /// Preconditioner used by the most recent sparse solve (Auto resolved).
  Preconditioner last_preconditioner() const noexcept { return last_preconditioner_; }
  int last_iterations() const noexcept { return last_iterations_; }
  const FiedlerOptions& options() const noexcept { return options_; }

 private:
  struct Factor;
  FiedlerOptions options_;
  std::unique_ptr<Factor> factor_;
  std::optional<Eigen::VectorXd> warm_start_;
  Preconditioner last_preconditioner_ = Preconditioner::Auto;
  int last_iterations_ = 0;
};

/// Flip `y` so its first entry with magnitude above 1e-12 is positive.
void canonicalize_sign(Eigen::VectorXd& y);

/// Connected components read off the nonzero off-diagonal pattern of L.
/// Returns the component label of every node; labels start at 0 with node 0.
std::vector<Index> laplacian_components(const SparseMatrix& L, Index* count = nullptr);

}  // namespace acsparse
