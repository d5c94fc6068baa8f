#include "acsparse/fiedler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/OrderingMethods>
#include <Eigen/SparseCholesky>

#include "acsparse/errors.hpp"
#include "acsparse/union_find.hpp"

namespace acsparse {

namespace {

void project_out_ones(Eigen::MatrixXd& M) { M.rowwise() -= M.colwise().mean(); }

void project_out_ones(Eigen::VectorXd& v) { v.array() -= v.mean(); }

double residual_norm(const SparseMatrix& L, const Eigen::VectorXd& y, double lambda) {
  return (L * y - lambda * y).norm();
}

// Orthonormal basis for span(S) by two passes of modified Gram-Schmidt.
// Columns that lose more than all but `drop_tol` of their norm are dropped.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& S, double drop_tol = 1e-10) {
  Eigen::MatrixXd Q(S.rows(), S.cols());
  Index kept = 0;
  for (Index j = 0; j < S.cols(); ++j) {
    Eigen::VectorXd v = S.col(j);
    const double original = v.norm();
    if (original == 0.0 || !std::isfinite(original)) continue;
    for (int pass = 0; pass < 2; ++pass) {
      for (Index i = 0; i < kept; ++i) v -= Q.col(i).dot(v) * Q.col(i);
    }
    const double remaining = v.norm();
    if (remaining <= drop_tol * original) continue;
    Q.col(kept++) = v / remaining;
  }
  return Q.leftCols(kept);
}

FiedlerPair disconnected_pair(const SparseMatrix& L, const std::vector<Index>& label) {
  const Index n = static_cast<Index>(label.size());
  Index first = 0;
  for (Index i = 0; i < n; ++i) first += label[i] == 0 ? 1 : 0;
  const double a = 1.0 / static_cast<double>(first);
  const double b = 1.0 / static_cast<double>(n - first);
  Eigen::VectorXd y(n);
  for (Index i = 0; i < n; ++i) y[i] = label[i] == 0 ? a : -b;
  y.normalize();
  FiedlerPair out;
  out.lambda2 = 0.0;
  out.residual = residual_norm(L, y, 0.0);
  out.vector = std::move(y);
  return out;
}

struct FillEstimate {
  double nonzeros = 0.0;
  double flops = 0.0;
  bool over_budget = false;
};

// Column counts of the Cholesky factor of the AMD-permuted grounded matrix,
// computed by walking row subtrees of the elimination tree. Stops early once
// the nonzero budget is exceeded.
FillEstimate predict_fill(const SparseMatrix& A, double nonzero_budget) {
  FillEstimate est;
  const Index n = A.rows();
  if (n == 0) return est;
  Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> pinv;
  Eigen::AMDOrdering<int> amd;
  amd(A.selfadjointView<Eigen::Lower>(), pinv);
  const Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> p = pinv.inverse();
  SparseMatrix ap(n, n);
  ap = A.selfadjointView<Eigen::Lower>().twistedBy(p);

  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<int> tags(static_cast<std::size_t>(n), -1);
  std::vector<double> counts(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    tags[k] = k;
    for (SparseMatrix::InnerIterator it(ap, k); it; ++it) {
      int i = static_cast<int>(it.index());
      if (i >= k) continue;
      for (; tags[i] != k; i = parent[i]) {
        if (parent[i] == -1) parent[i] = k;
        counts[i] += 1.0;
        tags[i] = k;
        est.nonzeros += 1.0;
      }
    }
    if (est.nonzeros > nonzero_budget) {
      est.over_budget = true;
      return est;
    }
  }
  for (double c : counts) est.flops += c * c;
  return est;
}

struct LobpcgResult {
  FiedlerPair pair;
  int iterations = 0;
  bool converged = false;
};

template <typename Apply>
LobpcgResult lobpcg_smallest(const SparseMatrix& L, double target, Apply&& precondition,
                             Eigen::MatrixXd X, const FiedlerOptions& opt) {
  const Index b = X.cols();
  LobpcgResult result;
  result.pair.residual = std::numeric_limits<double>::infinity();

  project_out_ones(X);
  X = orthonormalize(X);
  Eigen::MatrixXd AX;
  kernels::symmetric_spmm(opt.execution, L, X, AX);
  {
    Eigen::MatrixXd G = X.transpose() * AX;
    G = 0.5 * (G + G.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(G);
    X = X * eig.eigenvectors();
    AX = AX * eig.eigenvectors();
  }
  Eigen::MatrixXd P;  // search directions, empty on the first step

  for (int iter = 0; iter <= opt.max_iters; ++iter) {
    const Eigen::VectorXd lambda = (X.array() * AX.array()).colwise().sum().transpose();
    Eigen::MatrixXd R = AX - X * lambda.asDiagonal();

    Eigen::VectorXd y = X.col(0);
    project_out_ones(y);
    y.normalize();
    const double r0 = R.col(0).norm();
    if (r0 < result.pair.residual) {
      result.pair.residual = r0;
      result.pair.lambda2 = lambda[0];
      result.pair.vector = y;
    }
    result.iterations = iter;
    if (r0 <= target) {
      result.converged = true;
      break;
    }
    if (iter == opt.max_iters) break;

    Eigen::MatrixXd W = precondition(R);
    project_out_ones(W);

    const Index cols = X.cols() + W.cols() + P.cols();
    Eigen::MatrixXd S(X.rows(), cols);
    S << X, W, P;
    S = orthonormalize(S);
    Eigen::MatrixXd AS;
    kernels::symmetric_spmm(opt.execution, L, S, AS);
    Eigen::MatrixXd G = S.transpose() * AS;
    G = 0.5 * (G + G.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(G);
    const Index keep = std::min(b, S.cols());
    const Eigen::MatrixXd C = eig.eigenvectors().leftCols(keep);

    // New directions are the parts of the Ritz vectors outside span(X).
    const Index nx = std::min(X.cols(), S.cols());
    P = S.rightCols(S.cols() - nx) * C.bottomRows(S.cols() - nx);
    X = S * C;
    AX = AS * C;
  }
  return result;
}

}  // namespace

void canonicalize_sign(Eigen::VectorXd& y) {
  for (Index i = 0; i < y.size(); ++i) {
    if (std::abs(y[i]) > 1e-12) {
      if (y[i] < 0.0) y = -y;
      return;
    }
  }
}

std::vector<Index> laplacian_components(const SparseMatrix& L, Index* count) {
  const Index n = L.rows();
  UnionFind uf(static_cast<std::size_t>(n));
  for (Index j = 0; j < L.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(L, j); it; ++it) {
      if (it.index() != j && it.value() != 0.0) uf.unite(it.index(), j);
    }
  }
  std::vector<Index> label(static_cast<std::size_t>(n), -1);
  std::vector<Index> root_label(static_cast<std::size_t>(n), -1);
  Index next = 0;
  for (Index i = 0; i < n; ++i) {
    const auto r = uf.find(static_cast<std::size_t>(i));
    if (root_label[r] < 0) root_label[r] = next++;
    label[i] = root_label[r];
  }
  if (count != nullptr) *count = next;
  return label;
}

FiedlerPair fiedler_pair_dense(const Eigen::MatrixXd& L, Index size_cap) {
  const Index n = L.rows();
  if (L.cols() != n) throw DimensionError("Laplacian must be square");
  if (n < 2) throw DimensionError("Fiedler pair needs at least two nodes");
  if (n > size_cap) {
    throw OracleRefused("dense oracle refuses n = " + std::to_string(n) + " (cap " +
                        std::to_string(size_cap) + ")");
  }
  // Householder reflector H with H * (1/sqrt(n)) = e_1; its trailing n-1
  // columns are an orthonormal basis Q of the complement of the ones vector.
  Eigen::VectorXd u = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  u[0] -= 1.0;
  u.normalize();
  const Eigen::MatrixXd Ls = 0.5 * (L + L.transpose());
  const Eigen::VectorXd p = Ls * u;
  const double c = u.dot(p);
  const Eigen::MatrixXd HLH =
      Ls - 2.0 * u * p.transpose() - 2.0 * p * u.transpose() + 4.0 * c * u * u.transpose();
  const Eigen::MatrixXd B = HLH.bottomRightCorner(n - 1, n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(B);
  if (eig.info() != Eigen::Success) throw SolverFailure("dense eigensolver failed", 0.0);

  Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
  z.tail(n - 1) = eig.eigenvectors().col(0);
  Eigen::VectorXd y = z - 2.0 * u * u.dot(z);
  project_out_ones(y);
  y.normalize();
  canonicalize_sign(y);

  FiedlerPair out;
  out.lambda2 = std::max(0.0, eig.eigenvalues()[0]);
  out.residual = (Ls * y - out.lambda2 * y).norm();
  out.vector = std::move(y);
  return out;
}

FiedlerPair fiedler_pair_dense(const SparseMatrix& L, Index size_cap) {
  if (L.rows() > size_cap) {
    throw OracleRefused("dense oracle refuses n = " + std::to_string(L.rows()) + " (cap " +
                        std::to_string(size_cap) + ")");
  }
  return fiedler_pair_dense(Eigen::MatrixXd(L), size_cap);
}

struct FiedlerSolver::Factor {
  Index n = -1;
  std::vector<int> outer;
  std::vector<int> inner;
  Preconditioner kind = Preconditioner::Jacobi;
  Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt;

  bool matches(const SparseMatrix& L) const {
    if (L.rows() != n || static_cast<std::size_t>(L.nonZeros()) != inner.size()) return false;
    return std::equal(outer.begin(), outer.end(), L.outerIndexPtr()) &&
           std::equal(inner.begin(), inner.end(), L.innerIndexPtr());
  }
};

FiedlerSolver::FiedlerSolver(FiedlerOptions options) : options_(options) {}
FiedlerSolver::~FiedlerSolver() = default;
FiedlerSolver::FiedlerSolver(FiedlerSolver&&) noexcept = default;
FiedlerSolver& FiedlerSolver::operator=(FiedlerSolver&&) noexcept = default;

FiedlerPair FiedlerSolver::solve(const SparseMatrix& input) {
  const Index n = input.rows();
  if (input.cols() != n) throw DimensionError("Laplacian must be square");
  if (n < 2) throw DimensionError("Fiedler pair needs at least two nodes");
  last_iterations_ = 0;

  SparseMatrix L = input;
  L.makeCompressed();

  Index ncomp = 0;
  const auto label = laplacian_components(L, &ncomp);
  if (ncomp > 1) {
    auto pair = disconnected_pair(L, label);
    warm_start_ = pair.vector;
    return pair;
  }

  if (n <= options_.dense_cutoff) {
    auto pair = fiedler_pair_dense(L, std::max(options_.dense_cutoff, Index{2}));
    warm_start_ = pair.vector;
    return pair;
  }

  const double normL = L.norm();
  const double target = options_.tol * normL;

  if (!factor_ || !factor_->matches(L)) {
    factor_ = std::make_unique<Factor>();
    factor_->n = n;
    factor_->outer.assign(L.outerIndexPtr(), L.outerIndexPtr() + L.outerSize() + 1);
    factor_->inner.assign(L.innerIndexPtr(), L.innerIndexPtr() + L.nonZeros());
    const SparseMatrix grounded = L.topLeftCorner(n - 1, n - 1);
    Preconditioner kind = options_.preconditioner;
    if (kind == Preconditioner::Auto) {
      const auto fill = predict_fill(grounded, options_.max_factor_nonzeros);
      kind = (!fill.over_budget && fill.flops <= options_.max_factor_flops)
                 ? Preconditioner::GroundedCholesky
                 : Preconditioner::Jacobi;
    }
    factor_->kind = kind;
    if (kind == Preconditioner::GroundedCholesky) factor_->ldlt.analyzePattern(grounded);
  }
  last_preconditioner_ = factor_->kind;

  Eigen::VectorXd inv_diag;
  if (factor_->kind == Preconditioner::GroundedCholesky) {
    const SparseMatrix grounded = L.topLeftCorner(n - 1, n - 1);
    factor_->ldlt.factorize(grounded);
    if (factor_->ldlt.info() != Eigen::Success) {
      throw SolverFailure("grounded Laplacian factorization failed",
                          std::numeric_limits<double>::infinity());
    }
  } else {
    inv_diag = L.diagonal();
    for (Index i = 0; i < n; ++i) inv_diag[i] = inv_diag[i] > 0.0 ? 1.0 / inv_diag[i] : 1.0;
  }

  auto precondition = [&](const Eigen::MatrixXd& R) -> Eigen::MatrixXd {
    if (factor_->kind == Preconditioner::GroundedCholesky) {
      Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n, R.cols());
      W.topRows(n - 1) = factor_->ldlt.solve(R.topRows(n - 1));
      return W;
    }
    return inv_diag.asDiagonal() * R;
  };

  const Index b = std::clamp<Index>(options_.block_size, 1, n - 1);
  Eigen::MatrixXd X(n, b);
  std::mt19937_64 rng(options_.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (Index j = 0; j < b; ++j) {
    for (Index i = 0; i < n; ++i) X(i, j) = unif(rng);
  }
  if (warm_start_ && warm_start_->size() == n) X.col(0) = *warm_start_;

  auto run = lobpcg_smallest(L, target, precondition, std::move(X), options_);
  last_iterations_ = run.iterations;

  FiedlerPair pair = std::move(run.pair);
  canonicalize_sign(pair.vector);
  pair.lambda2 = std::max(0.0, pair.vector.dot(L * pair.vector));
  pair.residual = residual_norm(L, pair.vector, pair.lambda2);
  if (!run.converged && pair.residual > target) {
    std::ostringstream os;
    os.precision(3);
    os << "Fiedler solver did not converge in " << options_.max_iters
       << " iterations (best residual " << pair.residual << ", target " << target << ")";
    throw SolverFailure(os.str(), pair.residual);
  }
  warm_start_ = pair.vector;
  return pair;
}

FiedlerPair fiedler_pair(const SparseMatrix& L, const FiedlerOptions& options) {
  FiedlerSolver solver(options);
  return solver.solve(L);
}

}  // namespace acsparse
