#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "acsparse/fiedler.hpp"
#include "acsparse/graph.hpp"

namespace acsparse {

enum class InitMode {
  Naive,    // top-weight integral selection
  Uniform,  // budget/m in every entry
};

struct SolverConfig {
  /// Cap on Frank-Wolfe update steps.
  int max_iters = 20;
  /// Stop once the duality gap falls to this value.
  double gap_tol = 1e-8;
  double fiedler_tol = 1e-10;
  InitMode init = InitMode::Naive;
  /// Eigensolver settings; `fiedler.tol` is overridden by `fiedler_tol`.
  FiedlerOptions fiedler = {};

  /// Throws std::invalid_argument when max_iters < 1 or gap_tol <= 0.
  void validate() const;
};

struct IterateRecord {
  int iter = 0;
  double objective = 0.0;   // F(w_t)
  double dual_bound = 0.0;  // F(w_t) + grad . (s_t - w_t)
  double gap = 0.0;         // dual_bound - objective
  double step_size = 0.0;   // step applied after this record; 0 on the last one
};

enum class Termination { GapTolerance, IterationCap };

std::string_view to_string(Termination t);

struct FrankWolfeResult {
  SelectionVector selection;  // final fractional iterate
  std::vector<IterateRecord> trace;
  Termination terminated_by = Termination::IterationCap;
  /// Number of update steps taken.
  int iterations() const { return static_cast<int>(trace.size()) - 1; }
};

struct SolveCertificate {
  SelectionVector relaxed_selection;
  SelectionVector rounded_selection;
  SelectionVector initial_selection;
  double f_relaxed = 0.0;
  double f_rounded = 0.0;
  double f_initial = 0.0;
  /// Smallest per-iterate dual bound; upper-bounds the integer optimum.
  double dual_upper_bound = 0.0;
  /// dual_upper_bound - f_rounded.
  double suboptimality_bound = 0.0;
  /// True when the rounded final iterate lost to the initial selection and
  /// the initial selection was returned instead.
  bool used_initial_selection = false;
  std::vector<IterateRecord> trace;
  Termination terminated_by = Termination::IterationCap;
  int iterations() const { return static_cast<int>(trace.size()) - 1; }
};

/// lambda2 of L(w).
double algebraic_connectivity(const SparsificationProblem& problem, const SelectionVector& w,
                              const FiedlerOptions& options = {});

/// Supergradient of lambda2(L(w)) from a unit Fiedler vector y of L(w):
/// component k is weight_k * (y[u_k] - y[v_k])^2.
Eigen::VectorXd supergradient(const SparsificationProblem& problem, const SelectionVector& w,
                              const Eigen::VectorXd& y, Execution ex = Execution::Parallel);

/// Maximizer of s . gradient over {s in [0,1]^m, sum s = k}: the indicator of
/// the k largest gradient entries, ties by ascending index.
SelectionVector solve_direction(const Eigen::VectorXd& gradient, Index k);

/// F(w) + gradient . (s - w).
double dual_bound(double f_at_w, const Eigen::VectorXd& gradient, const SelectionVector& w,
                  const SelectionVector& s);

/// Keep the k largest entries of w, ties by ascending index.
SelectionVector round_selection(const SelectionVector& w, Index k);

/// Frank-Wolfe on the Boolean relaxation with step 2/(2+t). Throws
/// FeasibilityError when w0 is infeasible; eigensolver failures propagate.
FrankWolfeResult frank_wolfe(const SparsificationProblem& problem, const SelectionVector& w0,
                             const SolverConfig& config);

/// Initialize, run Frank-Wolfe, round, and certify. The returned selection is
/// the better of the rounded final iterate and the naive top-weight
/// selection. Throws InfeasibleProblemError for infeasible problems.
SolveCertificate mac(const SparsificationProblem& problem, const SolverConfig& config = {});

/// One-step certificate for an arbitrary feasible selection.
struct SelectionCertificate {
  double objective = 0.0;
  double dual_bound = 0.0;
  double suboptimality_bound = 0.0;
};

SelectionCertificate certify_selection(const SparsificationProblem& problem, const SelectionVector& w,
                                       const FiedlerOptions& options = {});

}  // namespace acsparse
