#include "acsparse/mac.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "acsparse/baseline.hpp"
#include "acsparse/errors.hpp"
#include "acsparse/kernels.hpp"

namespace acsparse {

namespace {

FiedlerOptions eigen_options(const SolverConfig& config) {
  FiedlerOptions opt = config.fiedler;
  opt.tol = config.fiedler_tol;
  return opt;
}

double objective(FiedlerSolver& solver, const SparsificationProblem& problem, const SelectionVector& w) {
  return solver.solve(build_laplacian(problem, w)).lambda2;
}

FrankWolfeResult run_frank_wolfe(FiedlerSolver& solver, const SparsificationProblem& problem,
                                 const SelectionVector& w0, const SolverConfig& config) {
  const Index m = problem.num_candidates();
  const Index k = problem.budget();
  if (w0.size() != m) throw DimensionError("initial iterate length does not match candidate count");
  w0.require_budget(k);

  FrankWolfeResult out;
  Eigen::VectorXd w = w0.values();
  for (int t = 0;; ++t) {
    SelectionVector current(w);
    const FiedlerPair pair = solver.solve(build_laplacian(problem, current));
    const Eigen::VectorXd grad = supergradient(problem, current, pair.vector, solver.options().execution);
    const SelectionVector s = solve_direction(grad, k);

    IterateRecord rec;
    rec.iter = t;
    rec.objective = pair.lambda2;
    rec.gap = grad.dot(s.values() - w);
    rec.dual_bound = rec.objective + rec.gap;

    if (rec.gap <= config.gap_tol) {
      out.trace.push_back(rec);
      out.terminated_by = Termination::GapTolerance;
      break;
    }
    if (t >= config.max_iters) {
      out.trace.push_back(rec);
      out.terminated_by = Termination::IterationCap;
      break;
    }
    const double alpha = 2.0 / (2.0 + static_cast<double>(t));
    rec.step_size = alpha;
    out.trace.push_back(rec);
    w = ((1.0 - alpha) * w + alpha * s.values()).cwiseMax(0.0).cwiseMin(1.0);
  }
  out.selection = SelectionVector(std::move(w));
  return out;
}

}  // namespace

void SolverConfig::validate() const {
  if (max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
  if (!(gap_tol > 0.0)) throw std::invalid_argument("gap_tol must be positive");
  if (!(fiedler_tol > 0.0)) throw std::invalid_argument("fiedler_tol must be positive");
}

std::string_view to_string(Termination t) {
  return t == Termination::GapTolerance ? "gap-tolerance" : "iteration-cap";
}

double algebraic_connectivity(const SparsificationProblem& problem, const SelectionVector& w,
                              const FiedlerOptions& options) {
  return fiedler_pair(build_laplacian(problem, w), options).lambda2;
}

Eigen::VectorXd supergradient(const SparsificationProblem& problem, const SelectionVector& w,
                              const Eigen::VectorXd& y, Execution ex) {
  if (w.size() != problem.num_candidates()) throw DimensionError("selection length mismatch");
  if (y.size() != problem.num_nodes()) throw DimensionError("Fiedler vector length mismatch");
  Eigen::VectorXd g;
  kernels::edge_quadratic_forms(ex, problem.candidate_edges(), y, g);
  return g;
}

SelectionVector solve_direction(const Eigen::VectorXd& gradient, Index k) {
  return top_k_indicator(gradient, k);
}

double dual_bound(double f_at_w, const Eigen::VectorXd& gradient, const SelectionVector& w,
                  const SelectionVector& s) {
  if (gradient.size() != w.size() || s.size() != w.size()) throw DimensionError("dual bound: length mismatch");
  return f_at_w + gradient.dot(s.values() - w.values());
}

SelectionVector round_selection(const SelectionVector& w, Index k) {
  return top_k_indicator(w.values(), k);
}

FrankWolfeResult frank_wolfe(const SparsificationProblem& problem, const SelectionVector& w0,
                             const SolverConfig& config) {
  config.validate();
  FiedlerSolver solver(eigen_options(config));
  return run_frank_wolfe(solver, problem, w0, config);
}

SolveCertificate mac(const SparsificationProblem& problem, const SolverConfig& config) {
  config.validate();
  problem.require_feasible();

  FiedlerSolver solver(eigen_options(config));
  const Index m = problem.num_candidates();
  const Index k = problem.budget();
  const SelectionVector naive = naive_topk(problem);
  const SelectionVector w0 = config.init == InitMode::Naive ? naive : SelectionVector::uniform(m, k);

  FrankWolfeResult fw = run_frank_wolfe(solver, problem, w0, config);

  SolveCertificate cert;
  cert.relaxed_selection = fw.selection;
  cert.f_relaxed = fw.trace.back().objective;
  cert.dual_upper_bound = std::numeric_limits<double>::infinity();
  for (const auto& rec : fw.trace) cert.dual_upper_bound = std::min(cert.dual_upper_bound, rec.dual_bound);

  const SelectionVector rounded = round_selection(fw.selection, k);
  const double f_rounded = objective(solver, problem, rounded);
  const double f_naive = objective(solver, problem, naive);
  cert.initial_selection = naive;
  cert.f_initial = f_naive;
  if (f_naive > f_rounded) {
    cert.rounded_selection = naive;
    cert.f_rounded = f_naive;
    cert.used_initial_selection = true;
  } else {
    cert.rounded_selection = rounded;
    cert.f_rounded = f_rounded;
  }
  // The bound and f_rounded come from separate eigensolves; keep roundoff
  // from producing a bound below an attained value.
  cert.dual_upper_bound = std::max(cert.dual_upper_bound, cert.f_rounded);
  cert.suboptimality_bound = cert.dual_upper_bound - cert.f_rounded;
  cert.trace = std::move(fw.trace);
  cert.terminated_by = fw.terminated_by;
  return cert;
}

SelectionCertificate certify_selection(const SparsificationProblem& problem, const SelectionVector& w,
                                       const FiedlerOptions& options) {
  w.require_budget(problem.budget());
  const FiedlerPair pair = fiedler_pair(build_laplacian(problem, w), options);
  const Eigen::VectorXd grad = supergradient(problem, w, pair.vector, options.execution);
  const SelectionVector s = solve_direction(grad, problem.budget());
  SelectionCertificate cert;
  cert.objective = pair.lambda2;
  cert.dual_bound = dual_bound(pair.lambda2, grad, w, s);
  cert.suboptimality_bound = cert.dual_bound - cert.objective;
  return cert;
}

}  // namespace acsparse
