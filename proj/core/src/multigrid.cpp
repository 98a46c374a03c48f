#include "hhomg/multigrid.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

namespace hhomg {

int CycleSpec::sweeps(int level, int top_level) const {
  switch (kind) {
    case CycleKind::V11:
      return 1;
    case CycleKind::V22:
      return 2;
    case CycleKind::Variable:
      // ceil keeps consecutive counts strictly growing toward coarse levels
      return std::max(1, static_cast<int>(std::ceil(n_finest * std::pow(growth, top_level - level))));
  }
  return 1;
}

std::vector<SweepDirection> CycleSpec::pre_sweeps(int level, int top_level) const {
  const int n = sweeps(level, top_level);
  std::vector<SweepDirection> dirs(n);
  for (int i = 0; i < n; ++i)
    dirs[i] = (i % 2 == 0) ? SweepDirection::Forward : SweepDirection::Backward;
  return dirs;
}

std::vector<SweepDirection> CycleSpec::post_sweeps(int level, int top_level) const {
  std::vector<SweepDirection> pre = pre_sweeps(level, top_level);
  std::vector<SweepDirection> post(pre.rbegin(), pre.rend());
  for (auto& d : post)
    d = (d == SweepDirection::Forward) ? SweepDirection::Backward : SweepDirection::Forward;
  return post;
}

CycleSpec make_cycle(const std::string& name, int n_finest, double growth) {
  CycleSpec c;
  if (name == "v11") {
    c.kind = CycleKind::V11;
  } else if (name == "v22") {
    c.kind = CycleKind::V22;
  } else if (name == "variable") {
    c.kind = CycleKind::Variable;
    if (growth <= 1.0 || growth > 2.0)
      throw std::invalid_argument("make_cycle: variable growth must lie in (1,2]");
    c.n_finest = std::max(1, n_finest);
    c.growth = growth;
  } else {
    throw std::invalid_argument("make_cycle: unknown cycle '" + name + "'");
  }
  return c;
}

MultigridSolver::MultigridSolver(const std::vector<const CondensedSystem*>& systems,
                                 const std::vector<const TransferPair*>& transfers,
                                 CycleSpec cycle)
    : systems_(systems), transfers_(transfers), cycle_(cycle) {
  if (systems_.empty()) throw std::invalid_argument("MultigridSolver: no systems");
  if (transfers_.size() != systems_.size())
    throw std::invalid_argument("MultigridSolver: transfers must match systems (entry 0 unused)");
  coarse_llt_.compute(Eigen::MatrixXd(systems_[0]->A));
  if (coarse_llt_.info() != Eigen::Success)
    throw std::runtime_error("MultigridSolver: coarse matrix not positive definite");
}

Eigen::VectorXd MultigridSolver::v_cycle(int level, const Eigen::VectorXd& b) const {
  if (level == 0) return coarse_llt_.solve(b);

  const SparseMat& A = systems_[level]->A;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(b.size());
  for (SweepDirection dir : cycle_.pre_sweeps(level, top_level()))
    gauss_seidel_sweep(A, x, b, dir);

  const Eigen::VectorXd coarse_b = transfers_[level]->restrict_load(b - A * x);
  x += transfers_[level]->prolongate(v_cycle(level - 1, coarse_b));

  for (SweepDirection dir : cycle_.post_sweeps(level, top_level()))
    gauss_seidel_sweep(A, x, b, dir);
  return x;
}

SolveReport MultigridSolver::solve(const Eigen::VectorXd& b, double tol, int max_iter,
                                   Eigen::VectorXd* solution, double rhs_norm) const {
  const auto t0 = std::chrono::steady_clock::now();
  SolveReport report;
  const int top = top_level();
  const SparseMat& A = systems_[top]->A;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(b.size());
  const double bnorm = rhs_norm > 0.0 ? rhs_norm : b.norm();
  if (bnorm == 0.0) {
    if (solution) *solution = x;
    return report;
  }

  for (int it = 1; it <= max_iter; ++it) {
    x += v_cycle(top, b - A * x);
    const double err = (b - A * x).norm() / bnorm;
    report.backward_errors.push_back(err);
    report.iterations = it;
    if (err < tol) {
      if (solution) *solution = x;
      report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return report;
    }
    if (!std::isfinite(err) || err > 1e6) break;  // mirrors the "infinity" entries
  }
  report.diverged = true;
  if (solution) *solution = x;
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

double estimate_lambda_max(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& matvec,
                           int dim, int iterations) {
  std::mt19937_64 rng(20240229ULL);
  std::normal_distribution<double> dist;
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = dist(rng);
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Eigen::VectorXd w = matvec(v);
    lambda = v.dot(w);
    const double n = w.norm();
    if (n == 0.0) return 0.0;
    v = w / n;
  }
  return lambda;
}

double estimate_lambda_max(const SparseMat& A, int iterations) {
  return estimate_lambda_max([&](const Eigen::VectorXd& v) { return Eigen::VectorXd(A * v); },
                             static_cast<int>(A.rows()), iterations);
}

double estimate_lambda_max_weighted(const SparseMat& A, const Eigen::VectorXd& W,
                                    int iterations) {
  // symmetric similarity transform W^{-1/2} A W^{-1/2}
  const Eigen::VectorXd s = W.cwiseSqrt().cwiseInverse();
  return estimate_lambda_max(
      [&](const Eigen::VectorXd& v) {
        return Eigen::VectorXd(s.cwiseProduct(A * s.cwiseProduct(v)));
      },
      static_cast<int>(A.rows()), iterations);
}

}  // namespace hhomg
