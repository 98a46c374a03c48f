// Manufactured Poisson problems on the three reference domains and the
// experiment drivers reproducing the iteration-count and problem-size
// tables.

#pragma once

#include <string>
#include <vector>

#include "hhomg/builders.hpp"
#include "hhomg/multigrid.hpp"
#include "hhomg/system.hpp"
#include "hhomg/transfer.hpp"

namespace hhomg {

struct Problem {
  std::string domain;  // square | lshape | cube
  int dim = 2;
  ScalarField exact;
  VectorField grad_exact;
  ScalarField source;      // f
  ScalarField boundary;    // Dirichlet data g (null for homogeneous)

  SimplicialMesh coarse_mesh() const;
};

/// square: u = sin(4 pi x) sin(4 pi y), f = 32 pi^2 u, g = 0
/// lshape: u = r^(2/3) sin(2 phi / 3), f = 0, g = u|_boundary
/// cube:   u = sin(4 pi x) sin(4 pi y) sin(4 pi z), f = 48 pi^2 u, g = 0
Problem make_problem(const std::string& domain);

struct ExperimentConfig {
  std::string domain = "square";
  int p = 1;
  int levels = 5;  // finest level; hierarchy spans 0..levels
  InjectionKind injection = InjectionKind::I3;
  std::string cycle = "v11";  // v11 | v22 | variable
  int n_finest = 1;           // variable cycle
  double growth = 2.0;        // variable cycle
  double tol = 1e-6;
  int max_iter = 100;
  std::string format = "csv";  // csv | md
  std::string export_prefix;   // optional MatrixMarket/rhs export

  void validate() const;
};

struct ExperimentRow {
  int level = 0;
  int dofs = 0;
  int iterations = 0;  // meaningful when !diverged
  bool diverged = false;
  double seconds = 0.0;
};

std::string injection_name(InjectionKind k);
InjectionKind parse_injection(const std::string& name);

/// Builds the hierarchy for the configured domain, assembles every level and
/// solves the condensed problem at levels min(3,L)..L. Iteration counts stop
/// on the backward error of the assembled (uncondensed) system: the
/// condensed residual measured against the uncondensed right-hand side.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

/// CSV with header domain,p,injection,cycle,level,dofs,iterations ("inf" for
/// divergence) or a markdown table per the chosen format.
std::string format_rows(const ExperimentConfig& config, const std::vector<ExperimentRow>& rows);

/// Markdown document with the requested tables (1..9), levels capped at
/// max_level: 1/5/8 problem sizes, 2 square I1 V(2,2), 3/4 square I2/I3,
/// 6/7 L-shape I2/I3, 9 cube I3 V(2,2).
std::string reproduce_tables(const std::vector<int>& which, int max_level);

/// MatrixMarket + plain-text RHS export of the condensed system at `level`
/// (written to prefix.mtx / prefix.rhs).
void export_system(const ExperimentConfig& config, int level, const std::string& prefix);

}  // namespace hhomg
