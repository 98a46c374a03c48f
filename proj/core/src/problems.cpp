#include "hhomg/problems.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hhomg/io.hpp"

namespace hhomg {

SimplicialMesh Problem::coarse_mesh() const {
  if (domain == "square") return build_structured_square(4);
  if (domain == "lshape") return build_lshape_coarse();
  if (domain == "cube") return build_cube_bey(1);
  throw std::invalid_argument("Problem: unknown domain '" + domain + "'");
}

Problem make_problem(const std::string& domain) {
  Problem pb;
  pb.domain = domain;
  const double pi = M_PI;
  if (domain == "square") {
    pb.dim = 2;
    pb.exact = [pi](const Eigen::Vector3d& x) { return std::sin(4 * pi * x.x()) * std::sin(4 * pi * x.y()); };
    pb.grad_exact = [pi](const Eigen::Vector3d& x) {
      return Eigen::Vector3d(4 * pi * std::cos(4 * pi * x.x()) * std::sin(4 * pi * x.y()),
                             4 * pi * std::sin(4 * pi * x.x()) * std::cos(4 * pi * x.y()), 0.0);
    };
    pb.source = [pi](const Eigen::Vector3d& x) {
      return 32 * pi * pi * std::sin(4 * pi * x.x()) * std::sin(4 * pi * x.y());
    };
    pb.boundary = nullptr;
  } else if (domain == "lshape") {
    pb.dim = 2;
    auto polar = [](const Eigen::Vector3d& x) {
      double r = std::hypot(x.x(), x.y());
      double phi = std::atan2(x.y(), x.x());
      if (phi < 0.0) phi += 2.0 * M_PI;  // phi in [0, 3pi/2] on the L-shape
      return std::make_pair(r, phi);
    };
    pb.exact = [polar](const Eigen::Vector3d& x) {
      auto [r, phi] = polar(x);
      return std::pow(r, 2.0 / 3.0) * std::sin(2.0 * phi / 3.0);
    };
    pb.grad_exact = [polar](const Eigen::Vector3d& x) {
      auto [r, phi] = polar(x);
      if (r == 0.0) return Eigen::Vector3d::Zero().eval();
      const double ur = (2.0 / 3.0) * std::pow(r, -1.0 / 3.0) * std::sin(2.0 * phi / 3.0);
      const double up = (2.0 / 3.0) * std::pow(r, -1.0 / 3.0) * std::cos(2.0 * phi / 3.0);
      return Eigen::Vector3d(ur * std::cos(phi) - up * std::sin(phi),
                             ur * std::sin(phi) + up * std::cos(phi), 0.0);
    };
    pb.source = nullptr;  // harmonic
    pb.boundary = pb.exact;
  } else if (domain == "cube") {
    pb.dim = 3;
    pb.exact = [pi](const Eigen::Vector3d& x) {
      return std::sin(4 * pi * x.x()) * std::sin(4 * pi * x.y()) * std::sin(4 * pi * x.z());
    };
    pb.grad_exact = [pi](const Eigen::Vector3d& x) {
      const double sx = std::sin(4 * pi * x.x()), cx = std::cos(4 * pi * x.x());
      const double sy = std::sin(4 * pi * x.y()), cy = std::cos(4 * pi * x.y());
      const double sz = std::sin(4 * pi * x.z()), cz = std::cos(4 * pi * x.z());
      return Eigen::Vector3d(4 * pi * cx * sy * sz, 4 * pi * sx * cy * sz, 4 * pi * sx * sy * cz);
    };
    pb.source = [pi](const Eigen::Vector3d& x) {
      return 48 * pi * pi * std::sin(4 * pi * x.x()) * std::sin(4 * pi * x.y()) *
             std::sin(4 * pi * x.z());
    };
    pb.boundary = nullptr;
  } else {
    throw std::invalid_argument("make_problem: unknown domain '" + domain + "'");
  }
  return pb;
}

std::string injection_name(InjectionKind k) {
  switch (k) {
    case InjectionKind::I1: return "i1";
    case InjectionKind::I2: return "i2";
    case InjectionKind::I3: return "i3";
  }
  return "?";
}

InjectionKind parse_injection(const std::string& name) {
  if (name == "i1" || name == "I1") return InjectionKind::I1;
  if (name == "i2" || name == "I2") return InjectionKind::I2;
  if (name == "i3" || name == "I3") return InjectionKind::I3;
  throw std::invalid_argument("parse_injection: unknown injection '" + name + "'");
}

void ExperimentConfig::validate() const {
  if (domain != "square" && domain != "lshape" && domain != "cube")
    throw std::invalid_argument("ExperimentConfig: unknown domain '" + domain + "'");
  if (p < 1 || p > 3) throw std::invalid_argument("ExperimentConfig: p must be in {1,2,3}");
  if (levels < 2) throw std::invalid_argument("ExperimentConfig: need levels >= 2");
  if (tol <= 0) throw std::invalid_argument("ExperimentConfig: tol must be positive");
  if (domain == "cube" && levels > 5)
    throw std::invalid_argument(
        "ExperimentConfig: cube levels > 5 refused (problem would exceed the memory budget)");
  if (cycle != "v11" && cycle != "v22" && cycle != "variable")
    throw std::invalid_argument("ExperimentConfig: unknown cycle '" + cycle + "'");
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const Problem pb = make_problem(config.domain);
  MeshHierarchy meshes(pb.coarse_mesh(), config.levels + 1);
  DiscreteHierarchy hier = assemble_hierarchy(meshes, config.p, pb.source, pb.boundary);
  std::vector<TransferPair> transfers = build_transfers(hier, config.injection);
  const CycleSpec cycle = make_cycle(config.cycle, config.n_finest, config.growth);

  std::vector<ExperimentRow> rows;
  const int first = std::min(3, config.levels);
  for (int l = first; l <= config.levels; ++l) {
    std::vector<const CondensedSystem*> systems;
    std::vector<const TransferPair*> pairs;
    for (int k = 0; k <= l; ++k) {
      systems.push_back(&hier.systems[k]);
      pairs.push_back(&transfers[k]);
    }
    MultigridSolver solver(systems, pairs, cycle);
    // backward error against the right-hand side of the assembled
    // (uncondensed) system, the convention behind the published counts
    SolveReport report = solver.solve(hier.systems[l].b, config.tol, config.max_iter, nullptr,
                                      hier.systems[l].uncondensed_rhs_norm);
    rows.push_back({l, hier.spaces[l].dim, report.iterations, report.diverged, report.seconds});
  }

  if (!config.export_prefix.empty()) {
    const CondensedSystem& top = hier.systems[config.levels];
    write_matrix_market(top.A, config.export_prefix + ".mtx");
    write_vector(top.b, config.export_prefix + ".rhs");
  }
  return rows;
}

std::string format_rows(const ExperimentConfig& config, const std::vector<ExperimentRow>& rows) {
  std::ostringstream out;
  if (config.format == "md") {
    out << "| level | dofs | iterations |\n|---|---|---|\n";
    for (const auto& r : rows) {
      out << "| " << r.level << " | " << r.dofs << " | ";
      if (r.diverged)
        out << "inf";
      else
        out << r.iterations;
      out << " |\n";
    }
  } else {
    out << "domain,p,injection,cycle,level,dofs,iterations\n";
    for (const auto& r : rows) {
      out << config.domain << "," << config.p << "," << injection_name(config.injection) << ","
          << config.cycle << "," << r.level << "," << r.dofs << ",";
      if (r.diverged)
        out << "inf";
      else
        out << r.iterations;
      out << "\n";
    }
  }
  return out.str();
}

namespace {

std::vector<int> skeleton_sizes(const std::string& domain, int p, int max_level) {
  const Problem pb = make_problem(domain);
  MeshHierarchy meshes(pb.coarse_mesh(), max_level + 1);
  std::vector<int> dofs;
  const int fdofs = poly_space_dim(p, meshes.level(0).dim() - 1);
  for (int l = 0; l <= max_level; ++l)
    dofs.push_back(meshes.level(l).num_interior_faces() * fdofs);
  return dofs;
}

void size_table(std::ostringstream& out, const std::string& domain, int max_level) {
  out << "levels";
  for (int l = 3; l <= max_level; ++l) out << " | " << l;
  out << "\n";
  for (int p = 1; p <= 3; ++p) {
    auto dofs = skeleton_sizes(domain, p, max_level);
    out << "p=" << p;
    for (int l = 3; l <= max_level; ++l) out << " | " << dofs[l];
    out << "\n";
  }
  out << "\n";
}

void iteration_table(std::ostringstream& out, const std::string& domain, InjectionKind inj,
                     const std::vector<std::string>& cycles, int max_level) {
  for (const auto& cyc : cycles) {
    out << "cycle " << cyc << " | levels";
    for (int l = 3; l <= max_level; ++l) out << " | " << l;
    out << "\n";
    for (int p = 1; p <= 3; ++p) {
      ExperimentConfig cfg;
      cfg.domain = domain;
      cfg.p = p;
      cfg.levels = max_level;
      cfg.injection = inj;
      cfg.cycle = cyc;
      auto rows = run_experiment(cfg);
      out << "p=" << p;
      for (const auto& r : rows) {
        out << " | ";
        if (r.diverged)
          out << "inf";
        else
          out << r.iterations;
      }
      out << "\n";
    }
    out << "\n";
  }
}

}  // namespace

std::string reproduce_tables(const std::vector<int>& which, int max_level) {
  std::ostringstream out;
  for (int t : which) {
    switch (t) {
      case 1:
        out << "# Table 1: square, face unknowns per level\n";
        size_table(out, "square", max_level);
        break;
      case 2:
        out << "# Table 2: square, V(2,2) iterations with I1\n";
        iteration_table(out, "square", InjectionKind::I1, {"v22"}, max_level);
        break;
      case 3:
        out << "# Table 3: square, iterations with I2\n";
        iteration_table(out, "square", InjectionKind::I2, {"v11", "v22"}, max_level);
        break;
      case 4:
        out << "# Table 4: square, iterations with I3\n";
        iteration_table(out, "square", InjectionKind::I3, {"v11", "v22"}, max_level);
        break;
      case 5:
        out << "# Table 5: L-shape, face unknowns per level\n";
        size_table(out, "lshape", max_level);
        break;
      case 6:
        out << "# Table 6: L-shape, iterations with I2\n";
        iteration_table(out, "lshape", InjectionKind::I2, {"v11", "v22"}, max_level);
        break;
      case 7:
        out << "# Table 7: L-shape, iterations with I3\n";
        iteration_table(out, "lshape", InjectionKind::I3, {"v11", "v22"}, max_level);
        break;
      case 8:
        out << "# Table 8: cube, face unknowns per level\n";
        size_table(out, "cube", std::min(max_level, 5));
        break;
      case 9:
        out << "# Table 9: cube, V(2,2) iterations with I3\n";
        iteration_table(out, "cube", InjectionKind::I3, {"v22"}, std::min(max_level, 5));
        break;
      default:
        throw std::invalid_argument("reproduce_tables: table id out of range 1..9");
    }
  }
  return out.str();
}

void export_system(const ExperimentConfig& config, int level, const std::string& prefix) {
  config.validate();
  if (level < 0 || level > config.levels)
    throw std::invalid_argument("export_system: level out of range");
  const Problem pb = make_problem(config.domain);
  MeshHierarchy meshes(pb.coarse_mesh(), level + 1);
  const SkeletonSpace space = make_skeleton_space(meshes.level(level), config.p);
  const CondensedSystem sys = assemble(meshes.level(level), space, config.p, pb.source, pb.boundary);
  write_matrix_market(sys.A, prefix + ".mtx");
  write_vector(sys.b, prefix + ".rhs");
}

}  // namespace hhomg
