// Command-line driver for the HHO multigrid experiments.
//
//   hhomg run     [--domain --p --levels --injection --cycle ...]
//   hhomg tables  [--which 4 --which 7 --max-level 5]
//   hhomg export  [--domain --p --levels --level --out prefix]
//   hhomg verify  [--domain --p --levels --injection --format]
//
// Defaults reproduce the square / I3 / V(1,1) iteration table.

#include <iostream>

#include <CLI11.hpp>

#include "hhomg/problems.hpp"
#include "hhomg/verify.hpp"

using namespace hhomg;

int main(int argc, char** argv) {
  CLI::App app{"homogeneous multigrid solver for HHO skeletal systems"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string injection = "i3";

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--domain", cfg.domain, "square | lshape | cube")
        ->check(CLI::IsMember({"square", "lshape", "cube"}));
    cmd->add_option("--p", cfg.p, "polynomial degree (1..3)")->check(CLI::Range(1, 3));
    cmd->add_option("--levels", cfg.levels, "finest refinement level");
    cmd->add_option("--injection", injection, "i1 | i2 | i3")
        ->check(CLI::IsMember({"i1", "i2", "i3"}));
    cmd->add_option("--cycle", cfg.cycle, "v11 | v22 | variable")
        ->check(CLI::IsMember({"v11", "v22", "variable"}));
    cmd->add_option("--n-finest", cfg.n_finest, "variable cycle: sweeps at the finest level");
    cmd->add_option("--growth", cfg.growth, "variable cycle: per-level sweep growth in (1,2]");
    cmd->add_option("--tol", cfg.tol, "backward-error stopping tolerance");
    cmd->add_option("--max-iter", cfg.max_iter, "iteration cap (divergence report beyond)");
    cmd->add_option("--format", cfg.format, "csv | md")->check(CLI::IsMember({"csv", "md"}));
  };

  CLI::App* run = app.add_subcommand("run", "run one experiment and print the iteration table");
  add_common(run);
  run->add_option("--export", cfg.export_prefix, "also export the finest system (prefix.mtx/.rhs)");

  CLI::App* tables = app.add_subcommand("tables", "reproduce the published tables");
  std::vector<int> which{4};
  int max_level = 5;
  tables->add_option("--which", which, "table ids in 1..9 (repeatable)")
      ->check(CLI::Range(1, 9));
  tables->add_option("--max-level", max_level, "largest level to include");

  CLI::App* exp = app.add_subcommand("export", "export a condensed system in MatrixMarket form");
  add_common(exp);
  int exp_level = 3;
  std::string out_prefix = "system";
  exp->add_option("--level", exp_level, "level to export");
  exp->add_option("--out", out_prefix, "output prefix (writes prefix.mtx and prefix.rhs)");

  CLI::App* verify = app.add_subcommand("verify", "run the framework assumption suite");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    cfg.injection = parse_injection(injection);
    if (app.got_subcommand(run)) {
      const auto rows = run_experiment(cfg);
      std::cout << format_rows(cfg, rows);
      double total = 0.0;
      for (const auto& r : rows) total += r.seconds;
      std::cerr << "# solve time " << total << " s (timing is informational only)\n";
    } else if (app.got_subcommand(tables)) {
      std::cout << reproduce_tables(which, max_level);
    } else if (app.got_subcommand(exp)) {
      if (cfg.levels < exp_level) cfg.levels = exp_level;
      export_system(cfg, exp_level, out_prefix);
      std::cout << "wrote " << out_prefix << ".mtx and " << out_prefix << ".rhs\n";
    } else if (app.got_subcommand(verify)) {
      cfg.validate();
      const Problem pb = make_problem(cfg.domain);
      MeshHierarchy meshes(pb.coarse_mesh(), cfg.levels + 1);
      DiscreteHierarchy hier = assemble_hierarchy(meshes, cfg.p, pb.source, pb.boundary, {true});
      const auto transfers = build_transfers(hier, cfg.injection);
      AssumptionReport report = check_hm4_ia2(hier, transfers);
      report.append(check_hm7(hier));
      report.append(check_hm6(hier));
      report.append(check_hm1(hier));
      report.append(check_ia1(hier, transfers));
      report.append(check_spd_adjoint(hier, transfers));
      std::cout << (cfg.format == "csv" ? report.to_csv() : report.to_text());
      return report.all_pass() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
