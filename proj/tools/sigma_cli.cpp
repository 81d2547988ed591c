#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "sigmalib/report.hpp"

using namespace sigmalib;

namespace {

void add_cap_options(CLI::App *app, CapConfig &caps) {
  app->add_option("--subgroup-cap", caps.subgroup_cap,
                  "max |G| for full subgroup enumeration");
  app->add_option("--element-cap", caps.element_cap,
                  "max |G| for element streaming");
  app->add_option("--index-cap", caps.index_cap,
                  "max index for coset actions");
  app->add_option("--kmax", caps.kmax,
                  "component subset bound in the theorem C checker");
  app->add_option("--max-degree", caps.max_degree,
                  "max permutation degree for realizations");
  app->add_option("--seed", caps.seed,
                  "seed for internal sampling order (never affects results)");
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"finite-group sigma-theory engine"};
  app.set_config("--config");
  app.require_subcommand(1);

  CapConfig caps;

  // analyze
  std::string group_spec, sigma_spec = "sylow", out_dir;
  bool as_json = false;
  CLI::App *analyze_cmd =
      app.add_subcommand("analyze", "classify one group against a partition");
  analyze_cmd->add_option("group", group_spec, "group expression")->required();
  analyze_cmd->add_option("--sigma", sigma_spec,
                          "sigma partition, e.g. \"2 3|5|*\" or sylow");
  analyze_cmd->add_flag("--json", as_json, "emit the JSON report");
  analyze_cmd->add_option("--out", out_dir, "directory for the JSON report");
  add_cap_options(analyze_cmd, caps);

  // sweep
  u64 bound = 60;
  std::string sigmas = "sylow";
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  CLI::App *sweep_cmd = app.add_subcommand(
      "sweep", "cross-validate the generated catalog up to an order bound");
  sweep_cmd->add_option("bound", bound, "catalog order bound")->required();
  sweep_cmd->add_option("--sigmas", sigmas,
                        "semicolon-separated sigma specs");
  sweep_cmd->add_option("--jobs", jobs, "worker threads");
  sweep_cmd->add_option("--out", out_dir, "directory for per-row reports");
  add_cap_options(sweep_cmd, caps);

  // presets
  CLI::App *presets_cmd =
      app.add_subcommand("presets", "list the named example groups");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) ? 2 : 0;
  }

  try {
    if (analyze_cmd->parsed()) {
      AnalysisReport rep = analyze(group_spec, sigma_spec, caps);
      if (as_json)
        std::cout << report_to_json(rep) << "\n";
      else
        std::cout << report_human(rep);
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream f(std::filesystem::path(out_dir) / "report.json");
        f << report_to_json(rep) << "\n";
      }
      if (!rep.cross.consistent) {
        std::cerr << "internal inconsistency detected\n";
        return 3;
      }
      return 0;
    }
    if (sweep_cmd->parsed()) {
      SweepOptions opts;
      opts.order_bound = bound;
      opts.caps = caps;
      opts.jobs = jobs;
      opts.out_dir = out_dir;
      std::stringstream ss(sigmas);
      std::string tok;
      while (std::getline(ss, tok, ';'))
        if (!tok.empty()) opts.sigma_specs.push_back(tok);
      if (opts.sigma_specs.empty()) {
        std::cerr << "sweep: no sigma specs\n";
        return 2;
      }
      // validate the sigma specs up front
      for (const std::string &s : opts.sigma_specs)
        if (s != "sylow") SigmaPartition::parse(s);

      SweepSummary summary = run_sweep(opts);
      for (const SweepRow &row : summary.rows) {
        std::cout << row.group_spec << " | sigma=" << row.sigma_spec
                  << " | order=" << row.order
                  << " | psigmat=" << row.oracle.str()
                  << (row.consistent ? "" : " | INCONSISTENT") << "\n";
        for (const std::string &d : row.disagreements)
          std::cout << "    " << d << "\n";
      }
      std::cout << "rows=" << summary.rows.size() << " yes=" << summary.yes
                << " no=" << summary.no << " undecided=" << summary.undecided
                << " disagreements=" << summary.disagreements << "\n";
      return summary.disagreements == 0 ? 0 : 3;
    }
    if (presets_cmd->parsed()) {
      for (const std::string &name : preset_names())
        std::cout << name << "  =  " << print_group_expr(*preset(name))
                  << "\n";
      return 0;
    }
  } catch (const ParseError &e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const OverflowError &e) {
    std::cerr << "specification error: " << e.what() << "\n";
    return 2;
  } catch (const InternalInconsistency &e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return 3;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
