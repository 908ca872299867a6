#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cloneq/report.hpp"

namespace {

using cloneq::cli::RunConfig;

void add_common_options(CLI::App* cmd, RunConfig& cfg, std::string& quadrature) {
  cmd->add_option("--entropy-base", cfg.entropy_base, "Entropy log base")
      ->check(CLI::IsMember({"2", "e"}))
      ->capture_default_str();
  cmd->add_option("--quadrature", quadrature, "gauss:N or simpson:N")->capture_default_str();
  cmd->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--output", cfg.output_path, "Write the report (or figure CSV) to this path");
  cmd->add_flag("--parallel", cfg.parallel, "Evaluate alpha grids concurrently");
  cmd->add_flag("--published-forms", cfg.published_forms,
                "Also emit the as-published closed forms that the pipeline supersedes");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cloneq: cross-checked figures of merit for 1->2 qubit cloning protocols"};
  app.require_subcommand(0, 1);

  RunConfig cfg;
  std::string quadrature = "gauss:128";
  std::string from_json;
  app.add_option("--from-json", from_json,
                 "Re-run from the params object of a previously emitted JSON report");

  auto* bh = app.add_subcommand("bh", "Universal copying machine with overlap parameters (A, C)");
  bh->add_flag("--table1", cfg.table1, "Recompute both columns of the comparison table");
  bh->add_option("--A", cfg.A, "Overlap <Y|Y>");
  bh->add_option("--C", cfg.C, "Overlap <Y1|Q0>");
  bh->add_option("--alpha", cfg.alpha, "Real input amplitude in [0,1]");
  bh->add_option("--alpha-grid", cfg.alpha_grid, "Also report spreads over an N-point alpha grid");
  add_common_options(bh, cfg, quadrature);

  auto* pcc = app.add_subcommand("pcc", "Phase-covariant cloner");
  pcc->add_option("--case", cfg.pcc_case, "Input family (1, 2 or 3)")->check(CLI::Range(1, 3));
  pcc->add_option("--a", cfg.pa, "Coefficient a");
  pcc->add_option("--b", cfg.pb, "Coefficient b");
  pcc->add_option("--c", cfg.pc, "Coefficient c");
  pcc->add_option("--alpha", cfg.alpha, "Real input amplitude in [0,1]");
  pcc->add_option("--points", cfg.family_points, "Input-family sample size")->capture_default_str();
  pcc->add_option("--seed", cfg.seed, "Randomize the input family with this seed");
  add_common_options(pcc, cfg, quadrature);

  auto* sdc = app.add_subcommand("sdc", "Four-machine-state protocol with overlaps (A, B, C)");
  sdc->add_option("--A", cfg.A, "Overlap <Y0|Y0>");
  sdc->add_option("--B", cfg.B, "Overlap <Y1|Y1>");
  sdc->add_option("--C", cfg.C, "Overlap <Y1|Q0>");
  sdc->add_option("--alpha", cfg.alpha, "Real input amplitude in [0,1]");
  sdc->add_option("--alpha-grid", cfg.alpha_grid, "Also scan an N-point alpha grid");
  auto* sdc_opt = sdc->add_subcommand("optimize", "Minimize the averaged norm over the overlaps");
  sdc_opt->fallthrough();  // common options may follow the nested subcommand
  sdc_opt->add_option("--subcase", cfg.subcase, "general, equalAB or zeroC")
      ->check(CLI::IsMember({"general", "equalAB", "zeroC"}))
      ->capture_default_str();
  add_common_options(sdc, cfg, quadrature);

  auto* figures = app.add_subcommand("figures", "Perfect-cloning feasibility curves as CSV");
  figures->add_option("which", cfg.figure, "fig1 or fig2")
      ->check(CLI::IsMember({"fig1", "fig2"}));
  figures->add_option("--samples", cfg.samples, "Rows in the CSV")->capture_default_str();
  add_common_options(figures, cfg, quadrature);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (!from_json.empty()) {
      cfg = cloneq::cli::config_from_json_file(from_json);
      return cloneq::cli::run_and_emit(cfg);
    }
    if (bh->parsed())
      cfg.subcommand = "bh";
    else if (pcc->parsed())
      cfg.subcommand = "pcc";
    else if (sdc->parsed()) {
      cfg.subcommand = "sdc";
      cfg.optimize = sdc_opt->parsed();
    } else if (figures->parsed()) {
      cfg.subcommand = "figures";
      if (cfg.figure.empty()) {
        std::cerr << "error: figures needs fig1 or fig2\n";
        return 2;
      }
    } else {
      std::cerr << app.help();
      return 2;
    }
    cfg.quadrature = cloneq::opt::QuadratureSpec::parse(quadrature);
    return cloneq::cli::run_and_emit(cfg);
  } catch (const cloneq::cli::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
