#include "cloneq/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cloneq/bh_uqcm.hpp"
#include "cloneq/phase_covariant.hpp"
#include "cloneq/sdc.hpp"

namespace cloneq::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr double kPairTolExact = 1e-12;
constexpr double kPairTolQuadrature = 1e-9;

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double probe_alpha(const RunConfig& cfg) { return cfg.alpha.value_or(1.0 / std::sqrt(2.0)); }

qmat::LogBase entropy_base(const RunConfig& cfg) {
  if (cfg.entropy_base == "2") return qmat::LogBase::Two;
  if (cfg.entropy_base == "e") return qmat::LogBase::E;
  throw UsageError("entropy base must be 2 or e");
}

/// Evaluate fn(i) for i in [0, n), optionally across threads. All call sites
/// are pure per-index computations writing to disjoint slots.
void for_each_index(int n, bool parallel, const std::function<void(int)>& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (!parallel || n < 32 || hw < 2) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  const int chunks = static_cast<int>(std::min<unsigned>(hw, 8));
  std::vector<std::future<void>> futures;
  for (int c = 0; c < chunks; ++c) {
    futures.push_back(std::async(std::launch::async, [&, c] {
      for (int i = c; i < n; i += chunks) fn(i);
    }));
  }
  for (auto& f : futures) f.get();
}

struct GridStats {
  double min = 0.0, max = 0.0;
  double spread() const { return max - min; }
};

GridStats grid_stats(int points, bool parallel, const std::function<double(double)>& f) {
  std::vector<double> vals(points);
  for_each_index(points, parallel, [&](int i) { vals[i] = f(static_cast<double>(i) / (points - 1)); });
  const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
  return {*lo, *hi};
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

std::string sidecar_path(const std::string& csv_path) {
  const auto dot = csv_path.rfind('.');
  const std::string stem = (dot == std::string::npos) ? csv_path : csv_path.substr(0, dot);
  return stem + ".endpoints.json";
}

json intervals_to_json(const std::vector<sdc::Interval>& xs) {
  json arr = json::array();
  for (const auto& x : xs) arr.push_back({x.lo, x.hi});
  return arr;
}

void put_common_params(ReportBundle& b, const RunConfig& cfg) {
  if (cfg.alpha_grid != 0 && cfg.alpha_grid < 2)
    throw UsageError("--alpha-grid needs at least 2 points");
  b.params["subcommand"] = cfg.subcommand;
  b.params["entropy_base"] = cfg.entropy_base;
  b.params["quadrature"] = cfg.quadrature.str();
  b.params["format"] = cfg.format;
  if (cfg.alpha) b.params["alpha"] = fmt12(*cfg.alpha);
  if (cfg.alpha_grid > 0) b.params["alpha_grid"] = std::to_string(cfg.alpha_grid);
  if (cfg.parallel) b.params["parallel"] = "1";
  if (cfg.published_forms) b.params["published_forms"] = "1";
}

}  // namespace

void ReportBundle::add(std::string name, double value, std::string route, double tolerance) {
  results.push_back({std::move(name), value, std::nullopt, std::move(route), tolerance});
}

void ReportBundle::add_exact(std::string name, const opt::Rational& value, double tolerance) {
  results.push_back({std::move(name), value.to_double(), value, "exact-rational", tolerance});
}

void ReportBundle::add_pair(const std::string& name, double value, std::string route, double check,
                            std::string check_route, double tolerance) {
  results.push_back({name, value, std::nullopt, std::move(route), tolerance});
  results.push_back({name + "_check", check, std::nullopt, std::move(check_route), tolerance});
  if (!(std::abs(value - check) <= tolerance)) {
    discrepant = true;
    add_verdict("route_agreement[" + name + "]", "discrepant");
  }
}

void ReportBundle::add_verdict(std::string key, std::string value) {
  verdicts.emplace_back(std::move(key), std::move(value));
}

const ScalarResult* ReportBundle::find(std::string_view name) const {
  for (const auto& r : results)
    if (r.name == name) return &r;
  return nullptr;
}

double ReportBundle::value_of(std::string_view name) const {
  const auto* r = find(name);
  if (!r) throw std::out_of_range("no result named '" + std::string(name) + "'");
  return r->value;
}

ReportBundle run_bh(const RunConfig& cfg) {
  ReportBundle b;
  b.subcommand = "bh";
  put_common_params(b, cfg);

  const auto emit_column = [&](const std::string& prefix, const bh::BHOverlaps& ov) {
    const double alpha = probe_alpha(cfg);
    const auto psi = qmat::PureQubit::from_alpha(alpha);
    const auto rho_id = qmat::DensityMatrix2(psi.density());
    const auto rho_out = bh::output_density_a(psi, ov);
    b.add_pair(prefix + "D_a", bh::hs_norm_a(alpha, ov), "closed-form",
               qmat::hs_distance(rho_id, rho_out), "matrix-oracle", kPairTolExact);
    b.add_pair(prefix + "F", bh::fidelity_closed(psi, ov), "closed-form",
               qmat::fidelity(rho_id, rho_out), "matrix-oracle", kPairTolExact);
    b.add(prefix + "D_ab_avg", bh::avg_hs_norm_ab(ov, cfg.quadrature), "quadrature",
          kPairTolQuadrature);
    b.add_verdict(prefix + "joint_csi", bh::csi_verdict_name(bh::joint_csi_feasible(ov)));
  };

  if (cfg.table1) {
    b.refs.push_back("uqcm-comparison-table");
    emit_column("original.", bh::BHOverlaps::original());
    emit_column("improved.", bh::BHOverlaps::improved());
    return b;
  }

  require(cfg.A.has_value() && cfg.C.has_value(), "bh: --A and --C are required (or --table1)");
  const bh::BHOverlaps ov(*cfg.A, *cfg.C);
  b.params["A"] = fmt12(ov.A);
  b.params["C"] = fmt12(ov.C);
  b.refs.push_back("uqcm-overlap-scan");
  emit_column("", ov);

  if (const auto realization = bh::realize_machine_vectors(ov)) {
    b.add("machine_isometry_residual", realization->isometry_residual(), "matrix-oracle", 1e-12);
    b.add_verdict("machine_realization", "rank-2");
  } else {
    b.add_verdict("machine_realization", "infeasible");
  }

  if (cfg.alpha_grid > 1) {
    const auto d_stats = grid_stats(cfg.alpha_grid, cfg.parallel,
                                    [&](double a) { return bh::hs_norm_a(a, ov); });
    const auto f_stats = grid_stats(cfg.alpha_grid, cfg.parallel, [&](double a) {
      return bh::fidelity_closed(qmat::PureQubit::from_alpha(a), ov);
    });
    b.add("D_a_grid_spread", d_stats.spread(), "closed-form", 0.0);
    b.add("F_grid_spread", f_stats.spread(), "closed-form", 0.0);
  }
  if (cfg.published_forms)
    b.add("D_ab2_published_at_alpha", bh::dab2_published(probe_alpha(cfg), ov), "closed-form", 0.0);
  return b;
}

ReportBundle run_pcc(const RunConfig& cfg) {
  ReportBundle b;
  b.subcommand = "pcc";
  put_common_params(b, cfg);
  b.params["points"] = std::to_string(cfg.family_points);
  if (cfg.seed) b.params["seed"] = std::to_string(*cfg.seed);

  const pcc::FamilySpec family{cfg.family_points, cfg.seed};

  if (cfg.pcc_case) {
    const auto which = pcc::case_from_index(*cfg.pcc_case);
    b.params["case"] = std::to_string(*cfg.pcc_case);
    b.refs.push_back("phase-covariant-case-" + std::to_string(*cfg.pcc_case));
    const auto best = pcc::maximize_fidelity(which);
    b.add("a", best.coeffs.a, "closed-form", 0.0);
    b.add("b", best.coeffs.b, "closed-form", 0.0);
    b.add("c", best.coeffs.c, "closed-form", 0.0);
    b.add("unitarity_residual", best.coeffs.unitarity_residual(), "closed-form", 1e-12);

    const auto probe = pcc::input_family(which, {5, cfg.seed}).at(2);
    b.add_pair("F_max", best.fidelity, "closed-form",
               qmat::fidelity(qmat::DensityMatrix2(probe.density()),
                              pcc::output_density_a(probe, best.coeffs)),
               "matrix-oracle", kPairTolExact);
    b.add("universality_residual", pcc::input_independence_residual(which, best.coeffs, family),
          "closed-form", 1e-12);
    if (which != pcc::PCCase::Case3) {
      b.add("universality_residual_complex",
            pcc::input_independence_residual(pcc::PCCase::Case3, best.coeffs, family),
            "closed-form", 0.0);
    }
    return b;
  }

  require(cfg.pa && cfg.pb && cfg.pc, "pcc: provide --case or all of --a/--b/--c");
  const pcc::PCCoeffs k(*cfg.pa, *cfg.pb, *cfg.pc);
  b.params["a"] = fmt12(k.a);
  b.params["b"] = fmt12(k.b);
  b.params["c"] = fmt12(k.c);
  b.refs.push_back("phase-covariant-coefficient-scan");
  const auto psi = cfg.alpha ? qmat::PureQubit::from_alpha(*cfg.alpha)
                             : qmat::PureQubit::from_alpha(1.0 / std::sqrt(2.0));
  const auto rho_a = pcc::output_density_a(psi, k);
  b.add_pair("F", pcc::fidelity(psi, k), "closed-form",
             qmat::fidelity(qmat::DensityMatrix2(psi.density()), rho_a), "matrix-oracle",
             kPairTolExact);
  const auto rho_b = pcc::output_density_mode(psi, k, qmat::Mode::B);
  b.add("rho_a_vs_rho_b", (rho_a.matrix() - rho_b.matrix()).cwiseAbs().maxCoeff(), "matrix-oracle",
        1e-12);
  b.add("unitarity_residual", k.unitarity_residual(), "closed-form", 1e-12);
  return b;
}

ReportBundle run_sdc(const RunConfig& cfg) {
  ReportBundle b;
  b.subcommand = "sdc";
  put_common_params(b, cfg);
  const auto base = entropy_base(cfg);

  const auto emit_averaged = [&](const sdc::SDCOverlaps& ov) {
    try {
      b.add_pair("Fbar", sdc::avg_fidelity(ov), "closed-form",
                 std::sqrt(opt::average_over_alpha(
                     [&](double a) {
                       const double f = sdc::fidelity(qmat::PureQubit::from_alpha(a), ov);
                       return f * f;
                     },
                     cfg.quadrature)),
                 "quadrature", kPairTolQuadrature);
    } catch (const std::domain_error&) {
      b.warnings.push_back("averaged fidelity unavailable for these overlaps");
    }
    try {
      const opt::QuadratureSpec check{opt::QuadratureSpec::Kind::Simpson, 2049};
      b.add_pair("Sbar", sdc::avg_entropy(ov, base, cfg.quadrature), "quadrature",
                 sdc::avg_entropy(ov, base, check), "quadrature", 1e-7);
    } catch (const std::domain_error&) {
      b.warnings.push_back("averaged entropy unavailable: unphysical states in the alpha range");
    }
    if (cfg.published_forms)
      b.add("Fbar_literal_integral", sdc::avg_fidelity_literal(ov, cfg.quadrature), "quadrature",
            0.0);
  };

  if (cfg.optimize) {
    const auto subcase = sdc::subcase_from_name(cfg.subcase);
    b.params["mode"] = "optimize";
    b.params["subcase"] = cfg.subcase;
    b.refs.push_back("state-dependent-" + cfg.subcase + "-optimum");
    const auto best = sdc::optimize_subcase(subcase);
    const auto abc = best.abc();
    b.add_exact("A", abc[0]);
    b.add_exact("B", abc[1]);
    b.add_exact("C", abc[2]);
    b.add_exact("Dbar_min", best.d_bar);
    b.add_verdict("objective_hessian", opt::definiteness_name(best.hessian));
    // the unaveraged norm has no certified minimum over the overlaps, which
    // is what forces the averaged objective in the first place
    b.add_verdict("pointwise_hessian",
                  opt::definiteness_name(opt::classify_hessian(
                      Eigen::MatrixXd(sdc::hessian_Da(probe_alpha(cfg))), 1e-10)) +
                      std::string(" (pointwise minimum indeterminate)"));
    const auto ov = best.overlaps();
    b.add_pair("Dbar", best.d_bar.to_double(), "exact-rational",
               opt::average_over_alpha([&](double a) { return sdc::hs_norm_a(a, ov); },
                                       cfg.quadrature),
               "quadrature", 1e-10);
    emit_averaged(ov);
    const auto csi = sdc::csi_feasible(ov);
    b.add_verdict("csi", csi.feasible() ? "feasible"
                                        : (csi.marginal_only() ? "marginal-only" : "infeasible"));
    return b;
  }

  require(cfg.A && cfg.B && cfg.C, "sdc: --A, --B and --C are required (or the optimize subcommand)");
  const sdc::SDCOverlaps ov(*cfg.A, *cfg.B, *cfg.C);
  b.params["A"] = fmt12(ov.A);
  b.params["B"] = fmt12(ov.B);
  b.params["C"] = fmt12(ov.C);
  b.refs.push_back("state-dependent-overlap-scan");

  const auto csi = sdc::csi_feasible(ov);
  b.add_verdict("csi", csi.feasible() ? "feasible"
                                      : (csi.marginal_only() ? "marginal-only" : "infeasible"));
  if (!csi.feasible())
    b.warnings.push_back("overlaps violate the CSI bounds; derived states may be unphysical");

  const double alpha = probe_alpha(cfg);
  const auto psi = qmat::PureQubit::from_alpha(alpha);
  const auto rho_id = qmat::DensityMatrix2(psi.density());
  const auto rho_out = sdc::output_density_a(psi, ov);

  b.add_pair("D_a", sdc::hs_norm_a(alpha, ov), "closed-form", qmat::hs_distance(rho_id, rho_out),
             "matrix-oracle", kPairTolExact);
  if (rho_out.is_physical()) {
    b.add_pair("F", sdc::fidelity(psi, ov), "closed-form", qmat::fidelity(rho_id, rho_out),
               "matrix-oracle", kPairTolExact);
    const double k_gap = sdc::entropy_K(psi, ov);
    const auto ev = rho_out.eigenvalues();
    b.add_pair("K", k_gap, "closed-form", ev(1) - ev(0), "matrix-oracle", kPairTolExact);
    b.add("S", qmat::von_neumann_entropy(rho_out, base), "matrix-oracle", 0.0);
  } else {
    b.add("F", sdc::fidelity(psi, ov), "closed-form", 0.0);
    b.warnings.push_back("output state has a negative eigenvalue; matrix-route F/S unavailable");
  }
  b.add_pair("Dbar", sdc::avg_hs_norm(ov), "closed-form",
             opt::average_over_alpha([&](double a) { return sdc::hs_norm_a(a, ov); },
                                     cfg.quadrature),
             "quadrature", 1e-10);
  if (rho_out.is_physical()) emit_averaged(ov);

  if (cfg.alpha_grid > 1) {
    const auto det_stats = grid_stats(cfg.alpha_grid, cfg.parallel, [&](double a) {
      return std::abs(sdc::hessian_Da(a).determinant());
    });
    b.add("hessian_det_max", det_stats.max, "matrix-oracle", 1e-10);
  }
  return b;
}

ReportBundle run_figures(const RunConfig& cfg) {
  ReportBundle b;
  b.subcommand = "figures";
  put_common_params(b, cfg);
  b.params["figure"] = cfg.figure;
  b.params["samples"] = std::to_string(cfg.samples);

  sdc::Subcase subcase;
  if (cfg.figure == "fig1")
    subcase = sdc::Subcase::EqualAB;
  else if (cfg.figure == "fig2")
    subcase = sdc::Subcase::ZeroC;
  else
    throw UsageError("figures: expected fig1 or fig2");
  require(cfg.samples >= 2, "figures: --samples must be at least 2");
  b.refs.push_back(cfg.figure == "fig1" ? "perfect-cloning-curves-equalAB"
                                        : "perfect-cloning-curves-zeroC");

  const auto report = sdc::feasibility_curves(subcase, cfg.samples);
  const std::string csv_path = cfg.output_path.value_or(cfg.figure + ".csv");

  {
    auto out = open_output(csv_path);
    out << "alpha," << report.first_name << "," << report.first_name << "_feasible,"
        << report.second_name << "," << report.second_name << "_feasible\n";
    for (const auto& s : report.samples) {
      out << fmt12(s.alpha) << ',' << fmt12(s.first_value) << ',' << (s.first_ok ? 1 : 0) << ','
          << fmt12(s.second_value) << ',' << (s.second_ok ? 1 : 0) << '\n';
    }
    if (!out) throw IoError("failed while writing '" + csv_path + "'");
  }

  json sidecar;
  sidecar["figure"] = cfg.figure;
  sidecar["curves"][report.first_name]["feasible_intervals"] =
      intervals_to_json(report.first_feasible);
  sidecar["curves"][report.second_name]["feasible_intervals"] =
      intervals_to_json(report.second_feasible);
  sidecar["intersection"] = intervals_to_json(report.intersection);
  sidecar["disjoint"] = report.disjoint;
  if (report.published_endpoints) {
    sidecar["published_endpoints"] = *report.published_endpoints;
    sidecar["published_endpoint_discrepancy"] = report.published_mismatch;
  }
  {
    auto out = open_output(sidecar_path(csv_path));
    out << sidecar.dump(2) << '\n';
    if (!out) throw IoError("failed while writing '" + sidecar_path(csv_path) + "'");
  }

  int idx = 0;
  for (const auto& iv : report.first_feasible) {
    b.add(report.first_name + "_interval" + std::to_string(idx) + "_lo", iv.lo, "root-solve", 1e-9);
    b.add(report.first_name + "_interval" + std::to_string(idx) + "_hi", iv.hi, "root-solve", 1e-9);
    ++idx;
  }
  idx = 0;
  for (const auto& iv : report.second_feasible) {
    b.add(report.second_name + "_interval" + std::to_string(idx) + "_lo", iv.lo, "root-solve",
          1e-9);
    b.add(report.second_name + "_interval" + std::to_string(idx) + "_hi", iv.hi, "root-solve",
          1e-9);
    ++idx;
  }
  b.add_verdict("disjoint", report.disjoint ? "yes" : "no");
  if (report.published_endpoints)
    b.add_verdict("published_endpoint_discrepancy", report.published_mismatch ? "yes" : "no");
  b.params["csv"] = csv_path;
  b.params["endpoints_json"] = sidecar_path(csv_path);
  return b;
}

std::string to_json(const ReportBundle& bundle) {
  json j;
  j["subcommand"] = bundle.subcommand;
  j["params"] = bundle.params;
  json results = json::object();
  for (const auto& r : bundle.results) {
    json entry;
    if (r.exact)
      entry["value"] = r.exact->str();
    else
      entry["value"] = r.value;
    entry["route"] = r.route;
    entry["tolerance"] = r.tolerance;
    results[r.name] = entry;
  }
  j["results"] = results;
  json verdicts = json::object();
  for (const auto& [k, v] : bundle.verdicts) verdicts[k] = v;
  j["verdicts"] = verdicts;
  j["paper_refs"] = bundle.refs;
  if (!bundle.warnings.empty()) j["warnings"] = bundle.warnings;
  j["discrepant"] = bundle.discrepant;
  return j.dump(2) + "\n";
}

std::string to_table(const ReportBundle& bundle) {
  std::ostringstream out;
  out << "== " << bundle.subcommand;
  for (const auto& [k, v] : bundle.params)
    if (k != "subcommand" && k != "format") out << ' ' << k << '=' << v;
  out << " ==\n";
  std::size_t width = 12;
  for (const auto& r : bundle.results) width = std::max(width, r.name.size());
  for (const auto& r : bundle.results) {
    out << "  " << r.name << std::string(width + 2 - r.name.size(), ' ');
    if (r.exact)
      out << r.exact->str() << " (" << fmt12(r.value) << ")";
    else
      out << fmt12(r.value);
    out << "  [" << r.route;
    if (r.tolerance > 0) out << ", tol " << fmt12(r.tolerance);
    out << "]\n";
  }
  for (const auto& [k, v] : bundle.verdicts) out << "  verdict " << k << ": " << v << "\n";
  for (const auto& w : bundle.warnings) out << "  warning: " << w << "\n";
  if (bundle.discrepant) out << "  DISCREPANT: paired routes disagree beyond tolerance\n";
  return out.str();
}

std::string to_csv(const ReportBundle& bundle) {
  std::ostringstream out;
  out << "name,value,route,tolerance\n";
  for (const auto& r : bundle.results) {
    out << r.name << ',';
    if (r.exact)
      out << r.exact->str();
    else
      out << fmt12(r.value);
    out << ',' << r.route << ',' << fmt12(r.tolerance) << '\n';
  }
  return out.str();
}

RunConfig config_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("--from-json: ") + e.what());
  }
  if (!j.contains("params")) throw UsageError("--from-json: no params object in " + path);
  const auto& p = j["params"];
  auto get = [&](const char* key) -> std::optional<std::string> {
    if (!p.contains(key)) return std::nullopt;
    return p[key].get<std::string>();
  };
  RunConfig cfg;
  cfg.subcommand = get("subcommand").value_or("");
  if (auto v = get("A")) cfg.A = std::stod(*v);
  if (auto v = get("B")) cfg.B = std::stod(*v);
  if (auto v = get("C")) cfg.C = std::stod(*v);
  if (auto v = get("a")) cfg.pa = std::stod(*v);
  if (auto v = get("b")) cfg.pb = std::stod(*v);
  if (auto v = get("c")) cfg.pc = std::stod(*v);
  if (auto v = get("case")) cfg.pcc_case = std::stoi(*v);
  if (auto v = get("points")) cfg.family_points = std::stoi(*v);
  if (auto v = get("seed")) cfg.seed = std::stoull(*v);
  if (auto v = get("mode"); v && *v == "optimize") cfg.optimize = true;
  if (auto v = get("subcase")) cfg.subcase = *v;
  if (auto v = get("figure")) cfg.figure = *v;
  if (auto v = get("samples")) cfg.samples = std::stoi(*v);
  if (auto v = get("alpha")) cfg.alpha = std::stod(*v);
  if (auto v = get("alpha_grid")) cfg.alpha_grid = std::stoi(*v);
  if (auto v = get("entropy_base")) cfg.entropy_base = *v;
  if (auto v = get("quadrature")) cfg.quadrature = opt::QuadratureSpec::parse(*v);
  if (auto v = get("format")) cfg.format = *v;
  if (auto v = get("parallel")) cfg.parallel = (*v == "1");
  if (auto v = get("published_forms")) cfg.published_forms = (*v == "1");
  if (auto v = get("csv")) cfg.output_path = *v;
  if (cfg.subcommand.empty()) throw UsageError("--from-json: params.subcommand missing");
  return cfg;
}

int run_and_emit(const RunConfig& cfg) {
  try {
    ReportBundle bundle;
    if (cfg.subcommand == "bh")
      bundle = run_bh(cfg);
    else if (cfg.subcommand == "pcc")
      bundle = run_pcc(cfg);
    else if (cfg.subcommand == "sdc")
      bundle = run_sdc(cfg);
    else if (cfg.subcommand == "figures")
      bundle = run_figures(cfg);
    else
      throw UsageError("unknown subcommand '" + cfg.subcommand + "'");

    std::string rendered;
    if (cfg.format == "json")
      rendered = to_json(bundle);
    else if (cfg.format == "csv")
      rendered = to_csv(bundle);
    else if (cfg.format == "table")
      rendered = to_table(bundle);
    else
      throw UsageError("unknown format '" + cfg.format + "'");

    // figures already wrote its files; --output there names the CSV path
    if (cfg.output_path && cfg.subcommand != "figures") {
      auto out = open_output(*cfg.output_path);
      out << rendered;
      if (!out) throw IoError("failed while writing '" + *cfg.output_path + "'");
    } else {
      std::cout << rendered;
    }
    return 0;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cloneq::cli
