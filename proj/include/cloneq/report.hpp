#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cloneq/optimize.hpp"
#include "cloneq/qmat.hpp"

namespace cloneq::cli {

/// Everything a run needs; populated from flags or from a previously emitted
/// JSON report ("--from-json"). There is deliberately no config file or
/// environment layer.
struct RunConfig {
  std::string subcommand;  // bh | pcc | sdc | figures

  // bh / sdc overlap parameters
  std::optional<double> A, B, C;
  bool table1 = false;

  // pcc parameters
  std::optional<int> pcc_case;
  std::optional<double> pa, pb, pc;
  int family_points = 101;
  std::optional<std::uint64_t> seed;

  // sdc
  bool optimize = false;
  std::string subcase = "general";

  // figures
  std::string figure;  // fig1 | fig2
  int samples = 1001;

  std::optional<double> alpha;
  int alpha_grid = 0;  // 0 = off

  std::string entropy_base = "2";  // "2" | "e"
  opt::QuadratureSpec quadrature{};
  std::string format = "table";  // table | json | csv
  std::optional<std::string> output_path;
  bool parallel = false;
  bool published_forms = false;
};

struct ScalarResult {
  std::string name;
  double value = 0.0;
  std::optional<opt::Rational> exact;  // serialized as "num/den" when present
  std::string route;                   // closed-form | matrix-oracle | quadrature | exact-rational | root-solve
  double tolerance = 0.0;
};

/// Named scalars with provenance; paired routes are checked against their
/// declared tolerance and any disagreement marks the whole bundle discrepant.
struct ReportBundle {
  std::string subcommand;
  std::map<std::string, std::string> params;
  std::vector<ScalarResult> results;
  std::vector<std::pair<std::string, std::string>> verdicts;
  std::vector<std::string> refs;  // labels of the published results being reproduced
  std::vector<std::string> warnings;
  bool discrepant = false;

  void add(std::string name, double value, std::string route, double tolerance = 0.0);
  void add_exact(std::string name, const opt::Rational& value, double tolerance = 0.0);
  /// Primary value plus an independent check route; flags disagreement.
  void add_pair(const std::string& name, double value, std::string route, double check,
                std::string check_route, double tolerance);
  void add_verdict(std::string key, std::string value);
  const ScalarResult* find(std::string_view name) const;
  double value_of(std::string_view name) const;  // throws if missing
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ReportBundle run_bh(const RunConfig& cfg);
ReportBundle run_pcc(const RunConfig& cfg);
ReportBundle run_sdc(const RunConfig& cfg);
/// Writes the figure CSV plus a "<stem>.endpoints.json" sidecar; the returned
/// bundle summarizes endpoints and the disjointness verdict.
ReportBundle run_figures(const RunConfig& cfg);

std::string to_json(const ReportBundle& bundle);
std::string to_table(const ReportBundle& bundle);
std::string to_csv(const ReportBundle& bundle);

RunConfig config_from_json_file(const std::string& path);

/// Dispatch + output. Returns the process exit code (0 ok, 2 usage, 3 I/O).
int run_and_emit(const RunConfig& cfg);

}  // namespace cloneq::cli
