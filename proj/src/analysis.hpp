#pragma once

// Command-level pipelines shared by the C API and the CLI.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "chsh.hpp"
#include "coherent.hpp"
#include "serialize.hpp"
#include "srcop.hpp"

namespace belgauge {

/// Named tolerances, overridable by name ("all" sets every entry).
class Tolerances {
 public:
  Tolerances();
  double get(const std::string& name) const;
  /// Throws InvalidArgument for unknown names or non-positive values.
  void set(const std::string& name, double value);
  const std::map<std::string, double>& values() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

struct Check {
  std::string name;
  double slack = 0.0;  // >= 0 passes
};

struct AnalyzeOptions {
  std::optional<SettingCounts> settings;
  std::uint64_t seed = 0;
  Tolerances tol;
};

struct AnalyzeResult {
  bool pure = true;
  BipartiteShape shape;
  NonlocalityReport nonlocality;
  EntanglementReport entanglement;
  std::optional<ChshResult> chsh;
  std::optional<double> horodecki_ratio;
  std::optional<double> negativity_partial_transpose;
  std::vector<Check> checks;
  bool ok = true;

  Json to_json() const;
};

AnalyzeResult analyze(const StateFile& input, const AnalyzeOptions& opts);

/// Certified CHSH violation ratio for a pure state of any size: direct
/// see-saw when both local dimensions fit the cap, otherwise the see-saw on
/// the two-level compression lifted back to the full state.
double chsh_lower_bound(const PureBipartiteState& psi, std::uint64_t seed,
                        ChshResult* detail = nullptr);

struct ScanRow {
  double alpha = 0.0;
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double negativity = 0.0;
  double concurrence = 0.0;
  double bound_eq63 = 0.0;
  std::optional<double> bound_numeric;  // empty when the pipeline failed
  std::string numeric_error;            // error name when it failed
  double chsh_lower = 1.0;
  bool ok = true;  // numeric bound present and within tolerance
};

inline const char* kScanHeader =
    "alpha,lambda_plus,lambda_minus,negativity,concurrence,bound_eq63,bound_numeric,chsh_lower";

/// One row per alpha, ascending. Rows are computed in parallel and handed to
/// `on_row` in order once all are done.
std::vector<ScanRow> coherent_scan(std::vector<double> alphas, int family,
                                   std::size_t cutoff, std::uint64_t seed,
                                   const Tolerances& tol,
                                   const std::function<void(const ScanRow&)>& on_row = {});

std::string format_scan_row(const ScanRow& row);

/// Evenly spaced grid with count >= 2 points.
std::vector<double> linspace(double start, double stop, std::size_t count);

struct SourceOpResult {
  DilationReport report;
  double bound_eq26 = 0.0;
  bool pass = false;  // dilation identity holds and ||T||_1 <= bound

  Json to_json() const;
};

SourceOpResult run_source_op(const PureBipartiteState& psi, DilatedSite site,
                             std::size_t s, std::size_t trials, std::uint64_t seed,
                             const Tolerances& tol,
                             std::size_t cap = kDefaultDilationCap);

}  // namespace belgauge
