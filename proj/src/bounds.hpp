#pragma once

// Upper bounds on the maximal Bell violation of a state and the bracket
// [lower, upper] they form together with a CHSH-certified lower bound.
//
// Dimensions and setting counts are optional: an empty value means
// "unbounded" (infinite dimension, or the supremum over all setting counts).

#include <optional>
#include <string>
#include <vector>

#include "states.hpp"

namespace belgauge {

using Count = std::optional<std::size_t>;

struct SettingCounts {
  std::size_t s1 = 1;
  std::size_t s2 = 1;
};

/// 2 min{d1, d2, s1, s2} - 1 over the present arguments. Returns nullopt
/// when every argument is absent (no finite bound).
std::optional<double> bound_dim_setting(Count d1, Count d2, Count s1, Count s2);

/// Projective-measurement bound for s settings per site:
/// s = 2: min{sqrt(d), 3};  s >= 3: min{d^{s/2}, 2 min{d, s} - 1}.
/// Throws SettingsTooSmall for s < 2.
double bound_projective(std::size_t d, std::size_t s);

struct SchmidtBounds {
  double by_coefficients;  // 2 min{(sum sqrt l)^2, S1, S2} - 1
  double by_rank;          // 2 min{r, S1, S2} - 1
};

/// Settings-dependent bounds, or the setting-free limit when `settings` is
/// empty.
SchmidtBounds bound_schmidt(const SchmidtSpectrum& spec,
                            std::optional<SettingCounts> settings);

struct LabeledBound {
  std::string tag;   // equation tag, e.g. "eq28"
  std::string name;  // field name, e.g. "bound_schmidt_settings"
  std::optional<double> value;
  bool in_bracket = true;  // false for bounds with a narrower premise
};

struct NonlocalityReport {
  std::optional<SettingCounts> settings;  // empty: any number of settings
  std::optional<double> bound_dim_setting;
  std::optional<double> bound_projective;
  std::optional<double> bound_schmidt_settings;
  std::optional<double> bound_schmidt_rank;
  std::optional<double> bound_corollary;       // setting-free coefficient bound
  std::optional<double> bound_corollary_rank;  // 2 r - 1
  std::optional<double> chsh_lower;
  double lower = 1.0;
  double upper = 0.0;  // +inf if no finite bound applies

  std::vector<LabeledBound> labeled() const;
  bool bracket_valid(double tol = 1e-9) const { return lower <= upper + tol; }
};

/// Bounds for a pure state. `chsh_lower` enters the lower edge only when the
/// CHSH scenario fits the setting counts (both >= 2, or any).
NonlocalityReport assemble_report(const PureBipartiteState& psi,
                                  std::optional<SettingCounts> settings,
                                  std::optional<double> chsh_lower);

/// Same, from a Schmidt spectrum; `spec.shape` empty means infinite
/// dimension.
NonlocalityReport assemble_report(const SchmidtSpectrum& spec,
                                  std::optional<SettingCounts> settings,
                                  std::optional<double> chsh_lower);

/// Mixed states: only the dimension/setting bounds apply.
NonlocalityReport assemble_mixed_report(BipartiteShape shape,
                                        std::optional<SettingCounts> settings,
                                        std::optional<double> chsh_lower);

}  // namespace belgauge
