#include "bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "error.hpp"

namespace belgauge {

std::optional<double> bound_dim_setting(Count d1, Count d2, Count s1, Count s2) {
  std::optional<std::size_t> smallest;
  for (const Count& c : {d1, d2, s1, s2}) {
    if (!c) continue;
    if (*c == 0) throw Error(ErrorCode::InvalidArgument, "dimensions and settings must be >= 1");
    smallest = smallest ? std::min(*smallest, *c) : *c;
  }
  if (!smallest) return std::nullopt;
  return 2.0 * static_cast<double>(*smallest) - 1.0;
}

double bound_projective(std::size_t d, std::size_t s) {
  if (s < 2) {
    throw Error(ErrorCode::SettingsTooSmall, "projective bound needs s >= 2 settings");
  }
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  const double dd = static_cast<double>(d);
  if (s == 2) return std::min(std::sqrt(dd), 3.0);
  const double power = std::pow(dd, static_cast<double>(s) / 2.0);
  return std::min(power, 2.0 * static_cast<double>(std::min(d, s)) - 1.0);
}

SchmidtBounds bound_schmidt(const SchmidtSpectrum& spec,
                            std::optional<SettingCounts> settings) {
  const double sum = spec.sum_coefficients();
  double by_coeff = sum * sum;
  double by_rank = static_cast<double>(spec.rank);
  if (settings) {
    const double smin = static_cast<double>(std::min(settings->s1, settings->s2));
    by_coeff = std::min(by_coeff, smin);
    by_rank = std::min(by_rank, smin);
  }
  return {2.0 * by_coeff - 1.0, 2.0 * by_rank - 1.0};
}

std::vector<LabeledBound> NonlocalityReport::labeled() const {
  return {
      {"eq01", "bound_dim_setting", bound_dim_setting, true},
      {"eq02", "bound_projective", bound_projective, false},
      {"eq28", "bound_schmidt_settings", bound_schmidt_settings, true},
      {"eq29", "bound_schmidt_rank", bound_schmidt_rank, true},
      {"eq31", "bound_corollary", bound_corollary, true},
      {"eq32", "bound_corollary_rank", bound_corollary_rank, true},
  };
}

namespace {

void close_bracket(NonlocalityReport& r, std::optional<double> chsh_lower) {
  r.chsh_lower = chsh_lower;
  const bool chsh_fits = !r.settings || (r.settings->s1 >= 2 && r.settings->s2 >= 2);
  r.lower = 1.0;
  if (chsh_lower && chsh_fits) r.lower = std::max(1.0, *chsh_lower);
  r.upper = std::numeric_limits<double>::infinity();
  for (const LabeledBound& b : r.labeled()) {
    if (b.in_bracket && b.value) r.upper = std::min(r.upper, *b.value);
  }
}

void fill_setting_bounds(NonlocalityReport& r, Count d1, Count d2,
                         std::optional<SettingCounts> settings) {
  r.settings = settings;
  const Count s1 = settings ? Count(settings->s1) : std::nullopt;
  const Count s2 = settings ? Count(settings->s2) : std::nullopt;
  r.bound_dim_setting = bound_dim_setting(d1, d2, s1, s2);
  if (settings && settings->s1 == settings->s2 && settings->s1 >= 2 && d1 && d2) {
    r.bound_projective = bound_projective(std::min(*d1, *d2), settings->s1);
  }
}

}  // namespace

NonlocalityReport assemble_report(const SchmidtSpectrum& spec,
                                  std::optional<SettingCounts> settings,
                                  std::optional<double> chsh_lower) {
  NonlocalityReport r;
  const Count d1 = spec.shape ? Count(spec.shape->d1) : std::nullopt;
  const Count d2 = spec.shape ? Count(spec.shape->d2) : std::nullopt;
  fill_setting_bounds(r, d1, d2, settings);
  const SchmidtBounds with = bound_schmidt(spec, settings);
  const SchmidtBounds any = bound_schmidt(spec, std::nullopt);
  r.bound_schmidt_settings = with.by_coefficients;
  r.bound_schmidt_rank = with.by_rank;
  r.bound_corollary = any.by_coefficients;
  r.bound_corollary_rank = any.by_rank;
  close_bracket(r, chsh_lower);
  return r;
}

NonlocalityReport assemble_report(const PureBipartiteState& psi,
                                  std::optional<SettingCounts> settings,
                                  std::optional<double> chsh_lower) {
  return assemble_report(schmidt_decompose(psi), settings, chsh_lower);
}

NonlocalityReport assemble_mixed_report(BipartiteShape shape,
                                        std::optional<SettingCounts> settings,
                                        std::optional<double> chsh_lower) {
  NonlocalityReport r;
  fill_setting_bounds(r, shape.d1, shape.d2, settings);
  close_bracket(r, chsh_lower);
  return r;
}

}  // namespace belgauge
