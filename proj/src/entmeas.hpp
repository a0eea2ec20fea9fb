#pragma once

// Negativity and concurrence, and the inequalities tying them to the Schmidt
// coefficients and to the maximal Bell violation. Every inequality is
// reported as a signed slack (lhs - rhs); a slack below -tolerance is a
// violation.

#include <optional>
#include <string>
#include <vector>

#include "states.hpp"

namespace belgauge {

inline constexpr double kSlackTol = 1e-9;

/// (||rho^{T1}||_1 - 1) / 2.
double negativity(const DensityOperator& rho);

/// ((sum_k sqrt(lambda_k))^2 - 1) / 2, the pure-state closed form.
double negativity_from_spectrum(const SchmidtSpectrum& spec);

/// sqrt(d/(d-1) (1 - sum lambda_k^2)); `d` empty means infinite dimension,
/// where the prefactor is 1. d == 1 returns 0.
double concurrence_pure(const SchmidtSpectrum& spec, std::optional<std::size_t> d);

/// Same quantity through sum_{k != m} lambda_k lambda_m.
double concurrence_pure_pairwise(const SchmidtSpectrum& spec,
                                 std::optional<std::size_t> d);

/// C - 2 sqrt(d / ((d-1) r (r-1))) N. Rank 1 gives 0 (both sides vanish).
double check_lemma1(const SchmidtSpectrum& spec, std::optional<std::size_t> d);

/// 2 r (r-1) sum_{k != m} l_k l_m - 2 ((sum sqrt l)^2 - 1)^2.
double check_eq47(const SchmidtSpectrum& spec);

struct RelationSlacks {
  double eq49 = 0.0;
  double eq49_1 = 0.0;
  std::optional<double> eq51;  // needs finite d
};

/// Slacks of N >= (LB-1)/4, C >= 1/2 sqrt(d/((d-1) r (r-1))) (LB-1) and
/// C >= (LB-1)/(2(d-1)) for a lower bound LB on the maximal violation.
/// Throws InvalidLowerBound when LB < 1.
RelationSlacks check_prop1_and_thm3(const SchmidtSpectrum& spec,
                                    std::optional<std::size_t> d,
                                    double lower_bound);

struct EntanglementReport {
  double negativity = 0.0;
  std::optional<double> concurrence;  // pure states only
  std::optional<std::size_t> dim_factor;  // empty: infinite
  std::optional<std::size_t> rank;
  std::optional<double> eq46;
  std::optional<RelationSlacks> relations;

  struct Slack {
    std::string tag;
    std::optional<double> value;
  };
  std::vector<Slack> slacks() const;
  /// True when every present slack is >= -tol.
  bool relations_hold(double tol = kSlackTol) const;
};

EntanglementReport entanglement_report(const SchmidtSpectrum& spec,
                                       double lower_bound);

/// Mixed input: negativity only (convex-roof concurrence is not computed).
EntanglementReport entanglement_report(const DensityOperator& rho);

}  // namespace belgauge
