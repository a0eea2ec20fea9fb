#include "entmeas.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "error.hpp"

namespace belgauge {
namespace {

// d/(d-1), with the infinite-dimensional limit 1.
double dim_ratio(std::optional<std::size_t> d) {
  if (!d) return 1.0;
  const double dd = static_cast<double>(*d);
  return dd / (dd - 1.0);
}

}  // namespace

double negativity(const DensityOperator& rho) {
  const ComplexMatrix pt = numlin::partial_transpose(rho.matrix(), rho.shape(), 1);
  return (numlin::trace_norm_hermitian(pt) - 1.0) / 2.0;
}

double negativity_from_spectrum(const SchmidtSpectrum& spec) {
  const double s = spec.sum_coefficients();
  return (s * s - 1.0) / 2.0;
}

double concurrence_pure(const SchmidtSpectrum& spec, std::optional<std::size_t> d) {
  if (d && *d == 0) throw Error(ErrorCode::DimensionTooSmall, "dimension must be >= 1");
  if (d && *d == 1) {
    if (spec.rank > 1) {
      throw Error(ErrorCode::DimensionTooSmall,
                  "d = 1 cannot carry an entangled spectrum");
    }
    return 0.0;
  }
  const double linear = std::max(0.0, 1.0 - spec.sum_squared_eigenvalues());
  return std::sqrt(dim_ratio(d) * linear);
}

double concurrence_pure_pairwise(const SchmidtSpectrum& spec,
                                 std::optional<std::size_t> d) {
  if (d && *d <= 1) return concurrence_pure(spec, d);
  double cross = 0.0;
  for (std::size_t k = 0; k < spec.rank; ++k)
    for (std::size_t m = 0; m < spec.rank; ++m)
      if (k != m) cross += spec.eigenvalues[k] * spec.eigenvalues[m];
  return std::sqrt(dim_ratio(d) * cross);
}

double check_lemma1(const SchmidtSpectrum& spec, std::optional<std::size_t> d) {
  if (spec.rank < 2) return 0.0;
  const double r = static_cast<double>(spec.rank);
  const double factor = std::sqrt(dim_ratio(d) / (r * (r - 1.0)));
  return concurrence_pure(spec, d) - 2.0 * factor * negativity_from_spectrum(spec);
}

double check_eq47(const SchmidtSpectrum& spec) {
  const double r = static_cast<double>(spec.rank);
  double cross = 0.0;
  for (std::size_t k = 0; k < spec.rank; ++k)
    for (std::size_t m = 0; m < spec.rank; ++m)
      if (k != m) cross += spec.eigenvalues[k] * spec.eigenvalues[m];
  const double s = spec.sum_coefficients();
  const double excess = s * s - 1.0;
  return 2.0 * r * (r - 1.0) * cross - 2.0 * excess * excess;
}

RelationSlacks check_prop1_and_thm3(const SchmidtSpectrum& spec,
                                    std::optional<std::size_t> d,
                                    double lower_bound) {
  if (!(lower_bound >= 1.0)) {
    std::ostringstream os;
    os << "lower bound on the maximal violation must be >= 1, got " << lower_bound;
    throw Error(ErrorCode::InvalidLowerBound, os.str());
  }
  const double excess = lower_bound - 1.0;
  const double n = negativity_from_spectrum(spec);
  const double c = concurrence_pure(spec, d);

  RelationSlacks out;
  out.eq49 = n - excess / 4.0;
  if (spec.rank >= 2) {
    const double r = static_cast<double>(spec.rank);
    out.eq49_1 = c - 0.5 * std::sqrt(dim_ratio(d) / (r * (r - 1.0))) * excess;
  } else {
    // Rank 1: the right-hand side is 0 * infinity; only LB = 1 is consistent.
    out.eq49_1 = excess <= 1e-12 ? c : -std::numeric_limits<double>::infinity();
  }
  if (d && *d >= 2) {
    out.eq51 = c - excess / (2.0 * (static_cast<double>(*d) - 1.0));
  }
  return out;
}

std::vector<EntanglementReport::Slack> EntanglementReport::slacks() const {
  std::vector<Slack> out{{"eq46", eq46}};
  if (relations) {
    out.push_back({"eq49", relations->eq49});
    out.push_back({"eq49_1", relations->eq49_1});
    out.push_back({"eq51", relations->eq51});
  } else {
    out.push_back({"eq49", std::nullopt});
    out.push_back({"eq49_1", std::nullopt});
    out.push_back({"eq51", std::nullopt});
  }
  return out;
}

bool EntanglementReport::relations_hold(double tol) const {
  if (negativity < -1e-10) return false;
  if (concurrence && (*concurrence < -1e-10 || *concurrence > 1.0 + 1e-10))
    return false;
  for (const Slack& s : slacks()) {
    if (s.value && !(*s.value >= -tol)) return false;
  }
  return true;
}

EntanglementReport entanglement_report(const SchmidtSpectrum& spec,
                                       double lower_bound) {
  EntanglementReport r;
  const auto d = spec.local_dim();
  r.negativity = negativity_from_spectrum(spec);
  r.concurrence = concurrence_pure(spec, d);
  r.dim_factor = d;
  r.rank = spec.rank;
  r.eq46 = check_lemma1(spec, d);
  r.relations = check_prop1_and_thm3(spec, d, lower_bound);
  return r;
}

EntanglementReport entanglement_report(const DensityOperator& rho) {
  EntanglementReport r;
  r.negativity = negativity(rho);
  r.dim_factor = std::min(rho.shape().d1, rho.shape().d2);
  return r;
}

}  // namespace belgauge
