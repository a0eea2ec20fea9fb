#include "selftest.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <sstream>

#include "coherent.hpp"
#include "entmeas.hpp"
#include "parallel.hpp"

namespace belgauge {
namespace {

constexpr std::array<BipartiteShape, 5> kFleetShapes{
    BipartiteShape{2, 2}, BipartiteShape{2, 3}, BipartiteShape{3, 3},
    BipartiteShape{3, 4}, BipartiteShape{4, 4}};
constexpr std::size_t kFleetSize = 20;
constexpr std::size_t kDilationTrials = 20;

class Suite {
 public:
  Suite(std::uint64_t seed, const Tolerances& tol) : seed_(seed), tol_(tol) {}

  // Each case returns its slack; the property keeps the minimum.
  void property(const std::string& name, const std::string& tol_name,
                std::size_t cases,
                const std::function<double(std::size_t, double)>& slack_of) {
    const double tol = tol_name == "exact" ? 0.0 : tol_.get(tol_name);
    std::vector<double> slacks(cases, 0.0);
    parallel_for(cases, [&](std::size_t i) { slacks[i] = slack_of(i, tol); });
    PropertyResult r{name, tol_name, cases, std::numeric_limits<double>::infinity()};
    for (double s : slacks) r.worst_slack = std::min(r.worst_slack, std::isnan(s) ? -std::numeric_limits<double>::infinity() : s);
    if (cases == 0) r.worst_slack = 0.0;
    results_.push_back(std::move(r));
  }

  std::uint64_t case_seed(std::size_t i) const { return seed_ * 1000003ULL + i; }
  std::vector<PropertyResult> take() { return std::move(results_); }

 private:
  std::uint64_t seed_;
  const Tolerances& tol_;
  std::vector<PropertyResult> results_;
};

PureBipartiteState fleet_state(const Suite& s, std::size_t i) {
  return random_pure_state(kFleetShapes[i % kFleetShapes.size()], s.case_seed(i));
}

ComplexMatrix random_square(std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng = substream(seed, 0x5a);
  return random_bounded_operator(d, rng) * 3.0;
}

}  // namespace

bool SelftestReport::all_pass() const {
  return passed() == properties.size();
}

std::size_t SelftestReport::passed() const {
  return static_cast<std::size_t>(std::count_if(
      properties.begin(), properties.end(), [](const auto& p) { return p.pass(); }));
}

std::string SelftestReport::text() const {
  std::ostringstream os;
  os << "selftest seed=" << seed << "\n";
  for (const PropertyResult& p : properties) {
    os << (p.pass() ? "PASS " : "FAIL ") << std::left << std::setw(38) << p.name
       << " cases=" << std::setw(4) << p.cases
       << " worst_slack=" << format_real(p.worst_slack + 0.0) << " tol=" << p.tolerance
       << "\n";
  }
  os << "summary: " << passed() << "/" << properties.size() << " properties passed\n";
  return os.str();
}

Json SelftestReport::to_json() const {
  Json j;
  j["seed"] = seed;
  Json props = Json::array();
  for (const PropertyResult& p : properties) {
    Json e;
    e["name"] = p.name;
    e["tolerance"] = p.tolerance;
    e["cases"] = p.cases;
    e["worst_slack"] = optional_number(p.worst_slack);
    e["pass"] = p.pass();
    props.push_back(std::move(e));
  }
  j["properties"] = std::move(props);
  j["passed"] = passed();
  j["total"] = properties.size();
  j["all_pass"] = all_pass();
  return j;
}

SelftestReport run_selftest(std::uint64_t seed, const Tolerances& tol) {
  Suite s(seed, tol);

  // numlin
  s.property("eigenvalue_sum_equals_trace", "identity", kFleetSize, [&](std::size_t i, double t) {
    const DensityOperator rho = random_density({2 + i % 3, 2 + i % 2}, s.case_seed(i));
    const RealVector ev = numlin::hermitian_eigenvalues(rho.matrix());
    double sum = 0.0;
    for (double v : ev) sum += v;
    return t - std::abs(sum - rho.matrix().trace().real());
  });
  s.property("singular_values_frobenius", "identity", kFleetSize, [&](std::size_t i, double t) {
    const ComplexMatrix m = random_square(2 + i % 5, s.case_seed(i));
    double sum = 0.0;
    for (double v : numlin::singular_values(m)) sum += v * v;
    return t * m.squaredNorm() - std::abs(sum - m.squaredNorm());
  });
  s.property("trace_norm_at_least_abs_trace", "identity", kFleetSize, [&](std::size_t i, double t) {
    const ComplexMatrix m = random_square(2 + i % 5, s.case_seed(i));
    return numlin::trace_norm(m) - std::abs(m.trace()) + t;
  });
  s.property("psd_singular_values_equal_eigenvalues", "identity", kFleetSize,
             [&](std::size_t i, double t) {
               const DensityOperator rho = random_density({2, 2 + i % 3}, s.case_seed(i));
               const RealVector ev = numlin::hermitian_eigenvalues(rho.matrix());
               const RealVector sv = numlin::singular_values(rho.matrix());
               double worst = 0.0;
               for (std::size_t k = 0; k < ev.size(); ++k)
                 worst = std::max(worst, std::abs(ev[k] - sv[k]));
               return t - worst;
             });
  s.property("partial_transpose_norms_agree", "identity", kFleetSize, [&](std::size_t i, double t) {
    const DensityOperator rho = random_density(kFleetShapes[i % 5], s.case_seed(i));
    const double n1 = numlin::trace_norm_hermitian(
        numlin::partial_transpose(rho.matrix(), rho.shape(), 1));
    const double n2 = numlin::trace_norm_hermitian(
        numlin::partial_transpose(rho.matrix(), rho.shape(), 2));
    return t - std::abs(n1 - n2);
  });
  s.property("partial_transpose_involution", "exact", kFleetSize, [&](std::size_t i, double) {
    const DensityOperator rho = random_density(kFleetShapes[i % 5], s.case_seed(i));
    double worst = 0.0;
    for (int which : {1, 2}) {
      const ComplexMatrix twice = numlin::partial_transpose(
          numlin::partial_transpose(rho.matrix(), rho.shape(), which), rho.shape(), which);
      worst = std::max(worst, numlin::max_abs(twice - rho.matrix()));
    }
    return -worst;
  });

  // states
  s.property("schmidt_reconstruction", "reconstruction", kFleetSize, [&](std::size_t i, double t) {
    const PureBipartiteState psi = fleet_state(s, i);
    const SchmidtSpectrum spec = schmidt_decompose(psi);
    return t - (schmidt_reconstruct(spec) - psi.amplitudes()).norm();
  });
  s.property("reduced_spectra_match_schmidt", "reconstruction", kFleetSize,
             [&](std::size_t i, double t) {
               const PureBipartiteState psi = fleet_state(s, i);
               const SchmidtSpectrum spec = schmidt_decompose(psi);
               const DensityOperator rho = pure_to_density(psi);
               double worst = 0.0;
               for (int keep : {1, 2}) {
                 const RealVector ev = numlin::hermitian_eigenvalues(
                     numlin::partial_trace(rho.matrix(), rho.shape(), keep));
                 for (std::size_t k = 0; k < ev.size(); ++k) {
                   const double ref = k < spec.rank ? spec.eigenvalues[k] : 0.0;
                   worst = std::max(worst, std::abs(ev[k] - ref));
                 }
               }
               return t - worst;
             });
  s.property("random_state_determinism", "exact", 4, [&](std::size_t i, double) {
    const auto a = fleet_state(s, i);
    const auto b = fleet_state(s, i);
    return a.amplitudes() == b.amplitudes() ? 0.0 : -1.0;
  });

  // source operators
  s.property("polarization_s1_is_outer_product", "polarization", 3, [&](std::size_t i, double t) {
    const std::size_t d = i + 2;
    const ComplexMatrix basis = random_unitary(d, s.case_seed(i));
    double worst = 0.0;
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t k1 = 0; k1 < d; ++k1) {
        const ComplexMatrix w = polarization_block(basis, k, k1, 1);
        worst = std::max(worst, numlin::max_abs(w - basis.col(k) * basis.col(k1).adjoint()));
      }
    return t - worst;
  });
  s.property("polarization_adjoint_symmetry", "polarization", 6, [&](std::size_t i, double t) {
    const ComplexMatrix basis = random_unitary(3, s.case_seed(i));
    const std::size_t sets = 1 + i % 3;
    return t - numlin::max_abs(polarization_block(basis, 0, 2, sets).adjoint() -
                               polarization_block(basis, 2, 0, sets));
  });
  const std::size_t op_cases = kFleetSize * 3;
  s.property("dilation_identity", "dilation", op_cases, [&](std::size_t i, double t) {
    const PureBipartiteState psi = fleet_state(s, i / 3);
    const SourceOperator op = build_source_operator(
        schmidt_decompose(psi), i % 2 ? DilatedSite::Left : DilatedSite::Right, 1 + i % 3);
    const DilationReport r =
        verify_dilation(op, pure_to_density(psi), kDilationTrials, s.case_seed(i), t);
    return t * r.scale - r.max_residual;
  });
  s.property("source_operator_trace_and_hermiticity", "identity", op_cases,
             [&](std::size_t i, double t) {
               const PureBipartiteState psi = fleet_state(s, i / 3);
               const SourceOperator op = build_source_operator(
                   schmidt_decompose(psi), i % 2 ? DilatedSite::Left : DilatedSite::Right,
                   1 + i % 3);
               const double herm = numlin::max_abs(op.matrix - op.matrix.adjoint());
               return t - std::max(herm, std::abs(op.matrix.trace() - Complex(1.0, 0.0)));
             });
  s.property("source_trace_norm_bound", "slack", op_cases, [&](std::size_t i, double t) {
    const PureBipartiteState psi = fleet_state(s, i / 3);
    const SchmidtSpectrum spec = schmidt_decompose(psi);
    const SourceOperator op = build_source_operator(
        spec, i % 2 ? DilatedSite::Left : DilatedSite::Right, 1 + i % 3);
    return source_trace_norm_bound(spec) - numlin::trace_norm_hermitian(op.matrix) + t;
  });
  s.property("nonlocality_bound_chain", "slack", kFleetSize, [&](std::size_t i, double t) {
    const PureBipartiteState psi = fleet_state(s, i);
    const SchmidtSpectrum spec = schmidt_decompose(psi);
    const BipartiteShape sh = psi.shape();
    const SchmidtBounds any = bound_schmidt(spec, std::nullopt);
    const double dim_bound = 2.0 * static_cast<double>(std::min(sh.d1, sh.d2)) - 1.0;
    double worst = std::min(any.by_rank - any.by_coefficients, dim_bound - any.by_rank);
    for (std::size_t s1 = 1; s1 <= 4; ++s1) {
      const SchmidtBounds b = bound_schmidt(spec, SettingCounts{s1, 5 - s1});
      const double eq01 = *bound_dim_setting(sh.d1, sh.d2, s1, 5 - s1);
      worst = std::min({worst, b.by_rank - b.by_coefficients, eq01 - b.by_rank});
    }
    return worst + t;
  });

  // entanglement measures
  s.property("negativity_routes_agree", "negativity", kFleetSize, [&](std::size_t i, double t) {
    const PureBipartiteState psi = fleet_state(s, i);
    return t - std::abs(negativity(pure_to_density(psi)) -
                        negativity_from_spectrum(schmidt_decompose(psi)));
  });
  s.property("negativity_local_unitary_invariance", "negativity", kFleetSize,
             [&](std::size_t i, double t) {
               const PureBipartiteState psi = fleet_state(s, i);
               const BipartiteShape sh = psi.shape();
               const ComplexMatrix u1 = random_unitary(sh.d1, s.case_seed(i) + 17);
               const ComplexMatrix u2 = random_unitary(sh.d2, s.case_seed(i) + 29);
               const auto rotated =
                   PureBipartiteState::normalized(u1 * psi.amplitudes() * u2.transpose());
               return t - std::abs(negativity(pure_to_density(psi)) -
                                   negativity(pure_to_density(rotated)));
             });
  s.property("concurrence_forms_agree", "identity", kFleetSize, [&](std::size_t i, double t) {
    const SchmidtSpectrum spec = schmidt_decompose(fleet_state(s, i));
    return t - std::abs(concurrence_pure(spec, spec.local_dim()) -
                        concurrence_pure_pairwise(spec, spec.local_dim()));
  });
  s.property("schmidt_bound_vs_dimension", "slack", kFleetSize, [&](std::size_t i, double t) {
    const SchmidtSpectrum spec = schmidt_decompose(fleet_state(s, i));
    return check_lemma1(spec, spec.local_dim()) + t;
  });
  s.property("pairwise_coefficient_inequality", "slack", kFleetSize, [&](std::size_t i, double t) {
    return check_eq47(schmidt_decompose(fleet_state(s, i))) + t;
  });

  // coherent states
  const std::array<double, 6> alphas{0.1, 0.25, 0.5, 1.0, 2.0, 3.0};
  s.property("coherent_analytic_vs_numeric", "agreement", alphas.size() * 2,
             [&](std::size_t i, double t) {
               const CoherentPairSpec spec{1 + static_cast<int>(i % 2), alphas[i / 2], 0};
               const SchmidtSpectrum a = analytic_spectrum(spec);
               const SchmidtSpectrum n = numeric_spectrum(spec);
               if (n.rank < 2) return -1.0;
               return t - std::max(std::abs(a.eigenvalues[0] - n.eigenvalues[0]),
                                   std::abs(a.eigenvalues[1] - n.eigenvalues[1]));
             });
  s.property("coherent_sum_squares_closed_form", "identity", alphas.size(),
             [&](std::size_t i, double t) {
               const double a = alphas[i];
               const double q = std::exp(-4.0 * a * a);
               const double closed = 0.5 + 2.0 * q / ((1.0 + q) * (1.0 + q));
               return t - std::abs(analytic_spectrum({1, a, 0}).sum_squared_eigenvalues() - closed);
             });
  s.property("coherent_concurrence_sqrt2_negativity", "identity", alphas.size(),
             [&](std::size_t i, double t) {
               const SchmidtSpectrum spec = analytic_spectrum({1, alphas[i], 0});
               return t - std::abs(concurrence_pure(spec, std::nullopt) -
                                   std::sqrt(2.0) * negativity_from_spectrum(spec));
             });
  s.property("coherent_gram_schmidt_basis", "orthonormality", alphas.size(),
             [&](std::size_t i, double t) {
               const ComplexMatrix u = span_basis(alphas[i], default_fock_cutoff(alphas[i]));
               const ComplexMatrix g = u.adjoint() * u;
               return t - numlin::max_abs(g - ComplexMatrix::Identity(2, 2));
             });
  s.property("coherent_two_level_reconstruction", "reconstruction", alphas.size() * 2,
             [&](std::size_t i, double t) {
               const CoherentPairSpec spec{1 + static_cast<int>(i % 2), alphas[i / 2], 0};
               const ComplexMatrix u = span_basis(spec.alpha, spec.cutoff());
               const ComplexMatrix built =
                   u * span_coefficients(spec.family, spec.alpha) * u.transpose();
               return t - (built - truncated_state(spec).amplitudes()).norm();
             });
  s.property("coherent_bound_increasing", "slack", 50, [&](std::size_t i, double t) {
    const double a = 0.05 + 0.06 * static_cast<double>(i);
    const double lo = prop2_bound(a);
    const double hi = prop2_bound(a + 0.06);
    return std::min(lo - 1.0, hi - lo) + t;
  });

  // CHSH
  s.property("seesaw_matches_horodecki", "oracle", kFleetSize, [&](std::size_t i, double t) {
    const DensityOperator rho =
        i % 2 ? random_density({2, 2}, s.case_seed(i))
              : pure_to_density(random_pure_state({2, 2}, s.case_seed(i)));
    SeesawOptions o;
    o.seed = s.case_seed(i);
    return t - std::abs(seesaw_chsh(rho, o).violation_ratio - horodecki_oracle(rho) / 2.0);
  });
  s.property("seesaw_monotone", "monotone", kFleetSize / 2, [&](std::size_t i, double t) {
    const DensityOperator rho = pure_to_density(fleet_state(s, i));
    std::mt19937_64 rng = substream(s.case_seed(i), 1);
    const std::size_t d2 = rho.shape().d2;
    ComplexMatrix b1 = random_observable(d2, rng);
    ComplexMatrix b2 = random_observable(d2, rng);
    std::vector<double> traj;
    seesaw_run(rho, std::move(b1), std::move(b2), 1e-12, 200, &traj);
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < traj.size(); ++k) worst = std::min(worst, traj[k] - traj[k - 1]);
    return traj.size() < 2 ? t : worst + t;
  });
  s.property("tsirelson_and_sandwich", "slack", kFleetSize, [&](std::size_t i, double t) {
    const PureBipartiteState psi = fleet_state(s, i);
    const SchmidtSpectrum spec = schmidt_decompose(psi);
    const double ratio = chsh_lower_bound(psi, s.case_seed(i));
    const NonlocalityReport r = assemble_report(spec, std::nullopt, ratio);
    const RelationSlacks rel =
        check_prop1_and_thm3(spec, spec.local_dim(), std::max(1.0, ratio));
    return std::min({kTsirelsonRatio - ratio, r.upper - r.lower, rel.eq49, rel.eq49_1,
                     rel.eq51.value_or(std::numeric_limits<double>::infinity())}) +
           t;
  });

  SelftestReport report;
  report.seed = seed;
  report.properties = s.take();
  return report;
}

}  // namespace belgauge
