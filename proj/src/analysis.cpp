#include "analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "error.hpp"
#include "parallel.hpp"

namespace belgauge {

Tolerances::Tolerances()
    : values_{
          {"agreement", 1e-8},       // numeric pipeline vs closed form
          {"dilation", kDilationTol},  // relative to max(1, ||T||_1)
          {"identity", 1e-10},       // algebraic identities
          {"monotone", 1e-12},       // see-saw half-step increments
          {"negativity", 1e-9},      // partial-transpose vs Schmidt route
          {"oracle", 1e-6},          // see-saw vs closed-form CHSH
          {"orthonormality", 1e-12},
          {"polarization", 1e-12},
          {"reconstruction", 1e-8},
          {"slack", kSlackTol},      // inequality slacks and bracket order
      } {}

double Tolerances::get(const std::string& name) const {
  const auto it = values_.find(name);
  if (it == values_.end()) {
    throw Error(ErrorCode::InvalidArgument, "unknown tolerance \"" + name + "\"");
  }
  return it->second;
}

void Tolerances::set(const std::string& name, double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::InvalidArgument,
                "tolerance \"" + name + "\" must be a finite value >= 0");
  }
  if (name == "all") {
    for (auto& [k, v] : values_) v = value;
    return;
  }
  const auto it = values_.find(name);
  if (it == values_.end()) {
    std::ostringstream os;
    os << "unknown tolerance \"" << name << "\"; known:";
    for (const auto& [k, v] : values_) os << " " << k;
    os << " all";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  it->second = value;
}

double chsh_lower_bound(const PureBipartiteState& psi, std::uint64_t seed,
                        ChshResult* detail) {
  const BipartiteShape s = psi.shape();
  SeesawOptions opts;
  opts.seed = seed;
  if (s.d1 <= opts.dim_cap && s.d2 <= opts.dim_cap) {
    ChshResult r = seesaw_chsh(pure_to_density(psi), opts);
    if (detail) *detail = r;
    return r.violation_ratio;
  }
  if (schmidt_decompose(psi).rank < 2) return 1.0;
  const CompressedState c = schmidt_compress(psi);
  ChshResult r = seesaw_chsh(pure_to_density(c.state), opts);
  if (detail) *detail = r;
  return lift_compressed_ratio(c, r.violation_ratio);
}

AnalyzeResult analyze(const StateFile& input, const AnalyzeOptions& opts) {
  const double slack_tol = opts.tol.get("slack");
  AnalyzeResult res;
  res.shape = input.shape;
  const DensityOperator rho = input.density();
  res.pure = input.is_pure();

  double ratio = 0.0;
  if (res.pure) {
    const PureBipartiteState psi = input.pure();
    const SchmidtSpectrum spec = schmidt_decompose(psi);
    ChshResult detail;
    ratio = chsh_lower_bound(psi, opts.seed, &detail);
    res.chsh = detail;
    res.nonlocality = assemble_report(spec, opts.settings, ratio);
    res.entanglement = entanglement_report(spec, std::max(1.0, ratio));
    res.negativity_partial_transpose = negativity(pure_to_density(psi));
    res.checks.push_back(
        {"negativity_routes",
         opts.tol.get("negativity") -
             std::abs(*res.negativity_partial_transpose - res.entanglement.negativity)});
  } else {
    SeesawOptions so;
    so.seed = opts.seed;
    res.chsh = seesaw_chsh(rho, so);
    ratio = res.chsh->violation_ratio;
    res.nonlocality = assemble_mixed_report(rho.shape(), opts.settings, ratio);
    res.entanglement = entanglement_report(rho);
  }
  if (rho.shape().d1 == 2 && rho.shape().d2 == 2) {
    res.horodecki_ratio = horodecki_oracle(res.pure ? pure_to_density(input.pure()) : rho) / 2.0;
  }

  res.checks.push_back({"bracket_order",
                        res.nonlocality.upper - res.nonlocality.lower + slack_tol});
  res.checks.push_back({"tsirelson", kTsirelsonRatio + slack_tol - ratio});
  res.checks.push_back({"negativity_nonnegative", res.entanglement.negativity + 1e-10});
  for (const auto& s : res.entanglement.slacks()) {
    if (s.value) res.checks.push_back({s.tag, *s.value + slack_tol});
  }
  res.ok = std::all_of(res.checks.begin(), res.checks.end(),
                       [](const Check& c) { return c.slack >= 0.0; });
  return res;
}

Json AnalyzeResult::to_json() const {
  Json j;
  j["shape"] = Json::array({shape.d1, shape.d2});
  j["pure"] = pure;
  j["nonlocality"] = belgauge::to_json(nonlocality);
  Json ent = belgauge::to_json(entanglement);
  ent["negativity_partial_transpose"] = optional_number(negativity_partial_transpose);
  j["entanglement"] = std::move(ent);
  if (chsh) {
    Json c = belgauge::to_json(*chsh, false);
    c["horodecki_ratio"] = optional_number(horodecki_ratio);
    j["chsh"] = std::move(c);
  } else {
    j["chsh"] = nullptr;
  }
  Json check_list = Json::array();
  for (const Check& c : checks) {
    Json e;
    e["name"] = c.name;
    e["slack"] = optional_number(c.slack);
    e["pass"] = c.slack >= 0.0;
    check_list.push_back(std::move(e));
  }
  j["checks"] = std::move(check_list);
  j["ok"] = ok;
  return j;
}

std::vector<double> linspace(double start, double stop, std::size_t count) {
  if (count < 2) {
    throw Error(ErrorCode::InvalidArgument, "grid count must be >= 2");
  }
  std::vector<double> out(count);
  const double n = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = start + (stop - start) * static_cast<double>(i) / n;
  out.back() = stop;
  return out;
}

std::vector<ScanRow> coherent_scan(std::vector<double> alphas, int family,
                                   std::size_t cutoff, std::uint64_t seed,
                                   const Tolerances& tol,
                                   const std::function<void(const ScanRow&)>& on_row) {
  for (double a : alphas) {
    CoherentPairSpec{family, a, cutoff}.validate();
  }
  std::sort(alphas.begin(), alphas.end());
  const double agreement = tol.get("agreement");
  std::vector<ScanRow> rows(alphas.size());
  parallel_for(alphas.size(), [&](std::size_t i) {
    const CoherentPairSpec spec{family, alphas[i], cutoff};
    ScanRow& row = rows[i];
    row.alpha = spec.alpha;
    const SchmidtSpectrum analytic = analytic_spectrum(spec);
    row.lambda_plus = analytic.eigenvalues.at(0);
    row.lambda_minus = analytic.eigenvalues.size() > 1 ? analytic.eigenvalues[1] : 0.0;
    const EntanglementReport m = coherent_measures(spec);
    row.negativity = m.negativity;
    row.concurrence = m.concurrence.value_or(0.0);
    row.bound_eq63 = prop2_bound(spec.alpha);
    try {
      row.bound_numeric = source_trace_norm_bound(numeric_spectrum(spec));
    } catch (const Error& e) {
      row.numeric_error = error_code_name(e.code());
    }
    SeesawOptions so;
    so.seed = seed;
    const ChshResult c = seesaw_chsh(pure_to_density(two_level_state(family, spec.alpha)), so);
    row.chsh_lower = std::max(1.0, c.violation_ratio);
    row.ok = row.bound_numeric &&
             std::abs(*row.bound_numeric - row.bound_eq63) <= agreement;
  });
  if (on_row) {
    for (const ScanRow& r : rows) on_row(r);
  }
  return rows;
}

std::string format_scan_row(const ScanRow& r) {
  std::ostringstream os;
  os << format_real(r.alpha) << ',' << format_real(r.lambda_plus) << ','
     << format_real(r.lambda_minus) << ',' << format_real(r.negativity) << ','
     << format_real(r.concurrence) << ',' << format_real(r.bound_eq63) << ','
     << (r.bound_numeric ? format_real(*r.bound_numeric) : r.numeric_error) << ','
     << format_real(r.chsh_lower);
  return os.str();
}

SourceOpResult run_source_op(const PureBipartiteState& psi, DilatedSite site,
                             std::size_t s, std::size_t trials, std::uint64_t seed,
                             const Tolerances& tol, std::size_t cap) {
  const SchmidtSpectrum spec = schmidt_decompose(psi);
  const SourceOperator t = build_source_operator(spec, site, s, cap);
  SourceOpResult out;
  out.report = verify_dilation(t, pure_to_density(psi), trials, seed, tol.get("dilation"));
  out.bound_eq26 = source_trace_norm_bound(spec);
  out.pass = out.report.pass &&
             out.report.trace_norm <= out.bound_eq26 + tol.get("slack");
  return out;
}

Json SourceOpResult::to_json() const {
  Json j = belgauge::to_json(report, bound_eq26);
  j["pass"] = pass;
  return j;
}

}  // namespace belgauge
