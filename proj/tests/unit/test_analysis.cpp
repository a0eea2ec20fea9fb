#include <doctest.h>

#include <cmath>
#include <string>

#include "analysis.hpp"
#include "error.hpp"
#include "selftest.hpp"
#include "test_util.hpp"

using namespace belgauge;

TEST_CASE("analyze the Bell state with two settings") {
  AnalyzeOptions o;
  o.settings = SettingCounts{2, 2};
  const AnalyzeResult r = analyze(StateFile::from_pure(testutil::bell_state()), o);
  CHECK(r.ok);
  CHECK(r.nonlocality.upper == doctest::Approx(3.0));
  CHECK(std::abs(*r.nonlocality.chsh_lower - std::sqrt(2.0)) <= 1e-6);
  CHECK(r.entanglement.negativity == doctest::Approx(0.5));
  const Json j = r.to_json();
  CHECK(j["nonlocality"]["bracket"][1].get<double>() == doctest::Approx(3.0));
  CHECK(j["ok"] == true);
}

TEST_CASE("analyze a product state") {
  const AnalyzeResult r = analyze(StateFile::from_pure(testutil::product_state(2, 3)), {});
  CHECK(r.ok);
  CHECK(r.nonlocality.lower == doctest::Approx(1.0));
  CHECK(r.nonlocality.upper == doctest::Approx(1.0));
  CHECK(r.entanglement.negativity == doctest::Approx(0.0));
}

TEST_CASE("analyze a mixed state") {
  const AnalyzeResult r = analyze(StateFile::from_density(random_density({2, 2}, 4)), {});
  CHECK_FALSE(r.pure);
  CHECK(r.ok);
  CHECK_FALSE(r.entanglement.concurrence.has_value());
  CHECK(r.nonlocality.upper == doctest::Approx(3.0));
}

TEST_CASE("analysis is deterministic") {
  const StateFile f = StateFile::from_pure(random_pure_state({3, 3}, 6));
  AnalyzeOptions o;
  o.seed = 5;
  CHECK(analyze(f, o).to_json().dump() == analyze(f, o).to_json().dump());
}

TEST_CASE("large states use the lifted compression") {
  const PureBipartiteState psi = random_pure_state({17, 3}, 2);
  ChshResult detail;
  const double lb = chsh_lower_bound(psi, 0, &detail);
  const CompressedState c = schmidt_compress(psi);
  CHECK(lb == doctest::Approx(lift_compressed_ratio(c, detail.violation_ratio)));
  CHECK(lb >= 1.0);
  CHECK(lb <= kTsirelsonRatio + 1e-9);
}

TEST_CASE("tolerances") {
  Tolerances t;
  CHECK(t.get("agreement") == 1e-8);
  CHECK(t.get("dilation") == 1e-10);
  t.set("all", 1e-3);
  CHECK(t.get("slack") == 1e-3);
  CHECK_THROWS_AS(t.set("nope", 1.0), Error);
  CHECK_THROWS_AS(t.set("slack", -1.0), Error);
}

TEST_CASE("coherent scan rows") {
  Tolerances tol;
  std::vector<double> seen;
  const auto rows = coherent_scan({1.0, 0.1, 3.0}, 1, 0, 0, tol,
                                  [&](const ScanRow& r) { seen.push_back(r.alpha); });
  REQUIRE(rows.size() == 3);
  CHECK(seen == std::vector<double>{0.1, 1.0, 3.0});
  CHECK(rows[1].bound_eq63 == doctest::Approx(2.928055160151633767892827).epsilon(1e-14));
  for (const ScanRow& r : rows) {
    CHECK(r.ok);
    CHECK(std::abs(*r.bound_numeric - r.bound_eq63) <= 1e-8);
    CHECK(r.concurrence == doctest::Approx(std::sqrt(2.0) * r.negativity));
    CHECK(r.chsh_lower >= 1.0);
  }
  const auto fam2 = coherent_scan({0.1, 1.0, 3.0}, 2, 0, 0, tol);
  // Spectrum columns are identical across families.
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(fam2[i].lambda_plus == rows[i].lambda_plus);
    CHECK(fam2[i].lambda_minus == rows[i].lambda_minus);
    CHECK(fam2[i].negativity == rows[i].negativity);
    CHECK(fam2[i].concurrence == rows[i].concurrence);
    CHECK(fam2[i].bound_eq63 == rows[i].bound_eq63);
    CHECK(std::abs(fam2[i].chsh_lower - rows[i].chsh_lower) <= 1e-12);
  }
}

TEST_CASE("a too-small cutoff flags the row instead of aborting") {
  const auto rows = coherent_scan({0.5, 3.0}, 1, 20, 0, Tolerances{});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].ok);
  CHECK_FALSE(rows[1].ok);
  CHECK_FALSE(rows[1].bound_numeric.has_value());
  CHECK(rows[1].numeric_error == "CutoffTooSmall");
  CHECK(format_scan_row(rows[1]).find("CutoffTooSmall") != std::string::npos);
}

TEST_CASE("grid construction") {
  const auto g = linspace(0.1, 3.0, 30);
  CHECK(g.size() == 30);
  CHECK(g.front() == 0.1);
  CHECK(g.back() == 3.0);
  CHECK_THROWS_AS(linspace(0.0, 1.0, 1), Error);
}

TEST_CASE("source-op command") {
  const SourceOpResult r =
      run_source_op(testutil::bell_state(), DilatedSite::Left, 2, 20, 0, Tolerances{});
  CHECK(r.pass);
  CHECK(r.report.trace_norm <= 3.0 + 1e-12);
  CHECK(r.bound_eq26 == doctest::Approx(3.0));
  CHECK_THROWS_AS(run_source_op(random_pure_state({4, 4}, 0), DilatedSite::Left, 6, 1, 0, Tolerances{}),
                  Error);
}

TEST_CASE("selftest sensitivity") {
  Tolerances strict;
  strict.set("all", 1e-20);
  const SelftestReport r = run_selftest(0, strict);
  CHECK_FALSE(r.all_pass());
  CHECK(r.passed() < r.properties.size());
  CHECK(r.text().find("FAIL") != std::string::npos);
}
