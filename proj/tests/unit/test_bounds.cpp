#include <doctest.h>

#include <cmath>

#include "bounds.hpp"
#include "error.hpp"
#include "test_util.hpp"

using namespace belgauge;

TEST_CASE("dimension and setting bound") {
  CHECK(bound_dim_setting(2, 2, 2, 2) == std::optional<double>(3.0));
  CHECK(bound_dim_setting(5, 7, 4, 9) == std::optional<double>(7.0));
  CHECK(bound_dim_setting(std::nullopt, std::nullopt, 3, 5) == std::optional<double>(5.0));
  CHECK_FALSE(bound_dim_setting(std::nullopt, std::nullopt, std::nullopt, std::nullopt).has_value());
}

TEST_CASE("projective bound") {
  CHECK(bound_projective(2, 2) == doctest::Approx(std::sqrt(2.0)));
  CHECK(bound_projective(16, 2) == doctest::Approx(3.0));
  CHECK(bound_projective(2, 3) == doctest::Approx(2.828427124746190097603377).epsilon(1e-15));
  CHECK(bound_projective(4, 3) == doctest::Approx(5.0));
  CHECK(bound_projective(3, 5) == doctest::Approx(5.0));
  CHECK_THROWS_AS(bound_projective(3, 1), Error);
}

TEST_CASE("Schmidt bounds for a fixed spectrum") {
  const SchmidtSpectrum s = SchmidtSpectrum::from_eigenvalues({0.9, 0.1});
  // (sqrt 0.9 + sqrt 0.1)^2 = 1 + 2 sqrt(0.09) = 1.6
  const SchmidtBounds b = bound_schmidt(s, SettingCounts{2, 2});
  CHECK(b.by_coefficients == doctest::Approx(2.2).epsilon(1e-14));
  CHECK(b.by_rank == doctest::Approx(3.0));
  const SchmidtBounds free = bound_schmidt(s, std::nullopt);
  CHECK(free.by_coefficients == doctest::Approx(2.2).epsilon(1e-14));
  CHECK(free.by_rank == doctest::Approx(3.0));
  // Setting counts can bind before the coefficients do.
  const SchmidtSpectrum flat = SchmidtSpectrum::from_eigenvalues({0.25, 0.25, 0.25, 0.25});
  CHECK(bound_schmidt(flat, SettingCounts{2, 3}).by_coefficients == doctest::Approx(3.0));
  CHECK(bound_schmidt(flat, std::nullopt).by_coefficients == doctest::Approx(7.0));
}

TEST_CASE("Bell state report with two settings") {
  const NonlocalityReport r =
      assemble_report(testutil::bell_state(), SettingCounts{2, 2}, std::sqrt(2.0));
  CHECK(r.upper == doctest::Approx(3.0));
  CHECK(r.lower == doctest::Approx(std::sqrt(2.0)));
  CHECK(r.bracket_valid());
  bool saw_eq02 = false;
  for (const LabeledBound& b : r.labeled()) {
    if (b.tag == "eq02") {
      saw_eq02 = true;
      CHECK_FALSE(b.in_bracket);
      CHECK(*b.value == doctest::Approx(std::sqrt(2.0)));
    }
  }
  CHECK(saw_eq02);
}

TEST_CASE("product state bracket collapses to one") {
  const NonlocalityReport r = assemble_report(testutil::product_state(2, 3), std::nullopt, 1.0);
  CHECK(r.lower == doctest::Approx(1.0));
  CHECK(r.upper == doctest::Approx(1.0));
}

TEST_CASE("CHSH lower bound needs two settings per site") {
  const NonlocalityReport r =
      assemble_report(testutil::bell_state(), SettingCounts{1, 5}, std::sqrt(2.0));
  CHECK(r.lower == doctest::Approx(1.0));
  CHECK(r.upper == doctest::Approx(1.0));
}

TEST_CASE("infinite dimension without settings") {
  SchmidtSpectrum s = SchmidtSpectrum::from_eigenvalues({0.5, 0.5});
  const NonlocalityReport r = assemble_report(s, std::nullopt, std::nullopt);
  CHECK_FALSE(r.bound_dim_setting.has_value());
  CHECK(r.upper == doctest::Approx(3.0));
}

TEST_CASE("mixed report uses the dimension bound only") {
  const NonlocalityReport r = assemble_mixed_report({3, 4}, SettingCounts{5, 5}, 1.2);
  CHECK(r.bound_dim_setting == std::optional<double>(5.0));
  CHECK_FALSE(r.bound_schmidt_settings.has_value());
  CHECK(r.upper == doctest::Approx(5.0));
  CHECK(r.lower == doctest::Approx(1.2));
}

TEST_CASE("bound chain holds on random states") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const BipartiteShape shape{2 + seed % 3, 2 + (seed / 3) % 3};
    const SchmidtSpectrum s = schmidt_decompose(random_pure_state(shape, seed));
    const SchmidtBounds b = bound_schmidt(s, std::nullopt);
    const double dmin = static_cast<double>(std::min(shape.d1, shape.d2));
    CHECK(b.by_coefficients <= b.by_rank + 1e-12);
    CHECK(b.by_rank <= 2.0 * dmin - 1.0 + 1e-12);
    CHECK(b.by_coefficients >= 1.0);
  }
}
