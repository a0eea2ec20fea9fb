#include <doctest.h>

#include <cmath>

#include "coherent.hpp"
#include "error.hpp"
#include "test_util.hpp"

using namespace belgauge;

namespace {

// Reference values evaluated with 40-digit arithmetic.
struct Frozen {
  double alpha, bound, lambda_plus, lambda_minus;
};
constexpr Frozen kFrozen[] = {
    {0.1, 1.039994667519861863660568, 0.999900016663955995166825, 0.00009998333604400483317504216},
    {0.25, 1.248706003543192416109295, 0.9961190207375628806180954, 0.003880979262437119381904629},
    {0.5, 1.924234314520019517004637, 0.9434094419850369543294489, 0.0565905580149630456705511},
    {1.0, 2.928055160151633767892827, 0.6329011144170398460604314, 0.3670988855829601539395686},
    {2.0, 2.999999549859351779620038, 0.5003354625901511706443842, 0.4996645374098488293556158},
    {3.0, 2.999999999999999072190868, 0.5000000152299797447126249, 0.4999999847700202552873751},
};

}  // namespace

TEST_CASE("closed-form bound and spectrum against reference values") {
  for (const Frozen& f : kFrozen) {
    CAPTURE(f.alpha);
    CHECK(std::abs(prop2_bound(f.alpha) - f.bound) <= 1e-14);
    const SchmidtSpectrum s = analytic_spectrum({1, f.alpha, 0});
    CHECK(std::abs(s.eigenvalues[0] - f.lambda_plus) <= 1e-15);
    CHECK(std::abs(s.eigenvalues[1] - f.lambda_minus) <= 1e-15);
  }
}

TEST_CASE("closed-form measures at alpha = 0.1 and 1") {
  const EntanglementReport r01 = coherent_measures({1, 0.1, 0});
  CHECK(r01.negativity == doctest::Approx(0.009998666879965465915141935).epsilon(1e-13));
  CHECK(*r01.concurrence == doctest::Approx(0.01414025030729784109637501).epsilon(1e-13));
  const EntanglementReport r1 = coherent_measures({2, 1.0, 0});
  CHECK(r1.negativity == doctest::Approx(0.4820137900379084419732069).epsilon(1e-14));
  CHECK(*r1.concurrence == doctest::Approx(0.6816704391224675712700796).epsilon(1e-14));
  CHECK(*r1.concurrence == doctest::Approx(std::sqrt(2.0) * r1.negativity).epsilon(1e-14));
  CHECK_FALSE(r1.dim_factor.has_value());
}

TEST_CASE("truncated Fock pipeline matches the closed form for both families") {
  for (int family : {1, 2}) {
    for (const Frozen& f : kFrozen) {
      CAPTURE(family);
      CAPTURE(f.alpha);
      const SchmidtSpectrum s = numeric_spectrum({family, f.alpha, 0});
      REQUIRE(s.rank >= 2);
      CHECK(std::abs(s.eigenvalues[0] - f.lambda_plus) <= 1e-8);
      CHECK(std::abs(s.eigenvalues[1] - f.lambda_minus) <= 1e-8);
    }
  }
}

TEST_CASE("coherent vectors") {
  const TruncatedCoherent plus = coherent_vector(1.0, default_fock_cutoff(1.0));
  const TruncatedCoherent minus = coherent_vector(-1.0, default_fock_cutoff(1.0));
  double overlap = 0.0;
  for (std::size_t m = 0; m < plus.components.size(); ++m)
    overlap += plus.components[m] * minus.components[m];
  CHECK(overlap == doctest::Approx(0.1353352832366126918939995).epsilon(1e-14));
  CHECK(plus.tail < 1e-15);
  CHECK(default_fock_cutoff(1.0) == 48);
  CHECK(coherent_vector(0.0, 5).components[0] == doctest::Approx(1.0));

  try {
    coherent_vector(3.0, 20);
    FAIL("expected CutoffTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CutoffTooSmall);
  }
}

TEST_CASE("two-level representation") {
  for (double a : {0.3, 1.0, 2.0}) {
    const ComplexMatrix u = span_basis(a, default_fock_cutoff(a));
    CHECK(testutil::max_diff(u.adjoint() * u, ComplexMatrix::Identity(2, 2)) < 1e-12);
    for (int family : {1, 2}) {
      // Embedding the 2x2 coefficients must give the truncated state.
      const ComplexMatrix embedded = u * span_coefficients(family, a) * u.transpose();
      const ComplexMatrix direct = truncated_state({family, a, 0}).amplitudes();
      CHECK(testutil::max_diff(embedded, direct) < 1e-10);
      const SchmidtSpectrum s = schmidt_decompose(two_level_state(family, a));
      const SchmidtSpectrum ref = analytic_spectrum({family, a, 0});
      CHECK(s.eigenvalues[0] == doctest::Approx(ref.eigenvalues[0]).epsilon(1e-12));
    }
  }
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS((CoherentPairSpec{1, 0.0, 0}.validate()), Error);
  CHECK_THROWS_AS((CoherentPairSpec{1, -1.0, 0}.validate()), Error);
  CHECK_THROWS_AS((CoherentPairSpec{3, 1.0, 0}.validate()), Error);
  CHECK((CoherentPairSpec{1, 1.0, 60}.cutoff()) == 60);
}

TEST_CASE("bound increases toward three") {
  double prev = prop2_bound(0.05);
  for (int i = 2; i <= 60; ++i) {
    const double b = prop2_bound(0.05 * i);
    CHECK(b >= prev);
    CHECK(b <= 3.0);
    prev = b;
  }
}
