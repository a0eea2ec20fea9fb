#pragma once

// CHSH lower bounds on the maximal Bell violation.
//
// The CHSH expression is <A1 B1> + <A1 B2> + <A2 B1> - <A2 B2>, whose local
// bound is 2; the violation ratio is value / 2. The see-saw alternates
//   A1 = sign(M(B1 + B2)), A2 = sign(M(B1 - B2)),  M(B) = tr_2[rho (1 (x) B)]
//   B1 = sign(N(A1 + A2)), B2 = sign(N(A1 - A2)),  N(A) = tr_1[rho (A (x) 1)]
// each half-step being the exact maximizer with the other side fixed.

#include <cstdint>
#include <random>
#include <vector>

#include "states.hpp"

namespace belgauge {

inline constexpr double kTsirelsonRatio = 1.4142135623730951;

struct SeesawOptions {
  std::size_t restarts = 20;
  std::uint64_t seed = 0;
  double tol = 1e-12;
  std::size_t max_iters = 500;
  std::size_t dim_cap = 16;
};

struct ChshResult {
  ComplexMatrix a1, a2, b1, b2;
  double chsh_value = 0.0;
  double violation_ratio = 0.0;
  std::size_t iterations = 0;
  std::size_t restart = 0;  // index of the restart that produced the optimum
  bool converged = false;
};

/// sign(H) for a Gaussian Hermitian H: a random +-1-valued observable.
ComplexMatrix random_observable(std::size_t d, std::mt19937_64& rng);

/// tr[rho (A1 (x) (B1 + B2) + A2 (x) (B1 - B2))].
double chsh_expectation(const DensityOperator& rho, const ComplexMatrix& a1,
                        const ComplexMatrix& a2, const ComplexMatrix& b1,
                        const ComplexMatrix& b2);

/// One see-saw run from the given B-side start. When `trajectory` is given it
/// receives the CHSH value after every half-step.
ChshResult seesaw_run(const DensityOperator& rho, ComplexMatrix b1,
                      ComplexMatrix b2, double tol, std::size_t max_iters,
                      std::vector<double>* trajectory = nullptr);

/// Best of `restarts` runs from random sign-of-Gaussian starts. Restarts run
/// in parallel on restart-indexed substreams; ties go to the lowest index, so
/// the result matches a serial run. Throws DimensionCap if d1 or d2 exceeds
/// the cap.
ChshResult seesaw_chsh(const DensityOperator& rho, const SeesawOptions& opts = {});

/// 2 sqrt(u1 + u2) for the two largest eigenvalues of T^T T,
/// T_ij = tr[rho sigma_i (x) sigma_j]: the maximal CHSH value of a two-qubit
/// state over traceless observables a.sigma. Throws NotTwoQubit.
double horodecki_traceless(const DensityOperator& rho);

/// Maximal CHSH value over all +-1-valued qubit observables. The extra
/// candidates +-1 only reach the local value 2 (commuting observables admit a
/// local model), so this is max(2, horodecki_traceless).
double horodecki_oracle(const DensityOperator& rho);

struct CompressedState {
  PureBipartiteState state;  // two-qubit, diag(sqrt l1, sqrt l2) / norm
  ComplexMatrix left;        // d1 x 2 isometry onto the top Schmidt vectors
  ComplexMatrix right;       // d2 x 2
  double weight = 1.0;       // l1 + l2, the retained norm^2

  /// Embeds the two-qubit state back into H1 (x) H2.
  ComplexMatrix decompress() const;
};

/// Projects onto the two leading Schmidt vectors and renormalizes. Throws
/// RankTooSmall for product states.
CompressedState schmidt_compress(const PureBipartiteState& psi);

/// Violation ratio achievable on the original state from a ratio `r`
/// realized on its compression: observables act as given on the retained
/// subspace and as +1 on its complement, giving w r + (1 - w).
double lift_compressed_ratio(const CompressedState& c, double r);

}  // namespace belgauge
