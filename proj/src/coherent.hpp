#pragma once

// Entangled coherent states
//   |Phi_1(a)> ~ |a>|a> + |-a>|-a>,   |Phi_2(a)> ~ |a>|-a> + |-a>|a>,
// with binary coherent states |+-a> = e^{-a^2/2} sum_m (+-a)^m / sqrt(m!) |m>.
//
// Closed forms (spectrum, negativity, concurrence, violation bound) sit next
// to an independent truncated-Fock pipeline that builds the states
// numerically and Schmidt-decomposes them.
//
// Note on the large-amplitude limit: the concurrence here is
// C = (1 - e^{-4a^2}) / (sqrt(2) (1 + e^{-4a^2})) = sqrt(2) N, which tends to
// 1/sqrt(2). A limit of 1/(2 sqrt(2)) quoted in some write-ups of these
// states does not follow from that expression and is not used.

#include <cstdint>

#include "entmeas.hpp"
#include "states.hpp"

namespace belgauge {

inline constexpr double kMaxTail = 1e-6;

struct CoherentPairSpec {
  int family = 1;            // 1 or 2
  double alpha = 1.0;        // > 0
  std::size_t fock_cutoff = 0;  // 0 selects default_fock_cutoff(alpha)

  /// Throws InvalidArgument for alpha <= 0 or an unknown family.
  void validate() const;
  std::size_t cutoff() const;
};

/// ceil(8 a^2 + 40).
std::size_t default_fock_cutoff(double alpha);

struct TruncatedCoherent {
  RealVector components;  // renormalized amplitudes on |0> .. |N-1>
  double tail = 0.0;      // norm deficit before renormalization
};

/// Binary coherent state |a> truncated to N Fock levels (a may be negative
/// or zero). Throws CutoffTooSmall when the discarded tail exceeds 1e-6.
TruncatedCoherent coherent_vector(double alpha_signed, std::size_t cutoff);

/// lambda_+- = (1 +- e^{-2a^2})^2 / (2 (1 + e^{-4a^2})), identical for both
/// families. No bases: the state is infinite-dimensional.
SchmidtSpectrum analytic_spectrum(const CoherentPairSpec& spec);

/// Orthonormal basis {u1, u2} of span{|a>, |-a>} by Gram-Schmidt in the
/// truncated Fock space (columns of an N x 2 matrix).
ComplexMatrix span_basis(double alpha, std::size_t cutoff);

/// 2x2 amplitude matrix of |Phi_j(a)> in the {u1, u2} (x) {u1, u2} basis,
/// computed in closed form.
ComplexMatrix span_coefficients(int family, double alpha);

/// The exact two-level representation as a two-qubit state.
PureBipartiteState two_level_state(int family, double alpha);

/// |Phi_j(a)> as an N x N amplitude matrix in the truncated Fock basis.
PureBipartiteState truncated_state(const CoherentPairSpec& spec);

/// Schmidt decomposition of the truncated state.
SchmidtSpectrum numeric_spectrum(const CoherentPairSpec& spec);

/// (3 - e^{-4a^2}) / (1 + e^{-4a^2}).
double prop2_bound(double alpha);

/// Closed-form negativity and concurrence (infinite dimension, rank 2) and
/// the relation slacks for the given lower bound on the violation.
EntanglementReport coherent_measures(const CoherentPairSpec& spec,
                                     double lower_bound = 1.0);

}  // namespace belgauge
