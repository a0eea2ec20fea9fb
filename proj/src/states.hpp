#pragma once

#include <cstdint>
#include <optional>

#include "numlin.hpp"

namespace belgauge {

inline constexpr double kNormTol = 1e-10;
inline constexpr double kSchmidtCutoff = 1e-12;
inline constexpr double kPurityTol = 1e-8;

/// |psi> on H1 (x) H2 stored as its d1 x d2 amplitude matrix: entry (i, j) is
/// the coefficient of |i>|j>.
class PureBipartiteState {
 public:
  /// Throws NotNormalized unless sum |a_ij|^2 = 1 within `tol`.
  static PureBipartiteState from_amplitudes(ComplexMatrix amplitudes,
                                            double tol = kNormTol);
  /// Rescales to unit norm. Throws InvalidState for a zero matrix.
  static PureBipartiteState normalized(ComplexMatrix amplitudes);

  const ComplexMatrix& amplitudes() const { return amplitudes_; }
  BipartiteShape shape() const {
    return {static_cast<std::size_t>(amplitudes_.rows()),
            static_cast<std::size_t>(amplitudes_.cols())};
  }
  /// Flat state vector, index i * d2 + j.
  ComplexVector vector() const;

 private:
  explicit PureBipartiteState(ComplexMatrix a) : amplitudes_(std::move(a)) {}
  ComplexMatrix amplitudes_;
};

class DensityOperator {
 public:
  /// Validates self-adjointness, positivity (eigenvalues >= -tol) and unit
  /// trace; throws InvalidState / ShapeMismatch otherwise.
  static DensityOperator from_matrix(ComplexMatrix m, BipartiteShape shape,
                                     double tol = kNormTol);

  const ComplexMatrix& matrix() const { return matrix_; }
  BipartiteShape shape() const { return shape_; }
  double purity() const;

 private:
  DensityOperator(ComplexMatrix m, BipartiteShape s)
      : matrix_(std::move(m)), shape_(s) {}
  ComplexMatrix matrix_;
  BipartiteShape shape_;
};

/// Schmidt data of a pure state: |psi> = sum_k sqrt(lambda_k) |e_k^(1)>|e_k^(2)>.
/// `shape` is empty for states that live in infinite dimension (only the
/// coefficients are known then, and the bases have zero columns).
struct SchmidtSpectrum {
  RealVector coefficients;  // sqrt(lambda_k), descending
  RealVector eigenvalues;   // lambda_k
  std::size_t rank = 0;
  ComplexMatrix left_basis;   // d1 x rank, column k is |e_k^(1)>
  ComplexMatrix right_basis;  // d2 x rank, column k is |e_k^(2)>
  std::optional<BipartiteShape> shape;

  static SchmidtSpectrum from_eigenvalues(RealVector lambdas);

  double sum_coefficients() const;        // sum_k sqrt(lambda_k)
  double sum_squared_eigenvalues() const; // sum_k lambda_k^2
  bool has_bases() const { return left_basis.cols() > 0; }
  /// min{d1, d2}, or empty in infinite dimension.
  std::optional<std::size_t> local_dim() const;
};

SchmidtSpectrum schmidt_decompose(const PureBipartiteState& psi,
                                  double cutoff = kSchmidtCutoff);

/// sum_k c_k |e_k^(1)>|e_k^(2)> as an amplitude matrix.
ComplexMatrix schmidt_reconstruct(const SchmidtSpectrum& spec);

DensityOperator pure_to_density(const PureBipartiteState& psi);

/// Dominant eigenvector of a density operator whose purity is at least
/// 1 - kPurityTol; throws NotPure otherwise.
PureBipartiteState density_to_pure(const DensityOperator& rho);

/// Normalized i.i.d. complex Gaussian amplitudes, deterministic in `seed`.
PureBipartiteState random_pure_state(BipartiteShape shape, std::uint64_t seed);

/// Normalized G G^dagger for a d x rank complex Gaussian G (rank 0 = full).
DensityOperator random_density(BipartiteShape shape, std::uint64_t seed,
                               std::size_t rank = 0);

/// State with prescribed Schmidt eigenvalues rotated by random local
/// unitaries.
PureBipartiteState state_with_spectrum(BipartiteShape shape,
                                       const RealVector& lambdas,
                                       std::uint64_t seed);

/// Haar-ish unitary from the QR factorization of a complex Gaussian matrix.
ComplexMatrix random_unitary(std::size_t d, std::uint64_t seed);

}  // namespace belgauge
