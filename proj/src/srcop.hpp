#pragma once

#include <cstdint>
#include <random>

#include "states.hpp"

namespace belgauge {

/// Which site of H1 (x) H2 carries the multiple setting slots.
enum class DilatedSite { Left, Right };

inline constexpr std::size_t kDefaultDilationCap = 4096;
inline constexpr double kDilationTol = 1e-10;

/// Self-adjoint trace-class dilation of a state to
/// H1^{(x) s1} (x) H2^{(x) s2}, slots ordered left to right.
struct SourceOperator {
  ComplexMatrix matrix;
  std::size_t s1 = 1;
  std::size_t s2 = 1;
  BipartiteShape shape;
};

/// W_{k k1} on H^{(x) s} for the orthonormal columns of `basis`:
/// the s-th tensor power of |e_k><e_k| when k == k1, otherwise the
/// polarization combination
///   sum_{p in {1,-1,i,-i}} p (|e_k + p e_k1><e_k + p e_k1|)^{(x) s} / 2^{s+1}.
/// Tracing out any s-1 slots leaves |e_k><e_k1|.
ComplexMatrix polarization_block(const ComplexMatrix& basis, std::size_t k,
                                 std::size_t k1, std::size_t s);

/// Side length of the dilated space: d1^s * d2 (left) or d1 * d2^s (right).
/// Saturates instead of overflowing.
std::size_t dilated_dimension(BipartiteShape shape, DilatedSite site,
                              std::size_t s);

/// T_{s x 1} (Left) or T_{1 x s} (Right) of a pure state:
///   sum_{k,k1} sqrt(l_k l_k1) W_{k k1}^{(s)} (x) |e_k><e_k1|   (Left)
///   sum_{k,k1} sqrt(l_k l_k1) |e_k><e_k1| (x) W_{k k1}^{(s)}   (Right)
/// Throws DimensionCap when the dilated side would exceed `cap`.
SourceOperator build_source_operator(const SchmidtSpectrum& spec,
                                     DilatedSite site, std::size_t s,
                                     std::size_t cap = kDefaultDilationCap);

/// 2 (sum_k sqrt(lambda_k))^2 - 1.
double source_trace_norm_bound(const SchmidtSpectrum& spec);

struct DilationReport {
  std::size_t s1 = 1;
  std::size_t s2 = 1;
  std::size_t trials = 0;
  double max_residual = 0.0;  // max |tr[T (..X1..X2..)] - tr[rho X1 X2]|
  double scale = 1.0;         // max(1, ||T||_1)
  double tolerance = kDilationTol;
  double trace = 0.0;
  double trace_norm = 0.0;
  bool pass = false;
};

/// Random operator with complex Gaussian entries, rescaled to spectral norm 1
/// when it exceeds 1.
ComplexMatrix random_bounded_operator(std::size_t d, std::mt19937_64& rng);

/// Checks the dilation identity against `trials` random operator pairs and
/// every slot position. Trials run in parallel on independent substreams;
/// the report does not depend on the worker count.
DilationReport verify_dilation(const SourceOperator& t,
                               const DensityOperator& rho, std::size_t trials,
                               std::uint64_t seed, double tol = kDilationTol);

}  // namespace belgauge
