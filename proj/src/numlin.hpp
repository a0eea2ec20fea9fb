#pragma once

// Dense complex linear algebra shared by every other module.
//
// Bipartite index convention: basis vector |i>|j> of H1 (x) H2 sits at flat
// index i * d2 + j. Everything in the library relies on this ordering.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace belgauge {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = std::vector<double>;

struct BipartiteShape {
  std::size_t d1 = 1;
  std::size_t d2 = 1;

  std::size_t total() const { return d1 * d2; }
  std::size_t local(int subsystem) const { return subsystem == 1 ? d1 : d2; }
  friend bool operator==(const BipartiteShape&, const BipartiteShape&) = default;
};

namespace numlin {

inline constexpr double kHermitianTol = 1e-10;

/// Largest absolute entry; 0 for an empty matrix.
double max_abs(const ComplexMatrix& m);

/// Throws NotSquare / NotHermitian if `m` is not self-adjoint within
/// tol * max|m_ij|.
void require_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

/// Eigenvalues of a self-adjoint matrix, descending. The input is
/// symmetrized as (m + m^dagger)/2 after the tolerance check.
RealVector hermitian_eigenvalues(const ComplexMatrix& m,
                                 double tol = kHermitianTol);

struct HermitianEigen {
  RealVector values;      // descending
  ComplexMatrix vectors;  // column i belongs to values[i]
};
HermitianEigen hermitian_eigensystem(const ComplexMatrix& m,
                                     double tol = kHermitianTol);

RealVector singular_values(const ComplexMatrix& m);

/// Sum of singular values. Square input only.
double trace_norm(const ComplexMatrix& m);

/// Sum of |eigenvalues|; the cheaper route when `m` is known self-adjoint.
double trace_norm_hermitian(const ComplexMatrix& m,
                            double tol = kHermitianTol);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// a (x) a (x) ... (x) a, `power` factors. power == 0 gives the 1x1 identity.
ComplexMatrix kron_power(const ComplexMatrix& a, std::size_t power);

/// Traces out the subsystem other than `keep` (1 or 2).
ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteShape shape,
                            int keep);

/// Transposes the indices of subsystem `which` (1 or 2).
ComplexMatrix partial_transpose(const ComplexMatrix& m, BipartiteShape shape,
                                int which);

/// Spectral sign: P_{>=0} - P_{<0}. Zero eigenvalues map to +1.
ComplexMatrix hermitian_sign(const ComplexMatrix& m);

}  // namespace numlin
}  // namespace belgauge
