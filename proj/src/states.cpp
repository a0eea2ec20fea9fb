#include "states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "error.hpp"
#include "parallel.hpp"

namespace belgauge {
namespace {

ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols,
                              std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  // Fill row-major so the draw order matches the flat index convention.
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

}  // namespace

PureBipartiteState PureBipartiteState::from_amplitudes(ComplexMatrix amplitudes,
                                                       double tol) {
  if (amplitudes.size() == 0) {
    throw Error(ErrorCode::InvalidState, "pure state has no amplitudes");
  }
  if (!amplitudes.allFinite()) {
    throw Error(ErrorCode::InvalidState, "pure state has non-finite entries");
  }
  const double norm2 = amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > tol) {
    std::ostringstream os;
    os << "pure state is not normalized: sum |a|^2 = " << norm2;
    throw Error(ErrorCode::NotNormalized, os.str());
  }
  return PureBipartiteState(std::move(amplitudes));
}

PureBipartiteState PureBipartiteState::normalized(ComplexMatrix amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorCode::InvalidState, "cannot normalize a zero state");
  }
  amplitudes /= n;
  return PureBipartiteState(std::move(amplitudes));
}

ComplexVector PureBipartiteState::vector() const {
  const auto d1 = amplitudes_.rows();
  const auto d2 = amplitudes_.cols();
  ComplexVector v(d1 * d2);
  for (Eigen::Index i = 0; i < d1; ++i)
    for (Eigen::Index j = 0; j < d2; ++j) v(i * d2 + j) = amplitudes_(i, j);
  return v;
}

DensityOperator DensityOperator::from_matrix(ComplexMatrix m,
                                             BipartiteShape shape, double tol) {
  if (m.rows() != m.cols() ||
      static_cast<std::size_t>(m.rows()) != shape.total()) {
    std::ostringstream os;
    os << "density matrix is " << m.rows() << "x" << m.cols()
       << ", expected side d1*d2 = " << shape.total();
    throw Error(ErrorCode::ShapeMismatch, os.str());
  }
  if (!m.allFinite()) {
    throw Error(ErrorCode::InvalidState, "density matrix has non-finite entries");
  }
  const double herm_dev = numlin::max_abs(m - m.adjoint());
  if (herm_dev > tol * std::max(1.0, numlin::max_abs(m))) {
    throw Error(ErrorCode::InvalidState, "density matrix is not self-adjoint");
  }
  const Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol) {
    std::ostringstream os;
    os << "density matrix trace is " << tr.real() << ", expected 1";
    throw Error(ErrorCode::InvalidState, os.str());
  }
  const RealVector ev = numlin::hermitian_eigenvalues(m, 1.0);
  if (ev.back() < -tol) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << ev.back();
    throw Error(ErrorCode::InvalidState, os.str());
  }
  return DensityOperator((m + m.adjoint()) * 0.5, shape);
}

double DensityOperator::purity() const {
  // tr(rho^2) = sum |rho_ij|^2 for self-adjoint rho
  return matrix_.squaredNorm();
}

SchmidtSpectrum SchmidtSpectrum::from_eigenvalues(RealVector lambdas) {
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  SchmidtSpectrum s;
  for (double l : lambdas) {
    if (l <= 0.0) continue;
    s.eigenvalues.push_back(l);
    s.coefficients.push_back(std::sqrt(l));
  }
  s.rank = s.eigenvalues.size();
  return s;
}

double SchmidtSpectrum::sum_coefficients() const {
  return std::accumulate(coefficients.begin(), coefficients.end(), 0.0);
}

double SchmidtSpectrum::sum_squared_eigenvalues() const {
  double s = 0.0;
  for (double l : eigenvalues) s += l * l;
  return s;
}

std::optional<std::size_t> SchmidtSpectrum::local_dim() const {
  if (!shape) return std::nullopt;
  return std::min(shape->d1, shape->d2);
}

SchmidtSpectrum schmidt_decompose(const PureBipartiteState& psi,
                                  double cutoff) {
  const ComplexMatrix& a = psi.amplitudes();
  if (std::abs(a.squaredNorm() - 1.0) > kNormTol) {
    throw Error(ErrorCode::NotNormalized, "schmidt_decompose: state not normalized");
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();  // already descending
  const double smax = sv.size() > 0 ? sv(0) : 0.0;

  SchmidtSpectrum out;
  out.shape = psi.shape();
  std::size_t rank = 0;
  while (rank < static_cast<std::size_t>(sv.size()) && sv(rank) > cutoff * smax)
    ++rank;
  out.rank = rank;
  out.left_basis.resize(a.rows(), rank);
  out.right_basis.resize(a.cols(), rank);
  for (std::size_t k = 0; k < rank; ++k) {
    ComplexVector u = svd.matrixU().col(k);
    // a = U S V^dagger, so |e_k^(2)> = conj(V_k).
    ComplexVector w = svd.matrixV().col(k).conjugate();
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      if (std::abs(u(i)) > 1e-14) {
        const Complex phase = std::conj(u(i)) / std::abs(u(i));
        u *= phase;
        w /= phase;
        break;
      }
    }
    out.left_basis.col(k) = u;
    out.right_basis.col(k) = w;
    out.coefficients.push_back(sv(k));
    out.eigenvalues.push_back(sv(k) * sv(k));
  }
  return out;
}

ComplexMatrix schmidt_reconstruct(const SchmidtSpectrum& spec) {
  ComplexMatrix a = ComplexMatrix::Zero(spec.left_basis.rows(),
                                        spec.right_basis.rows());
  for (std::size_t k = 0; k < spec.rank; ++k) {
    a += spec.coefficients[k] * spec.left_basis.col(k) *
         spec.right_basis.col(k).transpose();
  }
  return a;
}

DensityOperator pure_to_density(const PureBipartiteState& psi) {
  const ComplexVector v = psi.vector();
  ComplexMatrix rho = v * v.adjoint();
  return DensityOperator::from_matrix(std::move(rho), psi.shape());
}

PureBipartiteState density_to_pure(const DensityOperator& rho) {
  const double purity = rho.purity();
  if (purity < 1.0 - kPurityTol) {
    std::ostringstream os;
    os << "operation needs a pure state, but tr(rho^2) = " << purity;
    throw Error(ErrorCode::NotPure, os.str());
  }
  const auto eig = numlin::hermitian_eigensystem(rho.matrix());
  const BipartiteShape s = rho.shape();
  ComplexMatrix a(s.d1, s.d2);
  for (std::size_t i = 0; i < s.d1; ++i)
    for (std::size_t j = 0; j < s.d2; ++j) a(i, j) = eig.vectors(i * s.d2 + j, 0);
  return PureBipartiteState::normalized(std::move(a));
}

PureBipartiteState random_pure_state(BipartiteShape shape, std::uint64_t seed) {
  std::mt19937_64 rng = substream(seed, 0x5157u);
  return PureBipartiteState::normalized(gaussian_matrix(shape.d1, shape.d2, rng));
}

DensityOperator random_density(BipartiteShape shape, std::uint64_t seed,
                               std::size_t rank) {
  std::mt19937_64 rng = substream(seed, 0xd3e5u);
  const std::size_t n = shape.total();
  const ComplexMatrix g = gaussian_matrix(n, rank == 0 ? n : rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint()) * 0.5;
  return DensityOperator::from_matrix(std::move(rho), shape);
}

ComplexMatrix random_unitary(std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng = substream(seed, 0x0417u);
  const ComplexMatrix g = gaussian_matrix(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t i = 0; i < d; ++i) {
    const Complex rii = r(i, i);
    if (std::abs(rii) > 0.0) q.col(i) *= rii / std::abs(rii);
  }
  return q;
}

PureBipartiteState state_with_spectrum(BipartiteShape shape,
                                       const RealVector& lambdas,
                                       std::uint64_t seed) {
  if (lambdas.size() > std::min(shape.d1, shape.d2)) {
    throw Error(ErrorCode::InvalidArgument,
                "more Schmidt eigenvalues than min{d1, d2}");
  }
  ComplexMatrix diag = ComplexMatrix::Zero(shape.d1, shape.d2);
  for (std::size_t k = 0; k < lambdas.size(); ++k) diag(k, k) = std::sqrt(lambdas[k]);
  const ComplexMatrix u = random_unitary(shape.d1, seed);
  const ComplexMatrix v = random_unitary(shape.d2, seed ^ 0x9e3779b97f4a7c15ULL);
  return PureBipartiteState::normalized(u * diag * v.transpose());
}

}  // namespace belgauge
