#include "numlin.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "error.hpp"

namespace belgauge {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DimensionCap: return "DimensionCap";
    case ErrorCode::SettingsTooSmall: return "SettingsTooSmall";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::RankTooSmall: return "RankTooSmall";
    case ErrorCode::InvalidLowerBound: return "InvalidLowerBound";
    case ErrorCode::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorCode::NotTwoQubit: return "NotTwoQubit";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace numlin {
namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": matrix is " << m.rows() << "x" << m.cols()
       << ", expected square";
    throw Error(ErrorCode::NotSquare, os.str());
  }
}

void require_bipartite(const ComplexMatrix& m, BipartiteShape shape,
                       const char* what) {
  require_square(m, what);
  if (static_cast<std::size_t>(m.rows()) != shape.total()) {
    std::ostringstream os;
    os << what << ": side " << m.rows() << " does not match d1*d2 = "
       << shape.d1 << "*" << shape.d2;
    throw Error(ErrorCode::ShapeMismatch, os.str());
  }
}

void require_subsystem(int which, const char* what) {
  if (which != 1 && which != 2) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + ": subsystem index must be 1 or 2");
  }
}

RealVector descending(const Eigen::VectorXd& v) {
  RealVector out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_hermitian(const ComplexMatrix& m, double tol) {
  require_square(m, "hermitian check");
  const double scale = max_abs(m);
  const double dev = max_abs(m - m.adjoint());
  if (dev > tol * scale) {
    std::ostringstream os;
    os << "matrix is not self-adjoint: max|m - m^dagger| = " << dev
       << " exceeds " << tol << " * " << scale;
    throw Error(ErrorCode::NotHermitian, os.str());
  }
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m, double tol) {
  require_hermitian(m, tol);
  const ComplexMatrix sym = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym, Eigen::EigenvaluesOnly);
  return descending(es.eigenvalues());
}

HermitianEigen hermitian_eigensystem(const ComplexMatrix& m, double tol) {
  require_hermitian(m, tol);
  const ComplexMatrix sym = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym);
  // Eigen returns ascending order.
  const Eigen::Index n = sym.rows();
  HermitianEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values[i] = es.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return out;
}

RealVector singular_values(const ComplexMatrix& m) {
  if (m.size() == 0) return {};
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return descending(svd.singularValues());
}

double trace_norm(const ComplexMatrix& m) {
  require_square(m, "trace_norm");
  double sum = 0.0;
  for (double s : singular_values(m)) sum += s;
  return sum;
}

double trace_norm_hermitian(const ComplexMatrix& m, double tol) {
  double sum = 0.0;
  for (double v : hermitian_eigenvalues(m, tol)) sum += std::abs(v);
  return sum;
}

double spectral_norm(const ComplexMatrix& m) {
  const RealVector s = singular_values(m);
  return s.empty() ? 0.0 : s.front();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix kron_power(const ComplexMatrix& a, std::size_t power) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (std::size_t i = 0; i < power; ++i) out = kron(out, a);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteShape shape,
                            int keep) {
  require_subsystem(keep, "partial_trace");
  require_bipartite(m, shape, "partial_trace");
  const auto d1 = static_cast<Eigen::Index>(shape.d1);
  const auto d2 = static_cast<Eigen::Index>(shape.d2);
  if (keep == 1) {
    ComplexMatrix out = ComplexMatrix::Zero(d1, d1);
    for (Eigen::Index i = 0; i < d1; ++i)
      for (Eigen::Index k = 0; k < d1; ++k)
        for (Eigen::Index j = 0; j < d2; ++j)
          out(i, k) += m(i * d2 + j, k * d2 + j);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
  for (Eigen::Index j = 0; j < d2; ++j)
    for (Eigen::Index l = 0; l < d2; ++l)
      for (Eigen::Index i = 0; i < d1; ++i)
        out(j, l) += m(i * d2 + j, i * d2 + l);
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, BipartiteShape shape,
                                int which) {
  require_subsystem(which, "partial_transpose");
  require_bipartite(m, shape, "partial_transpose");
  const auto d1 = static_cast<Eigen::Index>(shape.d1);
  const auto d2 = static_cast<Eigen::Index>(shape.d2);
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < d1; ++i)
    for (Eigen::Index j = 0; j < d2; ++j)
      for (Eigen::Index k = 0; k < d1; ++k)
        for (Eigen::Index l = 0; l < d2; ++l) {
          // <i j| rho^T |k l>
          const Complex v = which == 1 ? m(k * d2 + j, i * d2 + l)
                                       : m(i * d2 + l, k * d2 + j);
          out(i * d2 + j, k * d2 + l) = v;
        }
  return out;
}

ComplexMatrix hermitian_sign(const ComplexMatrix& m) {
  const HermitianEigen eig = hermitian_eigensystem(m);
  const Eigen::Index n = m.rows();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = eig.values[i] >= 0.0 ? 1.0 : -1.0;
    out += s * eig.vectors.col(i) * eig.vectors.col(i).adjoint();
  }
  return out;
}

}  // namespace numlin
}  // namespace belgauge
