#include "chsh.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <random>
#include <sstream>

#include "error.hpp"
#include "parallel.hpp"

namespace belgauge {
namespace {

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return (m + m.adjoint()) * 0.5;
}

// tr_2[rho (1 (x) b)]
ComplexMatrix reduce_left(const ComplexMatrix& rho, BipartiteShape s,
                          const ComplexMatrix& b) {
  const auto d1 = static_cast<Eigen::Index>(s.d1);
  const auto d2 = static_cast<Eigen::Index>(s.d2);
  ComplexMatrix out = ComplexMatrix::Zero(d1, d1);
  for (Eigen::Index i = 0; i < d1; ++i)
    for (Eigen::Index ip = 0; ip < d1; ++ip) {
      Complex acc = 0.0;
      for (Eigen::Index j = 0; j < d2; ++j)
        for (Eigen::Index jp = 0; jp < d2; ++jp)
          acc += rho(i * d2 + j, ip * d2 + jp) * b(jp, j);
      out(i, ip) = acc;
    }
  return hermitian_part(out);
}

// tr_1[rho (a (x) 1)]
ComplexMatrix reduce_right(const ComplexMatrix& rho, BipartiteShape s,
                           const ComplexMatrix& a) {
  const auto d1 = static_cast<Eigen::Index>(s.d1);
  const auto d2 = static_cast<Eigen::Index>(s.d2);
  ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
  for (Eigen::Index j = 0; j < d2; ++j)
    for (Eigen::Index jp = 0; jp < d2; ++jp) {
      Complex acc = 0.0;
      for (Eigen::Index i = 0; i < d1; ++i)
        for (Eigen::Index ip = 0; ip < d1; ++ip)
          acc += rho(i * d2 + j, ip * d2 + jp) * a(ip, i);
      out(j, jp) = acc;
    }
  return hermitian_part(out);
}

double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.array() * b.transpose().array()).sum().real();
}

}  // namespace

ComplexMatrix random_observable(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return numlin::hermitian_sign(hermitian_part(g));
}

double chsh_expectation(const DensityOperator& rho, const ComplexMatrix& a1,
                        const ComplexMatrix& a2, const ComplexMatrix& b1,
                        const ComplexMatrix& b2) {
  const ComplexMatrix& m = rho.matrix();
  const BipartiteShape s = rho.shape();
  return real_trace_product(a1, reduce_left(m, s, b1 + b2)) +
         real_trace_product(a2, reduce_left(m, s, b1 - b2));
}

ChshResult seesaw_run(const DensityOperator& rho, ComplexMatrix b1,
                      ComplexMatrix b2, double tol, std::size_t max_iters,
                      std::vector<double>* trajectory) {
  const ComplexMatrix& m = rho.matrix();
  const BipartiteShape s = rho.shape();
  ChshResult r;
  r.b1 = std::move(b1);
  r.b2 = std::move(b2);
  double previous = -std::numeric_limits<double>::infinity();
  for (std::size_t it = 1; it <= max_iters; ++it) {
    const ComplexMatrix ma1 = reduce_left(m, s, r.b1 + r.b2);
    const ComplexMatrix ma2 = reduce_left(m, s, r.b1 - r.b2);
    r.a1 = numlin::hermitian_sign(ma1);
    r.a2 = numlin::hermitian_sign(ma2);
    if (trajectory) {
      trajectory->push_back(real_trace_product(r.a1, ma1) +
                            real_trace_product(r.a2, ma2));
    }
    const ComplexMatrix nb1 = reduce_right(m, s, r.a1 + r.a2);
    const ComplexMatrix nb2 = reduce_right(m, s, r.a1 - r.a2);
    r.b1 = numlin::hermitian_sign(nb1);
    r.b2 = numlin::hermitian_sign(nb2);
    const double value = real_trace_product(r.b1, nb1) + real_trace_product(r.b2, nb2);
    if (trajectory) trajectory->push_back(value);
    r.iterations = it;
    r.chsh_value = value;
    if (value - previous < tol) {
      r.converged = true;
      break;
    }
    previous = value;
  }
  r.violation_ratio = r.chsh_value / 2.0;
  return r;
}

ChshResult seesaw_chsh(const DensityOperator& rho, const SeesawOptions& opts) {
  const BipartiteShape s = rho.shape();
  if (s.d1 > opts.dim_cap || s.d2 > opts.dim_cap) {
    std::ostringstream os;
    os << "see-saw limited to local dimension " << opts.dim_cap << ", got ("
       << s.d1 << ", " << s.d2 << ")";
    throw Error(ErrorCode::DimensionCap, os.str());
  }
  const std::size_t restarts = std::max<std::size_t>(1, opts.restarts);
  std::vector<ChshResult> runs(restarts);
  parallel_for(restarts, [&](std::size_t k) {
    std::mt19937_64 rng = substream(opts.seed, k);
    ComplexMatrix b1 = random_observable(s.d2, rng);
    ComplexMatrix b2 = random_observable(s.d2, rng);
    runs[k] = seesaw_run(rho, std::move(b1), std::move(b2), opts.tol, opts.max_iters);
    runs[k].restart = k;
  });
  std::size_t best = 0;
  for (std::size_t k = 1; k < restarts; ++k) {
    if (runs[k].chsh_value > runs[best].chsh_value) best = k;
  }
  return runs[best];
}

double horodecki_traceless(const DensityOperator& rho) {
  if (rho.shape().d1 != 2 || rho.shape().d2 != 2) {
    throw Error(ErrorCode::NotTwoQubit, "Horodecki oracle needs a two-qubit state");
  }
  const Complex i(0.0, 1.0);
  std::array<ComplexMatrix, 3> pauli;
  pauli[0] = ComplexMatrix(2, 2);
  pauli[0] << 0, 1, 1, 0;
  pauli[1] = ComplexMatrix(2, 2);
  pauli[1] << 0, -i, i, 0;
  pauli[2] = ComplexMatrix(2, 2);
  pauli[2] << 1, 0, 0, -1;
  Eigen::Matrix3d t;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      t(a, b) = (rho.matrix() * numlin::kron(pauli[a], pauli[b])).trace().real();
  const Eigen::Matrix3d ttt = t.transpose() * t;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(ttt, Eigen::EigenvaluesOnly);
  const Eigen::Vector3d u = es.eigenvalues();  // ascending
  return 2.0 * std::sqrt(std::max(0.0, u(2) + u(1)));
}

double horodecki_oracle(const DensityOperator& rho) {
  return std::max(2.0, horodecki_traceless(rho));
}

ComplexMatrix CompressedState::decompress() const {
  return left * state.amplitudes() * right.transpose();
}

CompressedState schmidt_compress(const PureBipartiteState& psi) {
  const SchmidtSpectrum spec = schmidt_decompose(psi);
  if (spec.rank < 2) {
    throw Error(ErrorCode::RankTooSmall, "compression needs Schmidt rank >= 2");
  }
  const double weight = spec.eigenvalues[0] + spec.eigenvalues[1];
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = spec.coefficients[0];
  a(1, 1) = spec.coefficients[1];
  return CompressedState{PureBipartiteState::normalized(a),
                         spec.left_basis.leftCols(2), spec.right_basis.leftCols(2),
                         weight};
}

double lift_compressed_ratio(const CompressedState& c, double r) {
  return c.weight * r + (1.0 - c.weight);
}

}  // namespace belgauge
