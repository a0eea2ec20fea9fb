#include "srcop.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "error.hpp"
#include "parallel.hpp"

namespace belgauge {
namespace {

std::size_t saturating_pow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > std::numeric_limits<std::size_t>::max() / base)
      return std::numeric_limits<std::size_t>::max();
    out *= base;
  }
  return out;
}

// sum_{a,b} t(a,b) op(b,a)
Complex trace_of_product(const ComplexMatrix& t, const ComplexMatrix& op) {
  return (t.array() * op.transpose().array()).sum();
}

// Traces `t` on H1^{(x) s1} (x) H2^{(x) s2} over every slot except left slot
// p and right slot q, leaving an operator on H1 (x) H2. Equals the map
// X1 (x) X2 -> tr[t (1..X1..1 (x) 1..X2..1)] in matrix form.
ComplexMatrix reduce_to_slot_pair(const ComplexMatrix& t, BipartiteShape shape,
                                  std::size_t s1, std::size_t s2, std::size_t p,
                                  std::size_t q) {
  const std::size_t d1 = shape.d1, d2 = shape.d2;
  // Flat-index strides of the two kept slots; slots run left to right.
  const std::size_t stride_q = saturating_pow(d2, s2 - 1 - q);
  const std::size_t stride_p = saturating_pow(d1, s1 - 1 - p) * saturating_pow(d2, s2);
  const auto n = static_cast<std::size_t>(t.rows());
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(d1 * d2),
                                          static_cast<Eigen::Index>(d1 * d2));
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t a = (r / stride_p) % d1;
    const std::size_t b = (r / stride_q) % d2;
    const std::size_t base = r - a * stride_p - b * stride_q;
    for (std::size_t a1 = 0; a1 < d1; ++a1)
      for (std::size_t b1 = 0; b1 < d2; ++b1) {
        const std::size_t c = base + a1 * stride_p + b1 * stride_q;
        out(static_cast<Eigen::Index>(a * d2 + b), static_cast<Eigen::Index>(a1 * d2 + b1)) +=
            t(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      }
  }
  return out;
}

}  // namespace

ComplexMatrix polarization_block(const ComplexMatrix& basis, std::size_t k,
                                 std::size_t k1, std::size_t s) {
  const auto n = static_cast<std::size_t>(basis.cols());
  if (k >= n || k1 >= n) {
    std::ostringstream os;
    os << "polarization_block: indices (" << k << ", " << k1
       << ") out of range for " << n << " basis vectors";
    throw Error(ErrorCode::IndexOutOfRange, os.str());
  }
  if (s == 0) {
    throw Error(ErrorCode::InvalidArgument, "polarization_block: s must be >= 1");
  }
  const ComplexVector ek = basis.col(k);
  if (k == k1) return numlin::kron_power(ek * ek.adjoint(), s);

  const ComplexVector ek1 = basis.col(k1);
  const double denom = std::ldexp(1.0, static_cast<int>(s) + 1);
  const std::array<Complex, 4> phases{Complex(1, 0), Complex(-1, 0),
                                      Complex(0, 1), Complex(0, -1)};
  const auto side = static_cast<Eigen::Index>(saturating_pow(basis.rows(), s));
  ComplexMatrix out = ComplexMatrix::Zero(side, side);
  for (const Complex p : phases) {
    const ComplexVector v = ek + p * ek1;
    out += (p / denom) * numlin::kron_power(v * v.adjoint(), s);
  }
  return out;
}

std::size_t dilated_dimension(BipartiteShape shape, DilatedSite site,
                              std::size_t s) {
  const std::size_t dilated = site == DilatedSite::Left ? shape.d1 : shape.d2;
  const std::size_t other = site == DilatedSite::Left ? shape.d2 : shape.d1;
  const std::size_t p = saturating_pow(dilated, s);
  if (other != 0 && p > std::numeric_limits<std::size_t>::max() / other)
    return std::numeric_limits<std::size_t>::max();
  return p * other;
}

SourceOperator build_source_operator(const SchmidtSpectrum& spec,
                                     DilatedSite site, std::size_t s,
                                     std::size_t cap) {
  if (s == 0) {
    throw Error(ErrorCode::InvalidArgument, "settings count s must be >= 1");
  }
  if (!spec.has_bases() || !spec.shape) {
    throw Error(ErrorCode::InvalidArgument,
                "source operator needs a finite-dimensional Schmidt basis");
  }
  const BipartiteShape shape = *spec.shape;
  const std::size_t side = dilated_dimension(shape, site, s);
  if (side > cap) {
    std::ostringstream os;
    os << "dilated dimension " << side << " = "
       << (site == DilatedSite::Left ? shape.d1 : shape.d2) << "^" << s
       << " * " << (site == DilatedSite::Left ? shape.d2 : shape.d1)
       << " exceeds the cap " << cap;
    throw Error(ErrorCode::DimensionCap, os.str());
  }

  const ComplexMatrix& dilated_basis =
      site == DilatedSite::Left ? spec.left_basis : spec.right_basis;
  const ComplexMatrix& single_basis =
      site == DilatedSite::Left ? spec.right_basis : spec.left_basis;

  ComplexMatrix t = ComplexMatrix::Zero(side, side);
  for (std::size_t k = 0; k < spec.rank; ++k) {
    for (std::size_t k1 = 0; k1 < spec.rank; ++k1) {
      const double w = spec.coefficients[k] * spec.coefficients[k1];
      const ComplexMatrix block = polarization_block(dilated_basis, k, k1, s);
      const ComplexMatrix outer =
          single_basis.col(k) * single_basis.col(k1).adjoint();
      t += w * (site == DilatedSite::Left ? numlin::kron(block, outer)
                                          : numlin::kron(outer, block));
    }
  }
  SourceOperator out;
  out.matrix = std::move(t);
  out.s1 = site == DilatedSite::Left ? s : 1;
  out.s2 = site == DilatedSite::Right ? s : 1;
  out.shape = shape;
  return out;
}

double source_trace_norm_bound(const SchmidtSpectrum& spec) {
  const double sum = spec.sum_coefficients();
  return 2.0 * sum * sum - 1.0;
}

ComplexMatrix random_bounded_operator(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix x(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      x(i, j) = Complex(re, im);
    }
  const double norm = numlin::spectral_norm(x);
  if (norm > 1.0) x /= norm;
  return x;
}

DilationReport verify_dilation(const SourceOperator& t,
                               const DensityOperator& rho, std::size_t trials,
                               std::uint64_t seed, double tol) {
  const BipartiteShape shape = rho.shape();
  const std::size_t expected = saturating_pow(shape.d1, t.s1) *
                               saturating_pow(shape.d2, t.s2);
  if (!(t.shape == shape) ||
      static_cast<std::size_t>(t.matrix.rows()) != expected ||
      t.matrix.rows() != t.matrix.cols()) {
    throw Error(ErrorCode::ShapeMismatch,
                "verify_dilation: source operator does not match the state's shape");
  }

  // tr[T (1..X1..1 (x) 1..X2..1)] is linear in X1 (x) X2, so it is evaluated
  // through the operator reduced onto each slot pair.
  std::vector<ComplexMatrix> reduced;
  for (std::size_t k1 = 0; k1 < t.s1; ++k1)
    for (std::size_t k2 = 0; k2 < t.s2; ++k2)
      reduced.push_back(reduce_to_slot_pair(t.matrix, shape, t.s1, t.s2, k1, k2));

  std::vector<double> worst(trials, 0.0);
  parallel_for(trials, [&](std::size_t trial) {
    std::mt19937_64 rng = substream(seed, trial);
    const ComplexMatrix x1 = random_bounded_operator(shape.d1, rng);
    const ComplexMatrix x2 = random_bounded_operator(shape.d2, rng);
    const ComplexMatrix x = numlin::kron(x1, x2);
    const Complex target = trace_of_product(rho.matrix(), x);
    double w = 0.0;
    for (const ComplexMatrix& red : reduced) {
      w = std::max(w, std::abs(trace_of_product(red, x) - target));
    }
    worst[trial] = w;
  });

  DilationReport r;
  r.s1 = t.s1;
  r.s2 = t.s2;
  r.trials = trials;
  r.tolerance = tol;
  for (double w : worst) r.max_residual = std::max(r.max_residual, w);
  r.trace = t.matrix.trace().real();
  r.trace_norm = numlin::trace_norm_hermitian(t.matrix);
  r.scale = std::max(1.0, r.trace_norm);
  r.pass = r.max_residual <= tol * r.scale;
  return r;
}

}  // namespace belgauge
