#pragma once

// Holographic reduced representation algebra on dense Eigen vectors.
//
// Vectors are plain Eigen column vectors templated on the scalar type; every
// operation is a free function accepting any Eigen expression. The DFT is
// unnormalized in the forward direction and carries 1/D on the inverse, so
// binding is exactly circular convolution.

#include <cmath>
#include <complex>
#include <cstdint>
#include <iterator>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include "hdc/error.hpp"
#include "hdc/random.hpp"

namespace hdc {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Spectrum = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

using HrrVector = Vector<double>;

template <typename Scalar>
struct SimilarityThresholds {
  Scalar weak;
  Scalar strong;
};

// How random_unitary fills the self-conjugate bins (frequency 0 and, for even
// D, frequency D/2). Those bins must be real, so their unit-magnitude value is
// +1 or -1. With -1 the fractional powers of the bin are complex and the real
// part taken by power() breaks exponent additivity; `positive` avoids that.
enum class EdgeBins { positive, random_sign };

namespace detail {

template <typename Scalar>
Eigen::FFT<Scalar>& fft_engine() {
  // Eigen caches twiddle plans inside the engine; one per thread.
  thread_local Eigen::FFT<Scalar> engine;
  return engine;
}

inline void require_dim(Eigen::Index dim) {
  if (dim < 2) throw InvalidDimension("vector dimension must be >= 2, got " + std::to_string(dim));
}

template <typename A, typename B>
void require_same_dim(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.size() != b.size())
    throw DimensionMismatch("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
}

template <typename Scalar>
bool is_integral(Scalar p) {
  return std::abs(p) < Scalar(9.0e15) && std::nearbyint(p) == p;
}

template <typename Scalar>
std::complex<Scalar> integer_power(std::complex<Scalar> c, long long n) {
  const bool negative = n < 0;
  unsigned long long e = negative ? 0ULL - static_cast<unsigned long long>(n)
                                  : static_cast<unsigned long long>(n);
  std::complex<Scalar> result{1, 0};
  while (e != 0) {
    if (e & 1ULL) result *= c;
    c *= c;
    e >>= 1;
  }
  return negative ? std::complex<Scalar>{1, 0} / result : result;
}

}  // namespace detail

/// Forward DFT (unnormalized) of a real vector.
template <typename Derived>
Spectrum<typename Derived::Scalar> dft(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  const Spectrum<Scalar> in = v.template cast<std::complex<Scalar>>();
  Spectrum<Scalar> out(in.size());
  detail::fft_engine<Scalar>().fwd(out.data(), in.data(), in.size());
  return out;
}

/// Real part of the inverse DFT (scaled by 1/D).
template <typename Scalar>
Vector<Scalar> real_idft(const Spectrum<Scalar>& s) {
  Spectrum<Scalar> out(s.size());
  detail::fft_engine<Scalar>().inv(out.data(), s.data(), s.size());
  return out.real();
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& v) {
  return v.allFinite();
}

/// Unit vector uniform on the sphere: i.i.d. standard normals, normalized.
template <typename Scalar = double>
Vector<Scalar> random_unit(Eigen::Index dim, RandomStream& rng) {
  detail::require_dim(dim);
  Vector<Scalar> v(dim);
  Scalar norm2 = 0;
  do {
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = rng.normal<Scalar>();
    norm2 = v.squaredNorm();
  } while (norm2 == Scalar(0));
  return v / std::sqrt(norm2);
}

/// Real vector whose Fourier coefficients all have magnitude 1, with phases
/// drawn uniformly from (-pi, pi] and Hermitian symmetry enforced.
template <typename Scalar = double>
Vector<Scalar> random_unitary(Eigen::Index dim, RandomStream& rng,
                              EdgeBins edges = EdgeBins::positive) {
  detail::require_dim(dim);
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  auto edge = [&] {
    if (edges == EdgeBins::positive) return std::complex<Scalar>{1, 0};
    return std::complex<Scalar>{rng.coin() ? Scalar(1) : Scalar(-1), 0};
  };
  Spectrum<Scalar> s(dim);
  s[0] = edge();
  const Eigen::Index half = (dim - 1) / 2;
  for (Eigen::Index k = 1; k <= half; ++k) {
    const Scalar phase = pi - rng.uniform<Scalar>(0, 2 * pi);
    s[k] = std::polar(Scalar(1), phase);
    s[dim - k] = std::conj(s[k]);
  }
  if (dim % 2 == 0) s[dim / 2] = edge();
  return real_idft(s);
}

/// True when every Fourier coefficient has magnitude 1 within `tol`.
template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& v, typename Derived::Scalar tol = 1e-8) {
  const auto s = dft(v);
  return ((s.array().abs() - 1).abs() <= tol).all();
}

/// Binding by circular convolution, computed in the frequency domain.
template <typename A, typename B>
Vector<typename A::Scalar> bind(const Eigen::MatrixBase<A>& v, const Eigen::MatrixBase<B>& w) {
  detail::require_same_dim(v, w);
  using Scalar = typename A::Scalar;
  const Spectrum<Scalar> product = dft(v).cwiseProduct(dft(w));
  return real_idft(product);
}

/// Componentwise sum of a non-empty range of equal-length vectors. The result
/// is not normalized.
template <typename Range>
auto superpose(const Range& vs) {
  using Elem = std::remove_cvref_t<decltype(*std::begin(vs))>;
  using Scalar = typename Elem::Scalar;
  auto it = std::begin(vs);
  const auto end = std::end(vs);
  if (it == end) throw InvalidArgument("superpose: empty sequence");
  Vector<Scalar> sum = *it;
  for (++it; it != end; ++it) {
    detail::require_same_dim(sum, *it);
    sum += *it;
  }
  return sum;
}

/// Convolutive power: every Fourier coefficient raised to `p` along the
/// principal branch, real part of the inverse transform returned.
///
/// Integer exponents are accepted for any vector (negative ones need a
/// spectrum without zeros). Non-integer exponents are only defined here for
/// unitary vectors; anything else throws SingularSpectrum.
template <typename Derived>
Vector<typename Derived::Scalar> power(const Eigen::MatrixBase<Derived>& v,
                                       typename Derived::Scalar p) {
  using Scalar = typename Derived::Scalar;
  using Complex = std::complex<Scalar>;
  if (!std::isfinite(p)) throw InvalidArgument("power: exponent must be finite");
  Spectrum<Scalar> s = dft(v);

  if (detail::is_integral(p)) {
    const auto n = static_cast<long long>(p);
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      if (n < 0 && s[k] == Complex{0, 0})
        throw SingularSpectrum("power: negative exponent of a spectrum with a zero coefficient");
      s[k] = detail::integer_power(s[k], n);
    }
    return real_idft(s);
  }

  constexpr Scalar tol = 1e-8;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    const Scalar mag = std::abs(s[k]);
    if (mag == Scalar(0))
      throw SingularSpectrum("power: fractional exponent of a spectrum with a zero coefficient");
    if (std::abs(mag - 1) > tol)
      throw SingularSpectrum("power: fractional exponent requires a unitary vector");
  }
  for (Eigen::Index k = 0; k < s.size(); ++k) s[k] = std::exp(p * std::log(s[k]));
  return real_idft(s);
}

/// Index reversal v[-k mod D]; the approximate inverse under binding, exact
/// for unitary vectors.
template <typename Derived>
Vector<typename Derived::Scalar> involution(const Eigen::MatrixBase<Derived>& v) {
  const Eigen::Index d = v.size();
  Vector<typename Derived::Scalar> out(d);
  if (d == 0) return out;
  out[0] = v[0];
  for (Eigen::Index k = 1; k < d; ++k) out[k] = v[d - k];
  return out;
}

/// Raw dot product.
template <typename A, typename B>
typename A::Scalar similarity(const Eigen::MatrixBase<A>& v, const Eigen::MatrixBase<B>& w) {
  detail::require_same_dim(v, w);
  return v.dot(w);
}

/// Dot product of the two vectors after scaling both to unit norm. Returns 0
/// when either vector is zero.
template <typename A, typename B>
typename A::Scalar cosine(const Eigen::MatrixBase<A>& v, const Eigen::MatrixBase<B>& w) {
  detail::require_same_dim(v, w);
  const auto denom = v.norm() * w.norm();
  return denom == 0 ? typename A::Scalar(0) : v.dot(w) / denom;
}

/// Weak (2 sigma) and strong (3 sigma) thresholds, with sigma = 1/sqrt(D).
template <typename Scalar = double>
SimilarityThresholds<Scalar> thresholds(Eigen::Index dim) {
  detail::require_dim(dim);
  const Scalar root = std::sqrt(static_cast<Scalar>(dim));
  return {Scalar(2) / root, Scalar(3) / root};
}

/// The binding identity (1, 0, ..., 0).
template <typename Scalar = double>
Vector<Scalar> identity(Eigen::Index dim) {
  detail::require_dim(dim);
  return Vector<Scalar>::Unit(dim, 0);
}

}  // namespace hdc
