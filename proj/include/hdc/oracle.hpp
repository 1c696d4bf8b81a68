#pragma once

// Brute-force reference implementations used to cross-check the FFT path.
// Nothing here calls into the transform code in algebra.hpp.

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Core>

#include "hdc/algebra.hpp"

namespace hdc::oracle {

/// O(D^2) circular convolution: out[k] = sum_j v[j] * w[(k - j) mod D].
template <typename Scalar>
Vector<Scalar> circular_convolution(const Vector<Scalar>& v, const Vector<Scalar>& w) {
  const Eigen::Index d = v.size();
  Vector<Scalar> out = Vector<Scalar>::Zero(d);
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index j = 0; j < d; ++j) out[k] += v[j] * w[((k - j) % d + d) % d];
  return out;
}

/// O(D^2) forward DFT with the unnormalized convention.
template <typename Scalar>
Spectrum<Scalar> naive_dft(const Vector<Scalar>& v) {
  const Eigen::Index d = v.size();
  constexpr Scalar two_pi = 2 * std::numbers::pi_v<Scalar>;
  Spectrum<Scalar> out(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    std::complex<Scalar> acc{0, 0};
    for (Eigen::Index t = 0; t < d; ++t) {
      const Scalar angle = -two_pi * static_cast<Scalar>((k * t) % d) / static_cast<Scalar>(d);
      acc += v[t] * std::polar(Scalar(1), angle);
    }
    out[k] = acc;
  }
  return out;
}

/// O(D^2) inverse DFT (1/D scaling), real part.
template <typename Scalar>
Vector<Scalar> naive_real_idft(const Spectrum<Scalar>& s) {
  const Eigen::Index d = s.size();
  constexpr Scalar two_pi = 2 * std::numbers::pi_v<Scalar>;
  Vector<Scalar> out(d);
  for (Eigen::Index t = 0; t < d; ++t) {
    std::complex<Scalar> acc{0, 0};
    for (Eigen::Index k = 0; k < d; ++k) {
      const Scalar angle = two_pi * static_cast<Scalar>((k * t) % d) / static_cast<Scalar>(d);
      acc += s[k] * std::polar(Scalar(1), angle);
    }
    out[t] = acc.real() / static_cast<Scalar>(d);
  }
  return out;
}

/// Convolutive power computed directly from spectral phases of a unitary
/// vector: each coefficient e^{i theta} becomes e^{i p theta}.
template <typename Scalar>
Vector<Scalar> unitary_power_from_phases(const Vector<Scalar>& u, Scalar p) {
  Spectrum<Scalar> s = naive_dft(u);
  for (Eigen::Index k = 0; k < s.size(); ++k) s[k] = std::polar(Scalar(1), p * std::arg(s[k]));
  return naive_real_idft(s);
}

}  // namespace hdc::oracle
