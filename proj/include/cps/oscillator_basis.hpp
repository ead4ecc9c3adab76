// Harmonic-oscillator eigenfunctions phi_n(x) = pi^{-1/4} e^{-x^2/2} H_n(x) / sqrt(2^n n!)
// via the normalized three-term recurrence
//   phi_{n+1} = sqrt(2/(n+1)) x phi_n - sqrt(n/(n+1)) phi_{n-1}.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace cps {

/// Uniform bound on |phi_n(x)|; phi_0(0) = pi^{-1/4} ~ 0.7511 is the maximum.
inline constexpr double kOscillatorBound = 0.8;

/// Streams phi_0(x), phi_1(x), ... in index order.
///
/// The recurrence runs on a mantissa pair with a shared power-of-two offset:
/// for |x| >> 1 the sequence starts around e^{-x^2/2}, far below the double
/// range, and grows back to O(0.1) once n exceeds x^2/2. Rescaling by exact
/// powers of two keeps the recurrence itself full-precision; emitted values
/// whose true magnitude is below the double range come out as 0.
class OscillatorBasis {
 public:
  explicit OscillatorBasis(double x) : x_(x) {
    if (!std::isfinite(x)) throw std::domain_error("OscillatorBasis: x must be finite");
    // log2 of phi_0 = pi^{-1/4} e^{-x^2/2}, split into mantissa and exponent
    const double log2_phi0 =
        -0.25 * std::log2(std::numbers::pi) - x * x / (2.0 * std::numbers::ln2);
    exp2_ = static_cast<std::int64_t>(std::floor(log2_phi0));
    cur_ = std::exp2(log2_phi0 - static_cast<double>(exp2_));
    prev_ = 0.0;
  }

  /// phi_n(x) for the current n, then advances to n+1.
  double next() {
    const double out = scaled_out(cur_);
    const double dn = static_cast<double>(n_);
    const double nxt = std::sqrt(2.0 / (dn + 1.0)) * x_ * cur_ - std::sqrt(dn / (dn + 1.0)) * prev_;
    prev_ = cur_;
    cur_ = nxt;
    ++n_;
    const double mag = std::abs(cur_);
    if (mag > kScaleHigh) {
      cur_ *= kScaleDownFactor;
      prev_ *= kScaleDownFactor;
      exp2_ += kScaleShift;
    } else if (mag < kScaleLow && mag > 0.0 && std::abs(prev_) < kScaleLow) {
      cur_ *= kScaleUpFactor;
      prev_ *= kScaleUpFactor;
      exp2_ -= kScaleShift;
    }
    return out;
  }

  std::uint64_t index() const { return n_; }

 private:
  static constexpr int kScaleShift = 512;
  static constexpr double kScaleHigh = 1.3407807929942597e154;   // 2^512
  static constexpr double kScaleLow = 7.458340731200207e-155;    // 2^-512
  static constexpr double kScaleDownFactor = kScaleLow;
  static constexpr double kScaleUpFactor = kScaleHigh;

  double scaled_out(double v) const {
    if (v == 0.0) return 0.0;
    if (exp2_ == 0) return v;
    return std::ldexp(v, static_cast<int>(exp2_));
  }

  double x_;
  double cur_;
  double prev_;
  std::int64_t exp2_ = 0;
  std::uint64_t n_ = 0;
};

/// phi_0(x) .. phi_{n_max}(x).
inline std::vector<double> oscillator_eigenfunction_sequence(double x, std::int64_t n_max) {
  if (n_max < 0)
    throw std::invalid_argument("oscillator_eigenfunction_sequence: n_max must be >= 0");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  OscillatorBasis basis(x);
  for (std::int64_t n = 0; n <= n_max; ++n) out.push_back(basis.next());
  return out;
}

}  // namespace cps
