// Coherent-phase-state parameters and the |eps| <-> mean occupation mapping.
#pragma once

#include <cmath>
#include <stdexcept>

namespace cps {

/// Mean occupation number <n> = |eps|^2 / (1 - |eps|^2) for a modulus in [0, 1).
inline double mean_n(double eps_abs) {
  if (!(eps_abs >= 0.0 && eps_abs < 1.0))
    throw std::domain_error("mean_n: eps_abs must lie in [0, 1)");
  const double e2 = eps_abs * eps_abs;
  return e2 / (1.0 - e2);
}

/// Inverse of mean_n: the modulus whose state has mean occupation n_bar.
inline double eps_from_mean_n(double n_bar) {
  if (!(n_bar >= 0.0) || !std::isfinite(n_bar))
    throw std::domain_error("eps_from_mean_n: n_bar must be finite and >= 0");
  return std::sqrt(n_bar / (1.0 + n_bar));
}

/// Pure state sqrt(1-|eps|^2) * sum_n eps^n |n>, with eps = |eps| e^{i phase}.
///
/// The modulus must satisfy 0 <= |eps| < 1 or the state is not normalizable;
/// construction rejects anything else.
class PhaseState {
 public:
  PhaseState(double eps_abs, double phase) : eps_abs_(eps_abs), phase_(phase) {
    if (!(eps_abs >= 0.0 && eps_abs < 1.0))
      throw std::domain_error("PhaseState: eps_abs must lie in [0, 1)");
    if (!std::isfinite(phase))
      throw std::domain_error("PhaseState: phase must be finite");
  }

  static PhaseState from_mean_n(double n_bar, double phase) {
    return PhaseState(eps_from_mean_n(n_bar), phase);
  }

  double eps_abs() const { return eps_abs_; }
  double eps_sq() const { return eps_abs_ * eps_abs_; }
  double phase() const { return phase_; }
  double mean_n() const { return cps::mean_n(eps_abs_); }

 private:
  double eps_abs_;
  double phase_;
};

}  // namespace cps
