// Coordinate wavefunctions, probability densities, and the Gaussianity measure.
#pragma once

#include <complex>
#include <cstddef>

#include "cps/oscillator_basis.hpp"
#include "cps/phase_state.hpp"
#include "cps/quadrature.hpp"
#include "cps/truncation.hpp"

namespace cps {

/// Standard coherent state |alpha>.
struct CoherentState {
  std::complex<double> alpha;
};

/// One point of a sampled wavefunction; density = re^2 + im^2 exactly.
struct WavefunctionSample {
  double x = 0.0;
  double re = 0.0;
  double im = 0.0;
  double density = 0.0;
};

struct PsiResult {
  std::complex<double> value;
  std::size_t terms_used = 0;
  double tail_estimate = 0.0;
  bool converged = false;
};

/// psi_eps(x) = sqrt(1-|eps|^2) sum_n |eps|^n e^{i n phase} phi_n(x), truncated
/// per policy with tail bound |eps|^{N+1} * 0.8 / (1-|eps|).
PsiResult psi_cps(const PhaseState& state, double x, const TruncationPolicy& policy);

WavefunctionSample sample_cps(const PhaseState& state, double x, const TruncationPolicy& policy);

/// psi_alpha(x) = pi^{-1/4} exp(-x^2/2 + sqrt(2) x alpha - alpha^2/2 - |alpha|^2/2).
std::complex<double> psi_coherent(const CoherentState& cs, double x);

/// Normal density with the given mean and variance.
double gaussian_density(double mean_x, double var_x, double x);

struct GaussianityResult {
  double value = 0.0;
  bool converged = false;
  std::size_t terms_used = 0;
};

/// G = sqrt(2 pi sigma_x) |psi(<x>)|^2; equals 1 for any Gaussian density.
/// <x> and sigma_x come from the quadrature statistics of the same state.
GaussianityResult gaussianity_G(const PhaseState& state, const TruncationPolicy& policy);

enum class PhaseCase { phi_zero, phi_half_pi };

/// Quartic coefficient of the small-|eps| expansion of G.
inline constexpr double kGaussianityQuarticCoeff = 0.017895815727696097;

/// Expansion regime boundary for gaussianity_small_eps.
inline constexpr double kGaussianitySmallEpsLimit = 0.3;

/// Small-|eps| expansion G = 1 + |eps|^4 (3 sqrt(2) - 3 - sqrt(3/2)); the same
/// closed form for both extreme phases. Meaningful for |eps| <= 0.3.
double gaussianity_small_eps(double eps_abs, PhaseCase phase_case);

struct DensityMoments {
  double norm = 0.0;
  double mean_x = 0.0;
  double var_x = 0.0;
  bool converged = false;
};

/// Quadrature oracle: integrates |psi|^2, x |psi|^2, x^2 |psi|^2 over the
/// spec's interval. Flagged unconverged when the wavefunction series flags or
/// the recovered norm misses 1 by more than 1e-8 (insufficient coverage).
DensityMoments density_moments_quadrature(const PhaseState& state, const TruncationPolicy& policy,
                                          const QuadSpec& spec);

}  // namespace cps
