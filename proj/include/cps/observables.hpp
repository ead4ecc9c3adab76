// Quadrature statistics of coherent phase states: means, (co)variances,
// squeezing, the invariant uncertainty product D, closed-form approximations,
// and reference values for coherent / thermal / squeezed-vacuum states.
#pragma once

#include <complex>
#include <cstddef>

#include "cps/phase_state.hpp"
#include "cps/series.hpp"
#include "cps/truncation.hpp"

namespace cps {

/// Default slope of R = <x>^2 + <p>^2 versus <n> in the large-<n> regime.
/// Approximation helpers take eta explicitly; fit_eta recomputes it.
inline constexpr double kDefaultEta = 1.59;

struct QuadratureMeans {
  double mean_x = 0.0;
  double mean_p = 0.0;
  bool converged = true;
  std::size_t terms_used = 0;
};

/// Full second-order quadrature data for one state.
/// rs_product = var_x*var_p - cov_xp^2, radius_sq = mean_x^2 + mean_p^2,
/// both stored exactly as computed from the other fields.
struct QuadratureStats {
  double mean_x = 0.0;
  double mean_p = 0.0;
  double var_x = 0.0;
  double var_p = 0.0;
  double cov_xp = 0.0;
  double rs_product = 0.0;
  double radius_sq = 0.0;
  bool converged = true;
  std::size_t terms_used = 0;
};

/// Robertson-Schrodinger product computed along two algebraically independent
/// routes: value uses (N-S2)(N+S2-2 S1^2) (the factored arrangement of
/// (N-S1^2)^2 - (S2-S1^2)^2), via_min_variance uses
/// sigma_min * (2N - sigma_min - R) with sigma_min from its own series.
struct RsProduct {
  double value = 0.0;
  double via_min_variance = 0.0;
  bool converged = true;
  std::size_t terms_used = 0;
};

enum class RsApproxVariant { full, simplified };

struct EtaFit {
  double eta = 0.0;
  double n_min = 0.0;
  double n_max = 0.0;
  double residual = 0.0;  // rms deviation from the fitted line
  std::size_t points = 0;
  bool converged = true;
};

/// <x> = sqrt(2) cos(phi) S1, <p> = sqrt(2) sin(phi) S1.
QuadratureMeans quadrature_means(const PhaseState& state, const TruncationPolicy& policy);

/// Means plus variances sigma_{x,p} = N - S1^2 +/- (S2 - S1^2) cos(2 phi)
/// and covariance sin(2 phi)(S2 - S1^2), with N = <n> + 1/2.
QuadratureStats quadrature_stats(const PhaseState& state, const TruncationPolicy& policy);

/// Minimal coordinate variance sigma_x at phi = pi/2, summed from the
/// dedicated series 1/2 - (1-|eps|^2)|eps|^2 sum_n |eps|^{2n} sqrt(n+1)/(sqrt(n+1)+sqrt(n+2)).
/// Independent of quadrature_stats; the two agree to ~1e-12.
SeriesResult sigma_x_min(double eps_abs, const TruncationPolicy& policy);

/// Closed-form approximation (1/2)(1-|eps|^2)[1 - (1/4) ln(1-|eps|^2)].
double sigma_x_min_approx(double eps_abs);

/// Squeezed-vacuum variance with the same mean occupation:
/// 1 / (2 [2 n_bar + 1 + 2 sqrt(n_bar (n_bar+1))]).
double sigma_x_sqzvac(double n_bar);

/// Large-n_bar simplification 1 / (4 (1 + 2 n_bar)).
double sigma_x_sqzvac_large(double n_bar);

/// R = <x>^2 + <p>^2 = 2 S1^2; phase independent.
SeriesResult radius_R(double eps_abs, const TruncationPolicy& policy);
SeriesResult radius_R(const PhaseState& state, const TruncationPolicy& policy);

/// Interpolation n_bar (2 + eta n_bar) / (1 + n_bar) between R ~ 2 n_bar
/// (small n_bar) and R ~ eta n_bar (large n_bar).
double radius_R_interp(double n_bar, double eta = kDefaultEta);

/// Invariant uncertainty product D = sigma_x sigma_p - sigma_xp^2, via both
/// algebraic routes (see RsProduct). Phase independent.
RsProduct rs_product(const PhaseState& state, const TruncationPolicy& policy);

/// Closed-form approximations of D as a function of the mean occupation.
/// full reproduces D = 1/4 at n_bar = 0; simplified is
/// ((2-eta)/2) [1 + (1/4) ln(1 + n_bar)], valid for n_bar >> 1.
double rs_product_approx(double n_bar, double eta, RsApproxVariant variant);

/// Approximate coordinate variance at phi = 0:
/// [2(2-eta) n_bar^2 + 1 + 2 n_bar - (1/4) ln(1+n_bar)] / (2 (1+n_bar)).
double sigma_x_phi0_approx(double n_bar, double eta = kDefaultEta);

/// Ordinary least squares slope of exact R versus n_bar over n_points
/// equally spaced samples of [n_min, n_max]. Intercept is fitted, not forced.
EtaFit fit_eta(double n_min, double n_max, std::size_t n_points, const TruncationPolicy& policy);

/// Overlap <eps| rho_thermal |eps> with the thermal state of equal mean
/// occupation: (1-|eps|^2)/(1+|eps|^2). Equals the thermal purity.
double thermal_fidelity(double eps_abs);

/// Same quantity parametrized by the mean occupation: 1 / (2 n_bar + 1).
double thermal_fidelity_from_mean_n(double n_bar);

/// Thermal-state variance N = n_bar + 1/2 (both quadratures, zero covariance).
double thermal_variance(double n_bar);

/// Reference stats of a standard coherent state |alpha>: variances 1/2,
/// zero covariance, D = 1/4, means sqrt(2) (Re alpha, Im alpha).
QuadratureStats coherent_stats(std::complex<double> alpha);

}  // namespace cps
