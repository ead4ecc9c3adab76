#include "cps/wavefunction.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cps/observables.hpp"
#include "cps/series.hpp"

namespace cps {
namespace {

constexpr double kPi = std::numbers::pi;
const double kPiQuarterInv = std::pow(kPi, -0.25);

}  // namespace

PsiResult psi_cps(const PhaseState& state, double x, const TruncationPolicy& policy) {
  policy.validate();
  const double eps = state.eps_abs();
  const double phase = state.phase();
  const double prefactor = std::sqrt(1.0 - eps * eps);
  const std::size_t limit =
      policy.mode == TruncationMode::fixed_n ? policy.fixed_terms : policy.max_terms;

  OscillatorBasis basis(x);
  NeumaierSum re, im;
  double weight = 1.0;  // |eps|^n
  std::size_t used = 0;
  double tail = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < limit; ++n) {
    const double phi_n = basis.next();
    const double arg = phase * static_cast<double>(n);
    re.add(weight * std::cos(arg) * phi_n);
    im.add(weight * std::sin(arg) * phi_n);
    weight *= eps;
    used = n + 1;
    if (policy.mode == TruncationMode::adaptive) {
      tail = kOscillatorBound * weight / (1.0 - eps);  // weight is now |eps|^{n+1}
      if (tail <= policy.tail_tol) break;
    }
  }
  if (policy.mode == TruncationMode::fixed_n)
    tail = kOscillatorBound * weight / (1.0 - eps);

  PsiResult out;
  out.value = prefactor * std::complex<double>(re.value(), im.value());
  out.terms_used = used;
  out.tail_estimate = tail;
  out.converged = tail <= policy.tail_tol;
  return out;
}

WavefunctionSample sample_cps(const PhaseState& state, double x, const TruncationPolicy& policy) {
  const PsiResult r = psi_cps(state, x, policy);
  WavefunctionSample s;
  s.x = x;
  s.re = r.value.real();
  s.im = r.value.imag();
  s.density = s.re * s.re + s.im * s.im;
  return s;
}

std::complex<double> psi_coherent(const CoherentState& cs, double x) {
  const std::complex<double> a = cs.alpha;
  const double norm_sq = std::norm(a);
  return kPiQuarterInv *
         std::exp(-0.5 * x * x + std::sqrt(2.0) * x * a - 0.5 * a * a - 0.5 * norm_sq);
}

double gaussian_density(double mean_x, double var_x, double x) {
  if (!(var_x > 0.0)) throw std::domain_error("gaussian_density: var_x must be > 0");
  const double d = x - mean_x;
  return std::exp(-d * d / (2.0 * var_x)) / std::sqrt(2.0 * kPi * var_x);
}

GaussianityResult gaussianity_G(const PhaseState& state, const TruncationPolicy& policy) {
  const QuadratureStats st = quadrature_stats(state, policy);
  const PsiResult psi = psi_cps(state, st.mean_x, policy);
  GaussianityResult g;
  g.value = std::sqrt(2.0 * kPi * st.var_x) * std::norm(psi.value);
  g.converged = st.converged && psi.converged;
  g.terms_used = std::max(st.terms_used, psi.terms_used);
  return g;
}

double gaussianity_small_eps(double eps_abs, PhaseCase /*phase_case*/) {
  if (!(eps_abs >= 0.0 && eps_abs < 1.0))
    throw std::domain_error("gaussianity_small_eps: eps_abs must lie in [0, 1)");
  // identical closed form for both extreme phases; callers should stay within
  // the expansion regime eps_abs <= kGaussianitySmallEpsLimit
  const double e2 = eps_abs * eps_abs;
  return 1.0 + e2 * e2 * kGaussianityQuarticCoeff;
}

DensityMoments density_moments_quadrature(const PhaseState& state, const TruncationPolicy& policy,
                                          const QuadSpec& spec) {
  bool series_ok = true;
  auto density = [&](double x) {
    const PsiResult r = psi_cps(state, x, policy);
    series_ok = series_ok && r.converged;
    return std::norm(r.value);
  };
  const double m0 = integrate([&](double x) { return density(x); }, spec);
  const double m1 = integrate([&](double x) { return x * density(x); }, spec);
  const double m2 = integrate([&](double x) { return x * x * density(x); }, spec);

  DensityMoments m;
  m.norm = m0;
  m.mean_x = m1 / m0;
  m.var_x = m2 / m0 - m.mean_x * m.mean_x;
  m.converged = series_ok && std::abs(m0 - 1.0) <= 1e-8;
  return m;
}

}  // namespace cps
