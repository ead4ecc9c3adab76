#include "cps/observables.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cps {
namespace {

void require_modulus(double eps_abs, const char* who) {
  if (!(eps_abs >= 0.0 && eps_abs < 1.0))
    throw std::domain_error(std::string(who) + ": eps_abs must lie in [0, 1)");
}

void require_nbar(double n_bar, const char* who) {
  if (!(n_bar >= 0.0) || !std::isfinite(n_bar))
    throw std::domain_error(std::string(who) + ": n_bar must be finite and >= 0");
}

}  // namespace

QuadratureMeans quadrature_means(const PhaseState& state, const TruncationPolicy& policy) {
  const SeriesResult r1 = s1(state.eps_abs(), policy);
  const double amp = std::sqrt(2.0) * r1.value;
  return QuadratureMeans{amp * std::cos(state.phase()), amp * std::sin(state.phase()),
                         r1.converged, r1.terms_used};
}

QuadratureStats quadrature_stats(const PhaseState& state, const TruncationPolicy& policy) {
  const SeriesResult r1 = s1(state.eps_abs(), policy);
  const SeriesResult r2 = s2(state.eps_abs(), policy);
  const double big_n = state.mean_n() + 0.5;
  const double s1sq = r1.value * r1.value;
  const double aniso = r2.value - s1sq;
  const double c2 = std::cos(2.0 * state.phase());
  const double s2f = std::sin(2.0 * state.phase());

  QuadratureStats st;
  const double amp = std::sqrt(2.0) * r1.value;
  st.mean_x = amp * std::cos(state.phase());
  st.mean_p = amp * std::sin(state.phase());
  st.var_x = big_n - s1sq + aniso * c2;
  st.var_p = big_n - s1sq - aniso * c2;
  st.cov_xp = s2f * aniso;
  st.rs_product = st.var_x * st.var_p - st.cov_xp * st.cov_xp;
  st.radius_sq = st.mean_x * st.mean_x + st.mean_p * st.mean_p;
  st.converged = r1.converged && r2.converged;
  st.terms_used = std::max(r1.terms_used, r2.terms_used);
  return st;
}

SeriesResult sigma_x_min(double eps_abs, const TruncationPolicy& policy) {
  require_modulus(eps_abs, "sigma_x_min");
  const double e2 = eps_abs * eps_abs;
  const double pref = (1.0 - e2) * e2;
  auto term = [=](std::size_t n) {
    const double dn = static_cast<double>(n);
    const double rn = std::sqrt(dn + 1.0);
    return pref * std::pow(e2, dn) * rn / (rn + std::sqrt(dn + 2.0));
  };
  // summand factor sqrt(n+1)/(sqrt(n+1)+sqrt(n+2)) < 1/2, so the tail is
  // below the geometric remainder |eps|^{2N+4} / 2
  auto tail = [=](std::size_t n) {
    return 0.5 * std::pow(e2, static_cast<double>(n) + 2.0);
  };
  SeriesResult r = sum_series(term, policy, tail);
  r.value = 0.5 - r.value;
  return r;
}

double sigma_x_min_approx(double eps_abs) {
  require_modulus(eps_abs, "sigma_x_min_approx");
  const double one_minus = 1.0 - eps_abs * eps_abs;
  return 0.5 * one_minus * (1.0 - 0.25 * std::log(one_minus));
}

double sigma_x_sqzvac(double n_bar) {
  require_nbar(n_bar, "sigma_x_sqzvac");
  return 1.0 / (2.0 * (2.0 * n_bar + 1.0 + 2.0 * std::sqrt(n_bar * (n_bar + 1.0))));
}

double sigma_x_sqzvac_large(double n_bar) {
  require_nbar(n_bar, "sigma_x_sqzvac_large");
  return 1.0 / (4.0 * (1.0 + 2.0 * n_bar));
}

SeriesResult radius_R(double eps_abs, const TruncationPolicy& policy) {
  const SeriesResult r1 = s1(eps_abs, policy);
  SeriesResult r;
  r.value = 2.0 * r1.value * r1.value;
  r.terms_used = r1.terms_used;
  // |2 a^2 - 2 b^2| <= 2 |a-b| (|a| + |b|) with |a-b| <= tail of S1
  r.tail_estimate = 2.0 * r1.tail_estimate * (2.0 * std::abs(r1.value) + r1.tail_estimate);
  r.converged = r1.converged;
  return r;
}

SeriesResult radius_R(const PhaseState& state, const TruncationPolicy& policy) {
  return radius_R(state.eps_abs(), policy);
}

double radius_R_interp(double n_bar, double eta) {
  require_nbar(n_bar, "radius_R_interp");
  return n_bar * (2.0 + eta * n_bar) / (1.0 + n_bar);
}

RsProduct rs_product(const PhaseState& state, const TruncationPolicy& policy) {
  const SeriesResult r1 = s1(state.eps_abs(), policy);
  const SeriesResult r2 = s2(state.eps_abs(), policy);
  const SeriesResult sg = sigma_x_min(state.eps_abs(), policy);
  const double big_n = state.mean_n() + 0.5;
  const double s1sq = r1.value * r1.value;

  RsProduct d;
  // factored arrangement of the difference of squares; (N - S1^2) and
  // (S2 - S1^2) agree to many digits at large occupation, so the expanded
  // form would lose ~4 digits to cancellation there
  d.value = (big_n - r2.value) * (big_n + r2.value - 2.0 * s1sq);
  d.via_min_variance = sg.value * (2.0 * big_n - sg.value - 2.0 * s1sq);
  d.converged = r1.converged && r2.converged && sg.converged;
  d.terms_used = std::max({r1.terms_used, r2.terms_used, sg.terms_used});
  return d;
}

double rs_product_approx(double n_bar, double eta, RsApproxVariant variant) {
  require_nbar(n_bar, "rs_product_approx");
  const double log_term = 0.25 * std::log1p(n_bar);
  if (variant == RsApproxVariant::simplified)
    return 0.5 * (2.0 - eta) * (1.0 + log_term);
  const double np1 = 1.0 + n_bar;
  return (1.0 + log_term) / (4.0 * np1 * np1) *
         (2.0 * (2.0 - eta) * n_bar * n_bar + 1.0 + 2.0 * n_bar - log_term);
}

double sigma_x_phi0_approx(double n_bar, double eta) {
  require_nbar(n_bar, "sigma_x_phi0_approx");
  const double log_term = 0.25 * std::log1p(n_bar);
  return (2.0 * (2.0 - eta) * n_bar * n_bar + 1.0 + 2.0 * n_bar - log_term) /
         (2.0 * (1.0 + n_bar));
}

EtaFit fit_eta(double n_min, double n_max, std::size_t n_points, const TruncationPolicy& policy) {
  if (!(n_min >= 0.0) || !(n_max > n_min))
    throw std::invalid_argument("fit_eta: need 0 <= n_min < n_max");
  if (n_points < 2) throw std::invalid_argument("fit_eta: need at least 2 points");

  Eigen::VectorXd ns(static_cast<Eigen::Index>(n_points));
  Eigen::VectorXd rs(static_cast<Eigen::Index>(n_points));
  bool ok = true;
  const double step = (n_max - n_min) / static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double nb = n_min + step * static_cast<double>(i);
    const SeriesResult r = radius_R(eps_from_mean_n(nb), policy);
    ns(static_cast<Eigen::Index>(i)) = nb;
    rs(static_cast<Eigen::Index>(i)) = r.value;
    ok = ok && r.converged;
  }

  Eigen::MatrixXd design(ns.size(), 2);
  design.col(0) = ns;
  design.col(1).setOnes();
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rs);

  EtaFit fit;
  fit.eta = coef(0);
  fit.n_min = n_min;
  fit.n_max = n_max;
  fit.points = n_points;
  fit.residual = std::sqrt((rs - design * coef).squaredNorm() / static_cast<double>(n_points));
  fit.converged = ok;
  return fit;
}

double thermal_fidelity(double eps_abs) {
  require_modulus(eps_abs, "thermal_fidelity");
  const double e2 = eps_abs * eps_abs;
  return (1.0 - e2) / (1.0 + e2);
}

double thermal_fidelity_from_mean_n(double n_bar) {
  require_nbar(n_bar, "thermal_fidelity_from_mean_n");
  return 1.0 / (2.0 * n_bar + 1.0);
}

double thermal_variance(double n_bar) {
  require_nbar(n_bar, "thermal_variance");
  return n_bar + 0.5;
}

QuadratureStats coherent_stats(std::complex<double> alpha) {
  QuadratureStats st;
  st.mean_x = std::sqrt(2.0) * alpha.real();
  st.mean_p = std::sqrt(2.0) * alpha.imag();
  st.var_x = 0.5;
  st.var_p = 0.5;
  st.cov_xp = 0.0;
  st.rs_product = 0.25;
  st.radius_sq = st.mean_x * st.mean_x + st.mean_p * st.mean_p;
  st.converged = true;
  st.terms_used = 0;
  return st;
}

}  // namespace cps
