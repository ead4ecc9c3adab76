#include "cps/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "cps/parallel.hpp"
#include "cps/series.hpp"
#include "cps/wavefunction.hpp"

namespace cps {
namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// Normalized-row recurrence shared by the symbol and the double sum. With
//   C_mu = e^{-b^2} (s b)^lam / sqrt(lam!) * sqrt(mu!/(mu+lam)!) L_mu^lam(2 b^2)
// (s = sqrt(2) eps), the three-term Laguerre recurrence becomes
//   sqrt((mu+1)(mu+lam+1)) C_{mu+1} = (2 mu + lam + 1 - x) C_mu - sqrt(mu(mu+lam)) C_{mu-1}
// and every C_mu is bounded by eps^lam, so the loop never overflows.
double row_start(double s_times_b, double b, int lam) {
  double base = std::exp(-b * b);
  for (int j = 1; j <= lam; ++j) base *= s_times_b / std::sqrt(static_cast<double>(j));
  return base;
}

double next_row_element(int mu, int lam, double x, double c_cur, double c_prev) {
  const double dmu = static_cast<double>(mu);
  const double dlam = static_cast<double>(lam);
  return ((2.0 * dmu + dlam + 1.0 - x) * c_cur - std::sqrt(dmu * (dmu + dlam)) * c_prev) /
         std::sqrt((dmu + 1.0) * (dmu + 1.0 + dlam));
}

struct W2Result {
  double value = 0.0;
  bool converged = true;
  int mu_used = 0;
  int lambda_used = 0;
};

W2Result w2_sum(double eps, double phase_minus_chi, double b, const Wigner2dPolicy& pol) {
  const double e2 = eps * eps;
  const double x = 2.0 * b * b;
  const double srt = kSqrt2 * eps * b;
  const bool adaptive = pol.mode == Wigner2dMode::adaptive;
  const double mu_tail_pref = 1.0 / (1.0 - e2);
  const double lam_peak = 2.0 * e2 * b * b;  // row prefactor grows up to here

  double base = std::exp(-b * b);
  double pow_lam = 1.0;  // eps^lam
  NeumaierSum total;
  W2Result out;
  bool mu_ok_all = true;
  bool lambda_stopped = false;
  int quiet_rows = 0;

  for (int lam = 1; lam <= pol.lambda_max; ++lam) {
    base *= srt / std::sqrt(static_cast<double>(lam));
    pow_lam *= eps;
    out.lambda_used = lam;

    double c_prev = 0.0;
    double c_cur = base;
    NeumaierSum row;
    row.add(c_cur);
    double row_max = std::abs(c_cur);
    double w = 1.0;  // (-e2)^mu
    bool mu_ok = !adaptive;
    int mu_terms = 1;
    for (int mu = 0; mu < pol.mu_max; ++mu) {
      const double c_next = next_row_element(mu, lam, x, c_cur, c_prev);
      w *= -e2;
      const double term = w * c_next;
      row.add(term);
      row_max = std::max(row_max, std::abs(term));
      c_prev = c_cur;
      c_cur = c_next;
      ++mu_terms;
      if (adaptive) {
        // remaining mu-tail is below |w| e2 eps^lam / (1 - e2)
        if (std::abs(w) * e2 * pow_lam * mu_tail_pref < pol.row_tol * 1e-3) {
          mu_ok = true;
          break;
        }
      }
    }
    mu_ok_all = mu_ok_all && mu_ok;
    out.mu_used = std::max(out.mu_used, mu_terms);

    total.add(std::cos(static_cast<double>(lam) * phase_minus_chi) * row.value());

    if (adaptive && static_cast<double>(lam) > lam_peak) {
      if (row_max < pol.row_tol) {
        if (++quiet_rows >= 2) {
          lambda_stopped = true;
          break;
        }
      } else {
        quiet_rows = 0;
      }
    }
  }

  out.value = 4.0 * (1.0 - e2) * total.value();
  out.converged = adaptive ? (lambda_stopped && mu_ok_all) : true;
  return out;
}

void require_nbar(double n_bar, const char* who) {
  if (!(n_bar >= 0.0) || !std::isfinite(n_bar))
    throw std::domain_error(std::string(who) + ": n_bar must be finite and >= 0");
}

}  // namespace

std::complex<double> weyl_wigner_symbol(int m, int n, const PhasePoint& pt) {
  if (m < 0 || n < 0) throw std::invalid_argument("weyl_wigner_symbol: indices must be >= 0");
  const int mu = std::min(m, n);
  const int lam = std::abs(m - n);
  const double b = pt.b();
  const double x = 2.0 * b * b;

  double c_prev = 0.0;
  double c_cur = row_start(kSqrt2 * b, b, lam);  // eps = 1: plain sqrt(2) b powers
  for (int k = 0; k < mu; ++k) {
    const double c_next = next_row_element(k, lam, x, c_cur, c_prev);
    c_prev = c_cur;
    c_cur = c_next;
  }
  const double magnitude = 2.0 * ((mu % 2 == 0) ? 1.0 : -1.0) * c_cur;
  const double arg = -pt.chi() * static_cast<double>(m - n);
  return magnitude * std::complex<double>(std::cos(arg), std::sin(arg));
}

double wigner_thermal(double n_bar, const PhasePoint& pt) {
  require_nbar(n_bar, "wigner_thermal");
  const double width = 1.0 + 2.0 * n_bar;
  return 2.0 / width * std::exp(-(pt.q * pt.q + pt.p * pt.p) / width);
}

SeriesResult wigner_thermal_series(double n_bar, const PhasePoint& pt,
                                   const TruncationPolicy& policy) {
  require_nbar(n_bar, "wigner_thermal_series");
  policy.validate();
  const double e2 = n_bar / (1.0 + n_bar);
  const double x = 2.0 * (pt.q * pt.q + pt.p * pt.p);
  const double pref = 2.0 * (1.0 - e2);
  const std::size_t limit =
      policy.mode == TruncationMode::fixed_n ? policy.fixed_terms : policy.max_terms;

  // scaled Laguerre values t_n = e^{-x/2} L_n(x) obey the plain recurrence
  // and stay within |t_n| <= 1
  double t_prev = 0.0;
  double t_cur = std::exp(-0.5 * x);
  NeumaierSum acc;
  double w = 1.0;  // (-e2)^n
  std::size_t used = 0;
  double tail = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < limit; ++n) {
    acc.add(pref * w * t_cur);
    const double dn = static_cast<double>(n);
    const double t_next = ((2.0 * dn + 1.0 - x) * t_cur - dn * t_prev) / (dn + 1.0);
    t_prev = t_cur;
    t_cur = t_next;
    w *= -e2;
    used = n + 1;
    if (policy.mode == TruncationMode::adaptive) {
      tail = 2.0 * std::abs(w);  // |terms| <= 2 (1-e2) e2^n, summed geometrically
      if (tail <= policy.tail_tol) break;
    }
  }
  if (policy.mode == TruncationMode::fixed_n) tail = 2.0 * std::abs(w);
  return SeriesResult{acc.value(), used, tail, tail <= policy.tail_tol};
}

WignerValue wigner_cps(const PhaseState& state, const PhasePoint& pt,
                       const Wigner2dPolicy& policy) {
  if (policy.mu_max < 0 || policy.lambda_max < 0)
    throw std::invalid_argument("wigner_cps: truncation orders must be >= 0");
  const double w1 = wigner_thermal(state.mean_n(), pt);
  WignerValue out;
  if (state.eps_abs() == 0.0) {
    out.value = w1;
    return out;
  }
  const W2Result w2 = w2_sum(state.eps_abs(), state.phase() - pt.chi(), pt.b(), policy);
  out.value = w1 + w2.value;
  out.converged = w2.converged;
  out.mu_used = w2.mu_used;
  out.lambda_used = w2.lambda_used;
  return out;
}

WignerOracleResult wigner_quadrature_oracle(
    const std::function<std::complex<double>(double)>& psi, const PhasePoint& pt,
    const QuadSpec& spec) {
  auto chord = [&](double v) {
    const std::complex<double> phase(std::cos(pt.p * v), -std::sin(pt.p * v));
    return phase * std::conj(psi(pt.q - 0.5 * v)) * psi(pt.q + 0.5 * v);
  };
  const std::complex<double> w = integrate(chord, spec);
  // an interval that cuts the chord off while it still carries weight shows
  // up at the endpoints, not necessarily in the imaginary residue
  const double edge = std::max(std::abs(chord(-spec.half_width)), std::abs(chord(spec.half_width)));
  WignerOracleResult out;
  out.value = w.real();
  out.imag_residue = std::abs(w.imag());
  out.converged = out.imag_residue < 1e-8 && edge < 1e-9;
  return out;
}

WignerOracleResult wigner_quadrature_oracle(const PhaseState& state, const PhasePoint& pt,
                                            const TruncationPolicy& policy,
                                            const QuadSpec& spec) {
  bool series_ok = true;
  auto psi = [&](double x) {
    const PsiResult r = psi_cps(state, x, policy);
    series_ok = series_ok && r.converged;
    return r.value;
  };
  WignerOracleResult out = wigner_quadrature_oracle(psi, pt, spec);
  out.converged = out.converged && series_ok;
  return out;
}

WignerGrid wigner_grid(const PhaseState& state, std::pair<double, double> q_range,
                       std::pair<double, double> p_range, std::pair<int, int> resolution,
                       const Wigner2dPolicy& policy) {
  const auto [q_lo, q_hi] = q_range;
  const auto [p_lo, p_hi] = p_range;
  const auto [n_q, n_p] = resolution;
  if (n_q < 2 || n_p < 2) throw std::invalid_argument("wigner_grid: need >= 2 points per axis");
  if (!(q_lo < q_hi) || !(p_lo < p_hi))
    throw std::invalid_argument("wigner_grid: ranges must be increasing");

  WignerGrid grid;
  grid.q_axis = Eigen::VectorXd::LinSpaced(n_q, q_lo, q_hi);
  grid.p_axis = Eigen::VectorXd::LinSpaced(n_p, p_lo, p_hi);
  grid.values.resize(n_q, n_p);
  grid.cell_area = (grid.q_axis(1) - grid.q_axis(0)) * (grid.p_axis(1) - grid.p_axis(0));

  std::vector<unsigned char> flags(static_cast<std::size_t>(n_q) * n_p, 1);
  parallel_for(static_cast<std::size_t>(n_q) * n_p, [&](std::size_t idx) {
    const int i = static_cast<int>(idx / static_cast<std::size_t>(n_p));
    const int j = static_cast<int>(idx % static_cast<std::size_t>(n_p));
    const WignerValue v =
        wigner_cps(state, PhasePoint{grid.q_axis(i), grid.p_axis(j)}, policy);
    grid.values(i, j) = v.value;
    flags[idx] = v.converged ? 1 : 0;
  });
  grid.converged = std::all_of(flags.begin(), flags.end(), [](unsigned char f) { return f != 0; });
  return grid;
}

NegativityReport negativity_scan(const WignerGrid& grid) {
  if (grid.values.size() == 0) throw std::invalid_argument("negativity_scan: empty grid");
  NegativityReport rep;
  rep.min_value = std::numeric_limits<double>::infinity();
  rep.max_value = -std::numeric_limits<double>::infinity();
  NeumaierSum neg;
  for (Eigen::Index i = 0; i < grid.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < grid.values.cols(); ++j) {
      const double w = grid.values(i, j);
      if (w < rep.min_value) {
        rep.min_value = w;
        rep.min_location = PhasePoint{grid.q_axis(i), grid.p_axis(j)};
      }
      rep.max_value = std::max(rep.max_value, w);
      if (w < 0.0) neg.add(-w * grid.cell_area);
    }
  }
  rep.negative_volume = neg.value();
  return rep;
}

}  // namespace cps
