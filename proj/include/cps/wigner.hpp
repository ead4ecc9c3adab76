// Wigner function of coherent phase states: Weyl-Wigner symbol series
// (thermal diagonal part plus the off-diagonal double sum), grid evaluation,
// negativity diagnostics, and a direct chord-integral oracle.
//
// Convention: the Wigner function integrates to 2 pi over the plane; the
// vacuum is 2 exp(-q^2-p^2) and any pure state obeys |W| <= 2.
//
// Numerical domain: row prefactors carry e^{-b^2}, so points with
// b^2 = q^2 + p^2 beyond ~700 (where e^{-b^2} underflows) evaluate the
// off-diagonal part as 0. True values there are below the double range.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <functional>
#include <utility>

#include "cps/phase_state.hpp"
#include "cps/quadrature.hpp"
#include "cps/truncation.hpp"

namespace cps {

/// Point of the (q, p) phase plane with its polar form q + ip = b e^{i chi}.
struct PhasePoint {
  double q = 0.0;
  double p = 0.0;

  double b() const { return std::hypot(q, p); }
  double chi() const { return (q == 0.0 && p == 0.0) ? 0.0 : std::atan2(p, q); }
};

enum class Wigner2dMode { fixed, adaptive };

/// Truncation of the double (mu, lambda) sum.
///
/// fixed: exactly mu_max x lambda_max terms, reproducing published fixed-count
/// evaluations; results are reported converged by definition.
/// adaptive: lambda rows stop once their largest term magnitude stays below
/// row_tol (two consecutive quiet rows, past the prefactor peak), and each
/// row's mu loop stops on a rigorous geometric tail bound.
struct Wigner2dPolicy {
  Wigner2dMode mode = Wigner2dMode::fixed;
  int mu_max = 110;
  int lambda_max = 110;
  double row_tol = 1e-12;

  static Wigner2dPolicy fixed(int mu, int lambda) {
    return Wigner2dPolicy{Wigner2dMode::fixed, mu, lambda, 1e-12};
  }
  static Wigner2dPolicy adaptive(int mu_cap = 512, int lambda_cap = 512, double tol = 1e-12) {
    return Wigner2dPolicy{Wigner2dMode::adaptive, mu_cap, lambda_cap, tol};
  }
};

struct WignerValue {
  double value = 0.0;
  bool converged = true;
  int mu_used = 0;
  int lambda_used = 0;
};

/// Rectangular lattice of Wigner values; values(i, j) = W(q_axis[i], p_axis[j]).
struct WignerGrid {
  Eigen::VectorXd q_axis;
  Eigen::VectorXd p_axis;
  Eigen::MatrixXd values;
  double cell_area = 0.0;
  bool converged = true;
};

struct NegativityReport {
  double min_value = 0.0;
  PhasePoint min_location;
  double negative_volume = 0.0;  // sum of |W| * cell_area over negative cells
  double max_value = 0.0;
};

/// Weyl-Wigner symbol of |m><n|:
///   2^{1+lam/2} (-1)^mu sqrt(mu!/nu!) b^lam e^{-b^2 - i chi (m-n)} L_mu^lam(2 b^2)
/// with mu = min(m,n), nu = max(m,n), lam = |m-n|. Factorial ratios and powers
/// are built iteratively, never from bare factorials.
std::complex<double> weyl_wigner_symbol(int m, int n, const PhasePoint& pt);

/// Thermal (diagonal) part in closed form: 2/(1+2 n_bar) exp(-b^2/(1+2 n_bar)).
double wigner_thermal(double n_bar, const PhasePoint& pt);

/// The same quantity summed term by term,
///   2 (1-|eps|^2) e^{-b^2} sum_n (-|eps|^2)^n L_n(2 b^2),
/// kept as an independent route for cross-checks.
SeriesResult wigner_thermal_series(double n_bar, const PhasePoint& pt,
                                   const TruncationPolicy& policy);

/// Full Wigner value: closed-form thermal part plus the off-diagonal double sum.
WignerValue wigner_cps(const PhaseState& state, const PhasePoint& pt,
                       const Wigner2dPolicy& policy);

struct WignerOracleResult {
  double value = 0.0;
  double imag_residue = 0.0;
  bool converged = false;
};

/// Direct chord integral W(q,p) = int dv e^{-i p v} psi*(q-v/2) psi(q+v/2)
/// for an arbitrary wavefunction.
WignerOracleResult wigner_quadrature_oracle(
    const std::function<std::complex<double>(double)>& psi, const PhasePoint& pt,
    const QuadSpec& spec);

/// Same oracle with psi taken from the state's Hermite series.
WignerOracleResult wigner_quadrature_oracle(const PhaseState& state, const PhasePoint& pt,
                                            const TruncationPolicy& policy, const QuadSpec& spec);

/// Evaluates wigner_cps on a rectangular lattice (ascending axes); points are
/// processed concurrently, each with its fixed summation order.
WignerGrid wigner_grid(const PhaseState& state, std::pair<double, double> q_range,
                       std::pair<double, double> p_range, std::pair<int, int> resolution,
                       const Wigner2dPolicy& policy);

/// Lattice minimum, its location, and the accumulated negative volume.
NegativityReport negativity_scan(const WignerGrid& grid);

}  // namespace cps
