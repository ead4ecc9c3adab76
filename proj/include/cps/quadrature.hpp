// Composite Gauss-Legendre quadrature on symmetric intervals.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <type_traits>

#include "cps/phase_state.hpp"
#include "cps/series.hpp"
#include "cps/truncation.hpp"

namespace cps {

/// Nodes and weights on [-1, 1].
struct GaussLegendreRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Cached rule of the given order (Golub-Welsch). Thread-safe.
const GaussLegendreRule& gauss_legendre_rule(int order);

/// Panelized integration domain [-half_width, half_width].
struct QuadSpec {
  double half_width = 8.0;
  int panels = 64;
  int nodes_per_panel = 24;

  /// Domain and panel density sized from the state's own statistics: the
  /// interval covers the mean plus ten standard deviations plus the classical
  /// extent of the occupied Fock components, and the node density resolves
  /// their oscillation length.
  static QuadSpec for_state(const PhaseState& state, const TruncationPolicy& policy);

  /// Spec for the chord integral of the Wigner transform at point (q, p).
  static QuadSpec for_wigner_oracle(const PhaseState& state, double q, double p,
                                    const TruncationPolicy& policy);
};

/// Integral of f over [a, b] with the given panel count and rule order.
/// Evaluation order is fixed, sums are compensated; results are deterministic.
template <typename F>
auto integrate(F&& f, double a, double b, int panels, int order)
    -> decltype(f(0.0)) {
  using R = decltype(f(0.0));
  const GaussLegendreRule& rule = gauss_legendre_rule(order);
  const double width = (b - a) / panels;
  if constexpr (std::is_same_v<R, std::complex<double>>) {
    NeumaierSum re, im;
    for (int p = 0; p < panels; ++p) {
      const double mid = a + width * (p + 0.5);
      const double half = 0.5 * width;
      for (int i = 0; i < rule.nodes.size(); ++i) {
        const std::complex<double> v = f(mid + half * rule.nodes(i));
        re.add(rule.weights(i) * half * v.real());
        im.add(rule.weights(i) * half * v.imag());
      }
    }
    return std::complex<double>(re.value(), im.value());
  } else {
    NeumaierSum acc;
    for (int p = 0; p < panels; ++p) {
      const double mid = a + width * (p + 0.5);
      const double half = 0.5 * width;
      for (int i = 0; i < rule.nodes.size(); ++i)
        acc.add(rule.weights(i) * half * f(mid + half * rule.nodes(i)));
    }
    return acc.value();
  }
}

template <typename F>
auto integrate(F&& f, const QuadSpec& spec) -> decltype(f(0.0)) {
  return integrate(std::forward<F>(f), -spec.half_width, spec.half_width, spec.panels,
                   spec.nodes_per_panel);
}

}  // namespace cps
