#include "cps/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "cps/observables.hpp"

namespace cps {

const GaussLegendreRule& gauss_legendre_rule(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre_rule: order must be >= 1");
  static std::map<int, GaussLegendreRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  // Golub-Welsch: eigen-decompose the Jacobi matrix of the Legendre weight.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  GaussLegendreRule rule;
  rule.nodes = solver.eigenvalues();
  rule.weights = 2.0 * solver.eigenvectors().row(0).transpose().array().square();
  return cache.emplace(order, std::move(rule)).first->second;
}

namespace {

// Index of the last Fock component whose series weight still matters.
double effective_fock_cutoff(double eps_abs, double weight_floor = 1e-10) {
  if (eps_abs <= 0.0) return 1.0;
  const double log_eps = std::log(eps_abs);
  if (log_eps >= -1e-12) return 1e7;
  return std::max(1.0, std::log(weight_floor) / log_eps);
}

}  // namespace

QuadSpec QuadSpec::for_state(const PhaseState& state, const TruncationPolicy& policy) {
  const QuadratureStats st = quadrature_stats(state, policy);
  const double n_bar = state.mean_n();
  const double extent = std::sqrt(2.0 * n_bar + 1.0);
  QuadSpec spec;
  spec.half_width = std::abs(st.mean_x) + 10.0 * std::sqrt(std::max(st.var_x, 1e-6)) +
                    6.0 * extent + 2.0;
  const double n_eff = effective_fock_cutoff(state.eps_abs());
  // ~3 nodes per oscillation length pi/sqrt(2 n_eff + 1)
  const double nodes_needed = 3.0 * spec.half_width * std::sqrt(2.0 * n_eff + 1.0);
  spec.nodes_per_panel = 24;
  spec.panels = std::clamp(static_cast<int>(nodes_needed / spec.nodes_per_panel) + 1, 32, 4096);
  return spec;
}

QuadSpec QuadSpec::for_wigner_oracle(const PhaseState& state, double q, double p,
                                     const TruncationPolicy& policy) {
  const QuadratureStats st = quadrature_stats(state, policy);
  const double extent = std::abs(st.mean_x) + 10.0 * std::sqrt(std::max(st.var_x, 1e-6)) +
                        6.0 * std::sqrt(2.0 * state.mean_n() + 1.0) + 2.0;
  QuadSpec spec;
  spec.half_width = 2.0 * (extent + std::abs(q));
  const double n_eff = effective_fock_cutoff(state.eps_abs());
  // the chord integrand oscillates at the basis rate plus the e^{-ipv} rate
  const double freq = 0.5 * std::sqrt(2.0 * n_eff + 1.0) + std::abs(p);
  const double nodes_needed = 3.0 * spec.half_width * std::max(freq, 1.0);
  spec.nodes_per_panel = 24;
  spec.panels = std::clamp(static_cast<int>(nodes_needed / spec.nodes_per_panel) + 1, 32, 8192);
  return spec;
}

}  // namespace cps
