#include "cps/series.hpp"

#include <string>

namespace cps {
namespace {

void require_modulus(double eps_abs, const char* who) {
  if (!(eps_abs >= 0.0 && eps_abs < 1.0))
    throw std::domain_error(std::string(who) + ": eps_abs must lie in [0, 1)");
}

// Geometric-ratio tail majorant: for n >= N the term ratio of either S-series
// is at most r(N); the tail is then term(N) * r/(1-r) whenever r < 1.
double ratio_tail(double term_n, double r) {
  if (!(r < 1.0)) return std::numeric_limits<double>::infinity();
  return std::abs(term_n) * r / (1.0 - r);
}

}  // namespace

SeriesResult s1(double eps_abs, const TruncationPolicy& policy) {
  require_modulus(eps_abs, "s1");
  const double e2 = eps_abs * eps_abs;
  const double norm = 1.0 - e2;
  // powers are taken of the rounded |eps|^2, the same double that the
  // N = <n> + 1/2 side of every N - S2 style difference is built from;
  // mixing pow(eps, 2n) with e2-based quantities shifts the effective
  // occupation by O(eps_mach / (1-e2)^2) and ruins those differences
  auto term = [=](std::size_t n) {
    return norm * eps_abs * std::pow(e2, static_cast<double>(n)) *
           std::sqrt(static_cast<double>(n) + 1.0);
  };
  auto tail = [=](std::size_t n) {
    const double dn = static_cast<double>(n);
    const double r = e2 * std::sqrt((dn + 2.0) / (dn + 1.0));
    return ratio_tail(term(n), r);
  };
  return sum_series(term, policy, tail);
}

SeriesResult s2(double eps_abs, const TruncationPolicy& policy) {
  require_modulus(eps_abs, "s2");
  const double e2 = eps_abs * eps_abs;
  const double norm = 1.0 - e2;
  auto term = [=](std::size_t n) {
    const double dn = static_cast<double>(n);
    return norm * std::pow(e2, dn + 1.0) * std::sqrt((dn + 1.0) * (dn + 2.0));
  };
  auto tail = [=](std::size_t n) {
    const double dn = static_cast<double>(n);
    const double r = e2 * std::sqrt((dn + 3.0) / (dn + 1.0));
    return ratio_tail(term(n), r);
  };
  return sum_series(term, policy, tail);
}

}  // namespace cps
