// Test-only brute-force reference computations at >= 50 significant digits.
// Everything here sums/recurses term by term in software multiprecision and
// is independent of the library's compensated double-precision path.
#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstddef>
#include <vector>

namespace cps_test {

using big50 = boost::multiprecision::cpp_bin_float_50;
using big100 = boost::multiprecision::cpp_bin_float_100;

// S1 summand: (1-e^2) |e|^{2n+1} sqrt(n+1)
template <typename Big>
Big oracle_s1_partial(double eps_abs, std::size_t terms) {
  const Big x(eps_abs);
  const Big x2 = x * x;
  const Big norm = 1 - x2;
  Big pow = x;
  Big sum = 0;
  for (std::size_t n = 0; n < terms; ++n) {
    const Big term = pow * sqrt(Big(n + 1));
    sum += term;
    pow *= x2;
    // terms this small cannot move the leading ~60 digits of the sum
    if (term < Big("1e-115") && n > 8) break;
  }
  return norm * sum;
}

// S2 summand: (1-e^2) |e|^{2n+2} sqrt((n+1)(n+2))
template <typename Big>
Big oracle_s2_partial(double eps_abs, std::size_t terms) {
  const Big x(eps_abs);
  const Big x2 = x * x;
  const Big norm = 1 - x2;
  Big pow = x2;
  Big sum = 0;
  for (std::size_t n = 0; n < terms; ++n) {
    const Big term = pow * sqrt(Big((n + 1)) * Big(n + 2));
    sum += term;
    pow *= x2;
    if (term < Big("1e-115") && n > 8) break;
  }
  return norm * sum;
}

// sigma_x at phi = pi/2: 1/2 - (1-e^2) e^2 sum_n e^{2n} sqrt(n+1)/(sqrt(n+1)+sqrt(n+2))
template <typename Big>
Big oracle_sigma_min_partial(double eps_abs, std::size_t terms) {
  const Big x(eps_abs);
  const Big x2 = x * x;
  Big pow = 1;
  Big sum = 0;
  for (std::size_t n = 0; n < terms; ++n) {
    const Big rn = sqrt(Big(n + 1));
    const Big term = pow * rn / (rn + sqrt(Big(n + 2)));
    sum += term;
    pow *= x2;
    if (pow < Big("1e-115") && n > 8) break;
  }
  return Big(0.5) - (1 - x2) * x2 * sum;
}

constexpr std::size_t kOracleFullTerms = 4'000'000;

inline double oracle_s1(double eps_abs) {
  return static_cast<double>(oracle_s1_partial<big50>(eps_abs, kOracleFullTerms));
}
inline double oracle_s2(double eps_abs) {
  return static_cast<double>(oracle_s2_partial<big50>(eps_abs, kOracleFullTerms));
}
inline double oracle_sigma_min(double eps_abs) {
  return static_cast<double>(oracle_sigma_min_partial<big50>(eps_abs, kOracleFullTerms));
}

// Oscillator eigenfunctions by the same normalized recurrence, but in
// multiprecision, where e^{-x^2/2} for |x| ~ 50 is perfectly representable.
template <typename Big>
std::vector<Big> oracle_oscillator_sequence(double x, std::size_t n_max) {
  const Big pi = boost::math::constants::pi<Big>();
  const Big bx(x);
  std::vector<Big> out;
  out.reserve(n_max + 1);
  Big prev = 0;
  Big cur = pow(pi, Big(-0.25)) * exp(-bx * bx / 2);
  out.push_back(cur);
  for (std::size_t n = 0; n < n_max; ++n) {
    const Big next =
        sqrt(Big(2) / Big(n + 1)) * bx * cur - sqrt(Big(n) / Big(n + 1)) * prev;
    prev = cur;
    cur = next;
    out.push_back(cur);
  }
  return out;
}

}  // namespace cps_test
