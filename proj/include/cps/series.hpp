// Compensated summation engine and the S1 / S2 quadrature series.
#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>

#include "cps/phase_state.hpp"
#include "cps/truncation.hpp"

namespace cps {

/// Kahan-Neumaier compensated accumulator. Addition order is whatever the
/// caller uses; the engine below always adds in ascending index order, which
/// makes every sum bit-reproducible.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Sums term(0) + term(1) + ... under the given policy.
///
/// tail_bound(N) must bound |sum_{n>N} term(n)| from above; it may return
/// +infinity where no finite bound is available yet. The result's
/// tail_estimate is tail_bound(terms_used - 1).
template <typename TermFn, typename TailFn>
SeriesResult sum_series(TermFn&& term, const TruncationPolicy& policy, TailFn&& tail_bound) {
  policy.validate();
  const std::size_t limit =
      policy.mode == TruncationMode::fixed_n ? policy.fixed_terms : policy.max_terms;

  NeumaierSum acc;
  std::size_t used = 0;
  double tail = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < limit; ++n) {
    acc.add(term(n));
    used = n + 1;
    if (policy.mode == TruncationMode::adaptive) {
      tail = tail_bound(n);
      if (tail <= policy.tail_tol) break;
    }
  }
  if (policy.mode == TruncationMode::fixed_n) tail = tail_bound(used - 1);
  return SeriesResult{acc.value(), used, tail, tail <= policy.tail_tol};
}

/// S1 = (1-|eps|^2) sum_n |eps|^{2n+1} sqrt(n+1).
SeriesResult s1(double eps_abs, const TruncationPolicy& policy);

/// S2 = (1-|eps|^2) sum_n |eps|^{2n+2} sqrt((n+1)(n+2)).
SeriesResult s2(double eps_abs, const TruncationPolicy& policy);

}  // namespace cps
