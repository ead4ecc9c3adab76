// Truncation control and audit record for infinite-series summation.
#pragma once

#include <cstddef>
#include <stdexcept>

namespace cps {

enum class TruncationMode { adaptive, fixed_n };

/// How a series is cut off.
///
/// adaptive: stop as soon as the tail bound drops to tail_tol, but never use
/// more than max_terms (result is flagged unconverged if the cap binds).
/// fixed_n: use exactly fixed_terms terms; the tail bound is still evaluated
/// and reported, so reproductions of published fixed-count sums keep an
/// honest error estimate.
struct TruncationPolicy {
  std::size_t max_terms = 1'000'000;
  double tail_tol = 1e-12;  // absolute tolerance on the estimated tail
  TruncationMode mode = TruncationMode::adaptive;
  std::size_t fixed_terms = 0;  // meaningful in fixed_n mode only

  static TruncationPolicy adaptive(std::size_t max_terms = 1'000'000,
                                   double tail_tol = 1e-12) {
    TruncationPolicy p;
    p.max_terms = max_terms;
    p.tail_tol = tail_tol;
    return p;
  }

  /// Exactly n_terms terms; n_terms also becomes the cap.
  static TruncationPolicy fixed(std::size_t n_terms, double tail_tol = 1e-12) {
    TruncationPolicy p;
    p.mode = TruncationMode::fixed_n;
    p.fixed_terms = n_terms;
    p.max_terms = n_terms;
    p.tail_tol = tail_tol;
    return p;
  }

  void validate() const {
    if (max_terms == 0) throw std::invalid_argument("TruncationPolicy: max_terms must be > 0");
    if (!(tail_tol > 0.0)) throw std::invalid_argument("TruncationPolicy: tail_tol must be > 0");
    if (mode == TruncationMode::fixed_n) {
      if (fixed_terms == 0) throw std::invalid_argument("TruncationPolicy: fixed_n requires >= 1 term");
      if (fixed_terms > max_terms)
        throw std::invalid_argument("TruncationPolicy: fixed_terms exceeds max_terms");
    }
  }
};

/// Value of a truncated sum together with its audit trail.
/// converged is true exactly when tail_estimate <= tail_tol of the policy used.
struct SeriesResult {
  double value = 0.0;
  std::size_t terms_used = 0;
  double tail_estimate = 0.0;
  bool converged = false;
};

}  // namespace cps
