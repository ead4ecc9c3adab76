#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "cps/observables.hpp"
#include "cps/phase_state.hpp"
#include "oracle.hpp"

using cps::PhaseState;
using cps::QuadratureStats;
using cps::TruncationPolicy;

namespace {

constexpr double kPi = std::numbers::pi;
const TruncationPolicy kPol = TruncationPolicy::adaptive(1'000'000, 1e-13);

}  // namespace

TEST_CASE("quadrature_means: vacuum and symmetry") {
  const auto vac = cps::quadrature_means(PhaseState(0.0, 0.7), kPol);
  CHECK(vac.mean_x == 0.0);
  CHECK(vac.mean_p == 0.0);

  const auto perp = cps::quadrature_means(PhaseState(0.6, kPi / 2.0), kPol);
  CHECK(std::abs(perp.mean_x) < 1e-15);  // cos(pi/2) kills the x component
  CHECK(perp.mean_p > 0.0);
}

TEST_CASE("quadrature_stats: vacuum values are exact") {
  const QuadratureStats st = cps::quadrature_stats(PhaseState(0.0, 1.3), kPol);
  CHECK(st.var_x == 0.5);
  CHECK(st.var_p == 0.5);
  CHECK(st.cov_xp == 0.0);
  CHECK(st.rs_product == 0.25);
  CHECK(st.radius_sq == 0.0);
  CHECK(st.converged);
}

TEST_CASE("quadrature_stats: n_bar = 25 extreme phases (oracle-frozen values)") {
  const double eps = cps::eps_from_mean_n(25.0);

  const QuadratureStats perp = cps::quadrature_stats(PhaseState(eps, kPi / 2.0), kPol);
  CHECK(std::abs(perp.mean_x) < 1e-10);
  CHECK(perp.var_x == doctest::Approx(0.032413005568856637).epsilon(1e-9));
  CHECK(perp.mean_p == doctest::Approx(6.3174505435918092).epsilon(1e-10));

  const QuadratureStats par = cps::quadrature_stats(PhaseState(eps, 0.0), kPol);
  CHECK(par.mean_x == doctest::Approx(6.3174505435918092).epsilon(1e-10));
  CHECK(par.mean_x == doctest::Approx(6.3).epsilon(0.1 / 6.3));
  CHECK(par.var_x == doctest::Approx(11.057405623702698).epsilon(1e-9));
  CHECK(par.var_p == doctest::Approx(0.032413005568856637).epsilon(1e-9));
  CHECK(par.radius_sq == doctest::Approx(39.910181370728446).epsilon(1e-10));
}

TEST_CASE("quadrature_stats: var_x + var_p is phase independent") {
  const double eps = 0.9;
  const double big_n = cps::mean_n(eps) + 0.5;
  const double s1v = cps::s1(eps, kPol).value;
  const double expected = 2.0 * (big_n - s1v * s1v);
  for (double phi : {0.0, 0.7, kPi / 2.0, 2.1}) {
    const QuadratureStats st = cps::quadrature_stats(PhaseState(eps, phi), kPol);
    CHECK(std::abs(st.var_x + st.var_p - expected) <= 1e-10);
  }
}

TEST_CASE("sigma_x_min: examples and bounds") {
  CHECK(cps::sigma_x_min(0.0, kPol).value == 0.5);
  CHECK_THROWS_AS(cps::sigma_x_min(1.0, kPol), std::domain_error);

  // |eps| = 0.1: oracle value, and the quadratic small-eps law
  const double v01 = cps::sigma_x_min(0.1, kPol).value;
  CHECK(v01 == doctest::Approx(0.49585432206549979).epsilon(1e-13));
  CHECK(std::abs(v01 - (0.5 - 0.01 * (std::sqrt(2.0) - 1.0))) < 1e-5);

  // |eps|^2 = 0.9999: strong squeezing, still positive
  const double vhi = cps::sigma_x_min(std::sqrt(0.9999), kPol).value;
  CHECK(vhi == doctest::Approx(1.57802757008332e-4).epsilon(1e-9));
  CHECK(vhi < 0.002);
  CHECK(vhi > 0.0);
}

TEST_CASE("sigma_x_min: agrees with quadrature_stats at phi = pi/2") {
  for (double eps : {0.2, 0.6, 0.9, 0.99}) {
    const double a = cps::sigma_x_min(eps, kPol).value;
    const double b = cps::quadrature_stats(PhaseState(eps, kPi / 2.0), kPol).var_x;
    CHECK(std::abs(a - b) <= 1e-12);
  }
}

TEST_CASE("sigma_x_min: squeezing for every modulus, always above the straight line") {
  for (double eps = 0.05; eps < 1.0 - 1e-4; eps += 0.05) {
    const double v = cps::sigma_x_min(eps, kPol).value;
    CAPTURE(eps);
    CHECK(v < 0.5);
    CHECK(v > 0.5 * (1.0 - eps * eps));
  }
}

TEST_CASE("sigma_x_min_approx: closed-form values") {
  CHECK(cps::sigma_x_min_approx(0.0) == 0.5);
  const double v25 = cps::sigma_x_min_approx(cps::eps_from_mean_n(25.0));
  CHECK(v25 == doctest::Approx((1.0 + 0.25 * std::log(26.0)) / 52.0).epsilon(1e-12));
  CHECK(v25 == doctest::Approx(0.0349).epsilon(0.002));
  CHECK(cps::sigma_x_min_approx(std::sqrt(0.5)) ==
        doctest::Approx(0.25 * (1.0 + 0.25 * std::log(2.0))).epsilon(1e-12));
  // stays usable over the whole range
  for (double e2 = 0.0; e2 < 0.9999; e2 += 0.05) {
    const double ex = cps::sigma_x_min(std::sqrt(e2), kPol).value;
    const double ap = cps::sigma_x_min_approx(std::sqrt(e2));
    CHECK(std::abs(ap - ex) / ex < 0.10);
  }
}

TEST_CASE("sigma_x_sqzvac: values and the squeezing-strength comparison") {
  CHECK(cps::sigma_x_sqzvac(0.0) == 0.5);
  CHECK(cps::sigma_x_sqzvac(25.0) ==
        doctest::Approx(1.0 / (2.0 * (51.0 + 2.0 * std::sqrt(650.0)))).epsilon(1e-14));
  CHECK(cps::sigma_x_sqzvac(25.0) == doctest::Approx(0.004902).epsilon(1e-3));
  CHECK_THROWS_AS(cps::sigma_x_sqzvac(-1.0), std::domain_error);

  // the squeezed vacuum squeezes about twice as strongly (log-corrected);
  // asymptotic ratio 2 (1+2n)/(1+n) [1 + ln(1+n)/4]
  const double n = 100.0;
  const double ratio = cps::sigma_x_min(cps::eps_from_mean_n(n), kPol).value / cps::sigma_x_sqzvac(n);
  const double trend = 2.0 * (1.0 + 2.0 * n) / (1.0 + n) * (1.0 + 0.25 * std::log1p(n));
  CHECK(std::abs(ratio / trend - 1.0) < 0.25);

  // large-n_bar simplification approaches the closed form
  CHECK(cps::sigma_x_sqzvac_large(1e4) == doctest::Approx(cps::sigma_x_sqzvac(1e4)).epsilon(1e-4));
}

TEST_CASE("radius_R: limits and interpolation") {
  CHECK(cps::radius_R(0.0, kPol).value == 0.0);

  const double r_small = cps::radius_R(cps::eps_from_mean_n(0.001), kPol).value;
  CHECK(std::abs(r_small / 0.001 - 2.0) < 0.02);  // R ~ 2 n_bar for n_bar << 1

  const double r100 = cps::radius_R(cps::eps_from_mean_n(100.0), kPol).value;
  CHECK(r100 / 100.0 > 1.55);
  CHECK(r100 / 100.0 < 1.63);

  // state overload uses the modulus only
  CHECK(cps::radius_R(PhaseState(0.6, 1.1), kPol).value ==
        cps::radius_R(0.6, kPol).value);

  CHECK(cps::radius_R_interp(0.0) == 0.0);
  CHECK(cps::radius_R_interp(25.0, 1.59) ==
        doctest::Approx(25.0 * (2.0 + 1.59 * 25.0) / 26.0).epsilon(1e-14));
  // interpolation tracks the exact curve reasonably over both regimes
  for (double n : {0.01, 0.1, 1.0, 10.0, 100.0}) {
    const double exact = cps::radius_R(cps::eps_from_mean_n(n), kPol).value;
    CHECK(std::abs(cps::radius_R_interp(n, 1.59) - exact) / exact < 0.06);
  }
}

TEST_CASE("rs_product: vacuum, frozen high-occupation value, phase invariance") {
  const auto vac = cps::rs_product(PhaseState(0.0, 0.0), kPol);
  CHECK(vac.value == 0.25);
  CHECK(vac.via_min_variance == 0.25);

  // n_bar = 9999 with the published 640000-term truncation
  const auto big = cps::rs_product(PhaseState::from_mean_n(9999.0, 0.0),
                                   TruncationPolicy::fixed(640'000));
  CHECK(big.value == doctest::Approx(0.67726250275784261).epsilon(1e-7));
  CHECK(std::abs(big.value - 0.67) <= 0.01);

  // phase invariance through the full stats route
  const double eps = cps::eps_from_mean_n(25.0);
  const double d_a = cps::quadrature_stats(PhaseState(eps, 0.3), kPol).rs_product;
  const double d_b = cps::quadrature_stats(PhaseState(eps, 1.2), kPol).rs_product;
  CHECK(std::abs(d_a - d_b) <= 1e-10);
}

TEST_CASE("rs_product: the two algebraic routes agree to 1e-10 relative") {
  const TruncationPolicy tight = TruncationPolicy::adaptive(2'000'000, 1e-15);
  for (double eps : {0.3, 0.7, 0.9, 0.99}) {
    const auto d = cps::rs_product(PhaseState(eps, 0.4), tight);
    CAPTURE(eps);
    CHECK(std::abs(d.value - d.via_min_variance) <= 1e-10 * std::abs(d.value));
  }
  // deep in |eps| -> 1 the N - S2 difference shrinks like 1/n_bar while the
  // S2 sum keeps an absolute rounding floor ~ eps_mach * S2, so the route
  // agreement is limited by the condition number S2 / (N - S2)
  for (double eps : {0.999, std::sqrt(0.9999)}) {
    const auto d = cps::rs_product(PhaseState(eps, 0.4), tight);
    const double s2v = cps::s2(eps, tight).value;
    const double big_n = cps::mean_n(eps) + 0.5;
    const double amp = s2v / (big_n - s2v);
    const double tol =
        std::max(1e-10, 10.0 * std::numeric_limits<double>::epsilon() * amp);
    CAPTURE(eps);
    CHECK(std::abs(d.value - d.via_min_variance) <= tol * std::abs(d.value));
  }
}

TEST_CASE("rs_product: never below the 1/4 floor") {
  for (double eps = 0.0; eps < 1.0 - 1e-4; eps += 0.07) {
    for (double phi : {0.0, 0.9, 2.2}) {
      const QuadratureStats st = cps::quadrature_stats(PhaseState(eps, phi), kPol);
      CHECK(st.rs_product >= 0.25 - 1e-12);
    }
  }
}

TEST_CASE("rs_product_approx: anchors and tracking") {
  CHECK(cps::rs_product_approx(0.0, 1.59, cps::RsApproxVariant::full) == 0.25);
  const double simpl = cps::rs_product_approx(9999.0, 1.59, cps::RsApproxVariant::simplified);
  CHECK(simpl == doctest::Approx(0.677).epsilon(0.0015));
  // simplified form stays within 10% of the exact product over [1e2, 1e4]
  for (double n : {100.0, 1000.0, 9999.0}) {
    const auto exact = cps::rs_product(PhaseState::from_mean_n(n, 0.0), kPol);
    const double approx = cps::rs_product_approx(n, 1.59, cps::RsApproxVariant::simplified);
    CHECK(std::abs(approx / exact.value - 1.0) < 0.10);
  }
}

TEST_CASE("sigma_x_phi0_approx: vacuum limit and accuracy") {
  CHECK(cps::sigma_x_phi0_approx(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  const double exact100 = cps::quadrature_stats(PhaseState::from_mean_n(100.0, 0.0), kPol).var_x;
  CHECK(std::abs(cps::sigma_x_phi0_approx(100.0, 1.59) / exact100 - 1.0) < 0.10);
  CHECK(std::abs(cps::sigma_x_phi0_approx(100.0, 1.59) / ((2.0 - 1.59) * 100.0) - 1.0) < 0.10);
  const double exact25 = cps::quadrature_stats(PhaseState::from_mean_n(25.0, 0.0), kPol).var_x;
  CHECK(std::abs(cps::sigma_x_phi0_approx(25.0, 1.59) / exact25 - 1.0) < 0.15);
}

TEST_CASE("fit_eta: published range, small-occupation limit, residual behavior") {
  const auto fit = cps::fit_eta(50.0, 150.0, 20, kPol);
  CHECK(fit.eta == doctest::Approx(1.5712044613772929).epsilon(1e-6));
  CHECK(fit.eta > 1.55);
  CHECK(fit.eta < 1.63);
  CHECK(fit.eta < 2.0);
  CHECK(fit.converged);

  const auto small = cps::fit_eta(0.0001, 0.001, 20, kPol);
  CHECK(std::abs(small.eta - 2.0) / 2.0 < 0.01);

  const auto narrow = cps::fit_eta(90.0, 110.0, 20, kPol);
  CHECK(narrow.residual < fit.residual);

  CHECK_THROWS_AS(cps::fit_eta(10.0, 10.0, 20, kPol), std::invalid_argument);
  CHECK_THROWS_AS(cps::fit_eta(10.0, 20.0, 1, kPol), std::invalid_argument);
}

TEST_CASE("thermal_fidelity: closed forms") {
  CHECK(cps::thermal_fidelity(0.0) == 1.0);
  CHECK(cps::thermal_fidelity_from_mean_n(0.0) == 1.0);
  CHECK(cps::thermal_fidelity_from_mean_n(1.0) == 1.0 / 3.0);
  CHECK(cps::thermal_fidelity_from_mean_n(9999.0) == 1.0 / 19999.0);
  CHECK(cps::thermal_fidelity(cps::eps_from_mean_n(1.0)) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(cps::thermal_fidelity(1.0), std::domain_error);
}

TEST_CASE("reference states: coherent and thermal") {
  const QuadratureStats coh = cps::coherent_stats({3.0, -2.0});
  CHECK(coh.var_x == 0.5);
  CHECK(coh.var_p == 0.5);
  CHECK(coh.cov_xp == 0.0);
  CHECK(coh.rs_product == 0.25);
  CHECK(coh.mean_x == doctest::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(coh.mean_p == doctest::Approx(-2.0 * std::sqrt(2.0)).epsilon(1e-15));

  CHECK(cps::thermal_variance(25.0) == 25.5);
}

TEST_CASE("observables: exact S-series values against the test oracle") {
  const double eps25 = cps::eps_from_mean_n(25.0);
  CHECK(cps::s1(eps25, kPol).value ==
        doctest::Approx(cps_test::oracle_s1(eps25)).epsilon(1e-12));
  CHECK(cps::s2(eps25, kPol).value ==
        doctest::Approx(cps_test::oracle_s2(eps25)).epsilon(1e-12));
  CHECK(cps::sigma_x_min(eps25, kPol).value ==
        doctest::Approx(cps_test::oracle_sigma_min(eps25)).epsilon(1e-10));
}

TEST_CASE("sigma_x_min: tail soundness at random early stops (seeded)") {
  std::mt19937 rng(271828);
  std::uniform_real_distribution<double> mod(0.05, 0.99);
  std::uniform_int_distribution<std::size_t> stop(2, 5000);
  for (int k = 0; k < 20; ++k) {
    const double eps_abs = mod(rng);
    const std::size_t n = stop(rng);
    const auto r = cps::sigma_x_min(eps_abs, TruncationPolicy::fixed(n));
    const double full = cps_test::oracle_sigma_min(eps_abs);
    CAPTURE(eps_abs);
    CAPTURE(n);
    CHECK(std::abs(full - r.value) <= r.tail_estimate + 4e-15);
  }
}
