#include <doctest.h>

#include <cmath>
#include <functional>

#include "rootmax/deviations.hpp"
#include "rootmax/symfunc.hpp"

using namespace rootmax;

namespace {

// Adaptive Simpson quadrature, used to check the divisor-series integral
// identity independently of the series algebra.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int depth = 0) {
  double m = 0.5 * (a + b);
  double fa = f(a), fb = f(b), fm = f(m);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double left = (m - a) / 6.0 * (fa + 4.0 * f(lm) + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * f(rm) + fb);
  if (depth > 40 || std::abs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(f, a, m, tol / 2, depth + 1) +
         adaptive_simpson(f, m, b, tol / 2, depth + 1);
}

}  // namespace

TEST_CASE("limit_cdf support and endpoints") {
  CHECK(limit_cdf(0.5) == 0.0);
  CHECK(limit_cdf(1.0) == 0.0);
  CHECK(limit_cdf(1e9) == doctest::Approx(1.0).epsilon(1e-9));

  // Strictly increasing past 1.
  double prev = 0.0;
  for (double y : {1.01, 1.1, 1.5, 2.0, 4.0}) {
    double v = limit_cdf(y);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("limit_cdf at sqrt(2) equals the binary digital product") {
  double oracle = 1.0;
  for (int k = 1; k <= 60; ++k) oracle *= 1.0 - std::pow(2.0, -k);
  double got = limit_cdf(std::sqrt(2.0));
  CHECK(got == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(got == doctest::Approx(0.2887880951).epsilon(1e-9));
}

TEST_CASE("divisor_sigma") {
  CHECK(divisor_sigma(1) == 1);
  CHECK(divisor_sigma(6) == 12);
  CHECK(divisor_sigma(28) == 56);
  CHECK_THROWS_AS(divisor_sigma(0), std::invalid_argument);
}

TEST_CASE("frak_S partial sums and domain") {
  CHECK_THROWS_AS(frak_S(1.0), std::domain_error);
  CHECK(frak_S(1e6) == doctest::Approx(0.0).epsilon(1e-10));

  // Direct partial-sum oracle at s = 10 (first terms dominate).
  double oracle = 0.0;
  long long sigma[8] = {1, 3, 4, 7, 6, 12, 8, 15};
  for (int d = 1; d <= 8; ++d) {
    oracle += 2.0 * double(sigma[d - 1]) * std::pow(10.0, -2.0 * d);
  }
  CHECK(frak_S(10.0) == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(frak_S(10.0) == doctest::Approx(0.020608144).epsilon(1e-6));
}

TEST_CASE("divisor series integrates to -log limit_cdf") {
  for (double y : {1.5, 2.0, 3.0}) {
    double lhs = -std::log(limit_cdf(y));
    // integral_y^S S(s)/s ds by adaptive Simpson plus the exact series tail
    // sum_d sigma(d) S^{-2d} / d beyond S.
    const double S = 60.0;
    double integral = adaptive_simpson(
        [](double s) { return frak_S(s) / s; }, y, S, 1e-12);
    double tail = 0.0;
    for (long long d = 1; d <= 40; ++d) {
      tail += double(divisor_sigma(d)) * std::pow(S, -2.0 * double(d)) /
              double(d);
    }
    CHECK(lhs == doctest::Approx(integral + tail).epsilon(1e-8));
  }
}

TEST_CASE("quadrature_J closed cases and domain") {
  CHECK(quadrature_J(0, 0.5) == doctest::Approx(1.0));
  CHECK(quadrature_J(1, 0.6) == doctest::Approx(1.0 / 0.64).epsilon(1e-14));
  CHECK_THROWS_AS(quadrature_J(2, 1.0), std::domain_error);
  CHECK_THROWS_AS(quadrature_J(5, 0.5), std::length_error);
  CHECK_THROWS_AS(quadrature_J(2, 0.5, 4), std::invalid_argument);
}

TEST_CASE("quadrature_J matches the naive reference sum") {
  for (int k : {2, 3}) {
    for (double y : {0.3, 0.6}) {
      double fast = quadrature_J(k, y, 48);
      double ref = quadrature_J_reference(k, y, 48);
      CHECK(fast == doctest::Approx(ref).epsilon(1e-12));
    }
  }
  CHECK(quadrature_J(4, 0.5, 16) ==
        doctest::Approx(quadrature_J_reference(4, 0.5, 16)).epsilon(1e-12));
}

TEST_CASE("quadrature_J equals the Schur series") {
  SeriesJ s = cauchy_series_J(2, 0.5, 40);
  CHECK(std::abs(quadrature_J(2, 0.5, 64) - s.value) <= 1e-8);
}

TEST_CASE("eval_F scalar series at y = 0") {
  // J_k(0) = 1, so F(0) = sum (-1)^{k(k+1)/2} / (k! (k+1)!).
  double oracle = 0.0;
  double fact[11];
  fact[0] = 1.0;
  for (int i = 1; i <= 10; ++i) fact[i] = fact[i - 1] * i;
  for (int k = 0; k <= 8; ++k) {
    double sign = ((k * (k + 1) / 2) % 2 == 0) ? 1.0 : -1.0;
    oracle += sign / (fact[k] * fact[k + 1]);
  }
  FValue f = eval_F(0.0, 8, FMethod::both);
  CHECK(f.value == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(f.value == doctest::Approx(0.4239464887).epsilon(1e-8));

  FValue fs = eval_F(0.0, 4, FMethod::series);
  double oracle4 = 1.0 - 0.5 - 1.0 / 12 + 1.0 / 144 + 1.0 / 2880;
  CHECK(fs.value == doctest::Approx(oracle4).epsilon(1e-12));
}

TEST_CASE("eval_F contract") {
  FValue f0 = eval_F(0.3, 0, FMethod::both);
  CHECK(f0.value == doctest::Approx(1.0));

  FValue f = eval_F(0.6, 4, FMethod::both);
  REQUIRE(f.contributions.size() == 5);
  CHECK(f.contributions[0] > 0);
  CHECK(f.contributions[1] < 0);
  CHECK(f.contributions[2] < 0);
  CHECK(f.contributions[3] > 0);
  CHECK(f.contributions[4] > 0);
  double total = 0.0;
  for (double c : f.contributions) total += c;
  CHECK(f.value == doctest::Approx(total).epsilon(1e-14));
  CHECK(f.tail_estimate >= 0.0);

  CHECK_THROWS_AS(eval_F(1.0, 2, FMethod::both), std::domain_error);
  CHECK_THROWS_AS(eval_F(0.5, 6, FMethod::quadrature), std::length_error);
}

TEST_CASE("sign exponent parities") {
  // k(7k+1)/2 and k(k+1)/2 differ by 3k^2, so the two signs differ by
  // (-1)^k; the blanket identity holds only for even k.
  for (std::uint64_t k = 0; k <= 100; ++k) {
    int a = int((k * (7 * k + 1) / 2) % 2);
    int b = int((k * (k + 1) / 2 + k) % 2);
    CHECK(a == b);
    if (k % 2 == 0) {
      CHECK(a == int((k * (k + 1) / 2) % 2));
    }
  }
}

TEST_CASE("ldp_estimator n=1 closed form") {
  RngStream rng(71, 0);
  LdpEstimate est = ldp_estimator(1, 0.5, 100000, rng,
                                  SampleMethod::truncation);
  double exact = 0.2;  // y^2/(1+y^2)
  CHECK(std::abs(est.p_hat - exact) <= 3.0 * est.std_error);
  CHECK(std::isfinite(est.log_p_hat));
  CHECK(std::isfinite(est.log_std_error));
  CHECK(std::isfinite(est.log_rescaled));

  RngStream rng2(72, 0);
  LdpEstimate near1 = ldp_estimator(1, 0.999, 100000, rng2,
                                    SampleMethod::dpp);
  double exact1 = 0.999 * 0.999 / (1.0 + 0.999 * 0.999);
  CHECK(std::abs(near1.p_hat - exact1) <= 3.0 * near1.std_error);
}

TEST_CASE("ldp_estimator agrees across the two samplers") {
  RngStream r1(78, 0), r2(78, 1);
  LdpEstimate a = ldp_estimator(4, 0.6, 40000, r1, SampleMethod::truncation);
  LdpEstimate b = ldp_estimator(4, 0.6, 40000, r2, SampleMethod::dpp);
  double combined = 3.0 * std::sqrt(a.std_error * a.std_error +
                                    b.std_error * b.std_error);
  CHECK(std::abs(a.p_hat - b.p_hat) <= combined);
}

TEST_CASE("ldp_estimator agrees with direct Monte Carlo at n=2") {
  RngStream r1(73, 0), r2(74, 0);
  LdpEstimate ldp = ldp_estimator(2, 0.5, 200000, r1, SampleMethod::dpp);
  McEstimate direct = direct_mc_prob(2, 0.5, 2000000, r2);
  double combined =
      3.0 * std::sqrt(ldp.std_error * ldp.std_error +
                      direct.std_error * direct.std_error);
  CHECK(std::abs(ldp.p_hat - direct.value) <= combined);
}

TEST_CASE("ldp_estimator is deterministic and thread-count independent") {
  RngStream rng(75, 0);
  LdpEstimate a = ldp_estimator(4, 0.6, 2000, rng, SampleMethod::dpp, true);
  LdpEstimate b = ldp_estimator(4, 0.6, 2000, rng, SampleMethod::dpp, false);
  CHECK(a.log_p_hat == b.log_p_hat);
  CHECK(a.log_std_error == b.log_std_error);
  CHECK(a.rescaled == b.rescaled);
}

TEST_CASE("ldp_estimator validates input") {
  RngStream rng(1, 0);
  CHECK_THROWS_AS(ldp_estimator(0, 0.5, 1000, rng, SampleMethod::dpp),
                  std::invalid_argument);
  CHECK_THROWS_AS(ldp_estimator(2, 1.5, 1000, rng, SampleMethod::dpp),
                  std::domain_error);
  CHECK_THROWS_AS(ldp_estimator(2, 0.5, 10, rng, SampleMethod::dpp),
                  std::invalid_argument);
}

TEST_CASE("speed-n^2 deviation rate at n=8") {
  for (double y : {0.5, 0.7}) {
    RngStream rng(79, std::uint64_t(y * 100));
    LdpEstimate est = ldp_estimator(8, y, 10000, rng, SampleMethod::dpp);
    double lhs = std::abs(est.log_p_hat / 64.0 + std::log(1.0 / y));
    CHECK(lhs <= 3.0 * std::log(8.0) / 8.0);
  }
}

TEST_CASE("direct_mc_prob endpoints and budget") {
  RngStream rng(76, 0);
  CHECK(direct_mc_prob(4, 0.0, 500, rng).value == 0.0);
  CHECK(direct_mc_prob(4, 1e9, 500, rng).value == 1.0);
  CHECK_THROWS_AS(direct_mc_prob(4096, 1.0, 1000000, rng),
                  std::invalid_argument);
}

TEST_CASE("moment_formula exact small cases") {
  for (double x : {0.25, 1.0, 2.89}) {
    cvec u = {cplx(std::sqrt(x), 0.0)};
    CHECK(std::abs(moment_formula(1, u) - (1.0 + 2.0 * x) / 2.0) <= 1e-12);
  }
  // n=3, u=0: g_4(0) * 3!/4! = 1/4.
  CHECK(moment_formula(3, {cplx(0.0)}) == doctest::Approx(0.25).epsilon(1e-14));

  CHECK_THROWS_AS(moment_formula(3, {cplx(1.5), cplx(1.5)}),
                  std::invalid_argument);
}

TEST_CASE("moment_formula matches Monte Carlo at n=4, k=2") {
  cvec u = {cplx(1.5, 0.0), cplx(0.0, 1.5)};
  double formula = moment_formula(4, u);
  RngStream rng(81, 0);
  McEstimate mc = mc_moment(4, u, 100000, rng, SampleMethod::truncation);
  CHECK(std::abs(mc.value - formula) <= 3.0 * mc.std_error);
}
