#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "hardy/error.hpp"
#include "hardy/quadrature.hpp"

using namespace hardy;
using std::numbers::pi;

TEST_CASE("beta and log_gamma") {
  CHECK(beta(0.5, 0.5) == doctest::Approx(pi).epsilon(1e-14));
  CHECK(beta(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-15));
  CHECK(beta(200.0, 300.0) > 0.0);  // large arguments go through log-gamma
  CHECK(std::log(beta(200.0, 300.0)) ==
        doctest::Approx(std::lgamma(200.0) + std::lgamma(300.0) - std::lgamma(500.0)).epsilon(1e-12));
  CHECK_THROWS_AS(beta(0.0, 1.0), Error);
  CHECK_THROWS_AS(beta(1.0, -2.0), Error);
  CHECK_THROWS_AS(log_gamma(-1.0), Error);
}

TEST_CASE("beta recurrence on random pairs") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> U(1e-3, 50.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double t = U(rng), g = U(rng);
    const double a = beta(t + 1, g), b = t / (t + g) * beta(t, g);
    worst = std::max(worst, std::abs(a - b) / b);
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("sin power integral") {
  CHECK(sin_power_integral(0.0) == doctest::Approx(pi).epsilon(1e-15));
  CHECK(sin_power_integral(1.0) == doctest::Approx(2.0).epsilon(1e-15));
  const QuadratureSpec qs;
  const double lam = std::sqrt(3.0) - 2;
  CHECK(std::abs(sin_power_integral_numeric(lam, qs) / beta((std::sqrt(3.0) - 1) / 2, 0.5) - 1) <= 1e-9);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double l = -0.95 + i * 10.95 / 49;
    worst = std::max(worst, std::abs(sin_power_integral_numeric(l, qs) / sin_power_integral(l) - 1));
  }
  CHECK(worst <= 1e-9);
  CHECK_THROWS_AS(sin_power_integral(-1.0), Error);
}

TEST_CASE("sphere area") {
  CHECK(sphere_area(1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(sphere_area(2) == doctest::Approx(2 * pi).epsilon(1e-15));
  CHECK(sphere_area(3) == doctest::Approx(4 * pi).epsilon(1e-15));
  CHECK_THROWS_AS(sphere_area(0), Error);
}

TEST_CASE("cutoff") {
  CHECK(cutoff_eta(0.5) == 1.0);
  CHECK(cutoff_eta(2.5) == 0.0);
  CHECK(cutoff_eta(1.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cutoff_eta(1.0) == 1.0);
  CHECK(cutoff_eta(2.0) == 0.0);
  CHECK(eta_prime(1.0) == 0.0);
  CHECK(eta_prime(2.0) == 0.0);
  double prev = 1.0, worst_slope = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double t = 0.9 + 1.2 * i / 1000;
    CHECK(cutoff_eta(t) <= prev);
    prev = cutoff_eta(t);
    worst_slope = std::max(worst_slope, std::abs(eta_prime(t)));
    const double d = 1e-6;
    if (t > 1.001 && t < 1.999)
      CHECK(eta_prime(t) == doctest::Approx((cutoff_eta(t + d) - cutoff_eta(t - d)) / (2 * d)).epsilon(1e-6));
  }
  CHECK(worst_slope <= 15.0 / 8.0 + 1e-15);
}

TEST_CASE("integrate_1d examples") {
  const QuadratureSpec qs;
  CHECK(integrate_1d([](double t) { return 1 / std::sqrt(t); }, 0, 1, qs).value == doctest::Approx(2.0).epsilon(1e-12));
  // A plain callable cannot see b - t below ulp(pi); the endpoint-aware form can.
  QuadratureSpec loose = qs;
  loose.rel_tol = 1e-9;
  CHECK(integrate_1d([](double t) { return std::pow(std::sin(t), -0.5); }, 0, pi, loose).value ==
        doctest::Approx(beta(0.25, 0.5)).epsilon(1e-8));
  auto ep = [](double t, double da, double db) { return std::pow(std::sin(t < 1.5 ? da : db), -0.5); };
  CHECK(integrate_1d_ep(ep, 0, pi, qs).value == doctest::Approx(beta(0.25, 0.5)).epsilon(1e-12));
  CHECK(integrate_1d(cutoff_eta, 0, 2, qs).value == doctest::Approx(1.5).epsilon(1e-12));
  for (double c : {-0.9, -0.5, -0.1, 0.0, 1.0, 3.0}) {
    const auto r = integrate_1d([c](double t) { return std::pow(t, c); }, 0, 1, qs);
    CHECK(std::abs(r.value - 1 / (c + 1)) <= 1e-10);
  }
  QuadratureSpec gl = qs;
  gl.method = QuadMethod::GAUSS_LEGENDRE_COMPOSITE;
  CHECK(integrate_1d([](double t) { return std::exp(t); }, 0, 1, gl).value == doctest::Approx(std::numbers::e - 1).epsilon(1e-13));
}

TEST_CASE("integrate_1d reports non-convergence") {
  QuadratureSpec qs;
  qs.levels = 3;
  try {
    integrate_1d([](double t) { return std::sin(200 * t); }, 0, 10, qs);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(e.code() == ErrorCode::NotConverged);
    CHECK(e.err_estimate() > 0.0);
  }
  QuadratureSpec bad;
  bad.levels = 2;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = QuadratureSpec{};
  bad.rel_tol = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("2d integration") {
  QuadratureSpec qs;
  qs.truncation_radius = 1.0;
  CHECK(integrate_2d_product([](double r) { return r; }, [](double) { return 1.0; }, qs) ==
        doctest::Approx(pi / 2).epsilon(1e-12));
  CHECK(integrate_2d([](double r, double) { return r; }, qs) == doctest::Approx(pi / 2).epsilon(1e-12));
  CHECK(integrate_2d([](double, double) { return 0.0; }, qs) == 0.0);
  // factorized singular integrand: product and tensor paths agree
  auto fr = [](double r) { return std::pow(r, -0.4) * std::exp(-r); };
  auto fp = [](double p) { return std::pow(std::sin(p), -0.3); };
  const double a = integrate_2d_product(fr, fp, qs);
  const double b = integrate_2d([&](double r, double p) { return fr(r) * fp(p); }, qs);
  CHECK(std::abs(a - b) / a <= 1e-9);
}

TEST_CASE("denominator of the K > 1 family: product vs tensor path") {
  // n = 3, alpha = beta = -1/2, eps = 1e-2: integrand (sin)^(sqrt3-2) * r^(2b + sqrt3 + 1) (r^2+eps^2)^(l1) eta(r)^2
  const double s3 = std::sqrt(3.0), eps = 1e-2, l1 = 0.5 - s3 / 2, t1 = -(2 - s3) / 2;
  const double c = 2 + 2 * (-0.5) + 2 * (-0.5) + 2 * t1;  // exponent of r: n-1 + 2a + 2b + 2 theta
  const double e = 1 + 2 * (-0.5) + 2 * t1;               // exponent of sin: n-2 + 2a + 2 theta
  QuadratureSpec qs;
  auto g2 = [&](double r) { return std::pow(r, c) * std::pow(r * r + eps * eps, l1) * cutoff_eta(r) * cutoff_eta(r); };
  const auto br = geometric_breakpoints(eps, 2.0);
  const double radial = integrate_panels([&](double r, double, double) { return g2(r); }, br, qs).value;
  const double closed = sin_power_integral(e) * radial;
  const double tensor = integrate_2d([&](double r, double p) { return std::pow(std::sin(p), e) * g2(r); }, qs,
                                     std::span<const double>(br).subspan(1, br.size() - 2));
  CHECK(std::abs(tensor - closed) / closed <= 1e-8);
  CHECK(closed == doctest::Approx(beta((s3 - 1) / 2, 0.5) * radial).epsilon(1e-14));
}

TEST_CASE("power-start and angular helpers") {
  const QuadratureSpec qs;
  const auto r = integrate_power_start(-0.7, [](double x) { return std::cos(x); }, 1.0, qs);
  const auto ref = integrate_1d([](double x) { return std::pow(x, -0.7) * std::cos(x); }, 0, 1, qs);
  CHECK(std::abs(r.value - ref.value) <= 1e-11);
  const auto a = angular_integral(-0.5, [](double p) { return 1 + std::cos(p); }, qs);
  const auto b = integrate_1d([](double p) { return std::pow(std::sin(p), -0.5) * (1 + std::cos(p)); }, 0, pi / 2, qs);
  CHECK(std::abs(a.value - b.value) <= 1e-11);
}

TEST_CASE("kernel boundedness: positive and negative controls") {
  const QuadratureSpec qs;
  const std::vector<double> eps{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  const double s3 = std::sqrt(3.0);
  const XiSpec fam{-1 - 1 + s3, 0.5 - s3 / 2};
  CHECK(fam.satisfies_hypothesis());
  auto r = lemma1_check(fam, eps, qs);
  CHECK(std::abs(r.slope_vs_log_eps) <= 1e-2);
  CHECK(std::isfinite(r.max_abs));
  r = lemma1_check({1, -1}, eps, qs);
  CHECK(std::abs(r.slope_vs_log_eps) <= 1e-2);
  CHECK(r.values.size() == eps.size());
  const XiSpec bad{1, -0.6};
  CHECK_FALSE(bad.satisfies_hypothesis());
  CHECK(std::abs(lemma1_check(bad, eps, qs).slope_vs_log_eps) > 0.1);
  CHECK_THROWS_AS(lemma1_check({-1.0, 0.0}, eps, qs), Error);
  CHECK_THROWS_AS(lemma1_check({1, -1}, {2.0}, qs), Error);
}

TEST_CASE("least-squares line") {
  const auto f = fit_line(std::vector<double>{0, 1, 2, 3}, std::vector<double>{1, 3, 5, 7});
  CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(f.intercept == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f.rms <= 1e-14);
}
