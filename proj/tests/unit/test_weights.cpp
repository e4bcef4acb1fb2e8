#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hardy/closed_form.hpp"
#include "hardy/error.hpp"
#include "hardy/weights.hpp"

using namespace hardy;

namespace {

const double kS3 = std::sqrt(3.0);

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

WeightSpec optimal_weight() {
  const HardyParams hp(3, 2, -0.5, -0.5);
  return WeightSpec::p2(hp, {-(2 - kS3) / 2, 0.5 - kS3 / 2});
}

double oracle_for(const WeightSpec& s, std::span<const double> x) {
  auto V = [&](std::span<const double> y) { return weight_V(y, s); };
  auto f = [&](std::span<const double> y) { return weight_f(y, s); };
  if (s.general_p) return divergence_oracle_p(V, f, s.params.p(), x, default_fd_step(x, s.params.k()));
  return divergence_oracle(V, f, x, default_fd_step(x, s.params.k()));
}

}  // namespace

TEST_CASE("H, H2, H1 examples") {
  const HardyParams hp(3, 2, -0.5, -0.5);
  CHECK(H(0.0, hp) == 0.0);
  CHECK(H(-(2 - 1.0), hp) == 0.0);
  CHECK(H(-0.5, hp) == 0.25);
  CHECK(H2(0.0, 0.0, HardyParams(3, 2, 0, 0)) == 0.0);
  CHECK(H2(1.0, 1.0, HardyParams(3, 2, 0, 1)) == 10.0);
  const double t1 = -(2 - kS3) / 2, l1 = (1 - kS3) / 2;
  CHECK(std::abs(H2(t1, l1, hp)) <= 1e-12);
  CHECK(H1(t1, l1, hp) == doctest::Approx((2 * kS3 - 3) / 4).epsilon(1e-14));
  CHECK(H1(0.0, 0.0, hp) == 0.0);
}

TEST_CASE("H1 + H2 = H and the unit directional derivative") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> U(-3, 3);
  for (int i = 0; i < 1000; ++i) {
    const HardyParams hp(2 + i % 4, 2, U(rng), U(rng), 0);
    const double t = U(rng), l = U(rng);
    REQUIRE(std::abs(H1(t, l, hp) + H2(t, l, hp) - H(t, hp)) <= 1e-13 * (1 + std::abs(H(t, hp)) + std::abs(H2(t, l, hp))));
    const double d = 1e-4;
    const double dt = (H1(t + d, l, hp) - H1(t - d, l, hp)) / (2 * d);
    const double dl = (H1(t, l + d, hp) - H1(t, l - d, hp)) / (2 * d);
    REQUIRE(std::abs(dt - dl - 1.0) <= 1e-8);
  }
}

TEST_CASE("lambda1^2 = 2 beta theta1 when K > 0") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> U(-2, 2);
  int tested = 0;
  while (tested < 500) {
    const HardyParams hp(2 + tested % 4, 2, U(rng), U(rng));
    if (!admissible_hardy(hp) || compute_K(hp).k_value <= 0) continue;
    ++tested;
    const double K = compute_K(hp).k_value, s = hp.n() + 2 * hp.alpha();
    const double t1 = (-s + std::sqrt(K)) / 2, l1 = -hp.beta() - std::sqrt(K) / 2;
    REQUIRE(std::abs(l1 * l1 - 2 * hp.beta() * t1) <= 1e-12 * (1 + l1 * l1));
  }
}

TEST_CASE("weight_p2 examples") {
  const WeightSpec s = optimal_weight();
  const double C = (2 * kS3 - 3) / 4;
  // on the hyperplane x_n = 0 only the H1 term remains
  const HardyParams hq(3, 2, 0.2, 0.3);
  const WeightSpec q = WeightSpec::p2(hq, {-0.4, 0.7});
  const std::vector<double> x0{0.3, -0.8, 0.0};
  const double y2 = 0.73;
  CHECK(rel(weight_p2(x0, q), H1(-0.4, 0.7, hq) * weight_V(x0, q) / y2) <= 1e-14);

  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int i = 0; i < 20; ++i) {
    std::vector<double> x{U(rng), U(rng), U(rng)};
    if (std::hypot(x[0], x[1]) < 0.1) x[0] = 0.5;
    const double y = std::hypot(x[0], x[1]), r = std::hypot(y, x[2]);
    const double expect = C / y / r;  // C |x'|^(2a) |x|^(2b), a = b = -1/2
    CHECK(rel(weight_p2(x, s), expect) <= 1e-13);
    CHECK(rel(oracle_for(s, x), expect) <= 1e-7);
  }

  const std::vector<double> z{1.0, 1.0};
  CHECK(weight_p2(z, WeightSpec::p2(HardyParams(2, 2, 0, 0), {0.0, 0.0})) == 0.0);
  const std::vector<double> bad{0.0, 0.0, 1.0};
  CHECK_THROWS_AS(weight_p2(bad, s), Error);
}

TEST_CASE("collapsed weight is exact on the constraint") {
  const WeightSpec s = optimal_weight();
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> U(-2, 2);
  double lo = INFINITY, hi = -INFINITY;
  for (int i = 0; i < 100; ++i) {
    std::vector<double> x{U(rng), U(rng), U(rng)};
    if (std::hypot(x[0], x[1]) < 0.05) continue;
    const double y = std::hypot(x[0], x[1]), r = std::hypot(y, x[2]);
    const double c = weight_p2(x, s) * y * r;
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  CHECK((hi - lo) / std::abs(hi) <= 1e-9);
}

TEST_CASE("weight_general_p examples") {
  // gamma0 at beta = 0 leaves |gamma0|^p V |x'|^-p
  const HardyParams hp(3, 3, 0.2, 0.0);
  const double g0 = -(2 + 3 * 0.2) / 3;
  const WeightSpec s = WeightSpec::power(hp, g0);
  const std::vector<double> x{0.4, -0.3, 0.9};
  CHECK(rel(weight_general_p(x, s), std::pow(std::abs(g0), 3) * weight_V(x, s) / std::pow(0.5, 3)) <= 1e-13);

  // p = 2 reduction
  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int i = 0; i < 20; ++i) {
    const HardyParams h2(3, 2, 0.3 * U(rng), 0.3 * U(rng));
    const double g = U(rng);
    std::vector<double> y{U(rng), U(rng), U(rng)};
    if (std::hypot(y[0], y[1]) < 0.1) y[1] = 0.6;
    const double a = weight_general_p(y, WeightSpec::power(h2, g));
    const double b = weight_p2(y, WeightSpec::p2(h2, {g, 0.0}));
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
  }

  const WeightSpec t = WeightSpec::power(HardyParams(3, 3, 0, 0.5, 2), -2.0 / 3.0);
  const std::vector<double> p{1.0, 0.0, 1.0};
  CHECK(rel(oracle_for(t, p), weight_general_p(p, t)) <= 1e-6);

  CHECK(weight_general_p(x, WeightSpec::power(HardyParams(3, 1.5, 0, 0), 0.0)) == 0.0);
}

TEST_CASE("divergence oracle examples") {
  // classical Hardy weight
  auto one = [](std::span<const double>) { return 1.0; };
  auto fh = [](std::span<const double> y) { return std::pow(y[0] * y[0] + y[1] * y[1] + y[2] * y[2], -0.25); };
  const std::vector<double> e1{1.0, 0.0, 0.0};
  CHECK(divergence_oracle(one, fh, e1, 1e-3) == doctest::Approx(0.25).epsilon(1e-8));

  // log-weight identity on the half disc
  auto V = [](std::span<const double> y) { return std::abs(y[0]) / std::hypot(y[0], y[1]); };
  auto f = [](std::span<const double> y) { return std::sqrt(-std::log(std::hypot(y[0], y[1]))); };
  const std::vector<double> x{0.3, 0.1};
  const double r = std::hypot(0.3, 0.1), L = std::log(r);
  CHECK(rel(divergence_oracle(V, f, x, default_fd_step(x, 1)), 0.3 / (4 * r * r * r * L * L)) <= 1e-6);

  const WeightSpec s = optimal_weight();
  const std::vector<double> z{0.5, -0.2, 0.8};
  CHECK(rel(oracle_for(s, z), weight_p2(z, s)) <= 1e-7);

  // p = 1 with a unit field has zero divergence
  auto f1 = [](std::span<const double> y) { return std::abs(y[0]); };
  const std::vector<double> w{0.7, -0.2};
  CHECK(std::abs(divergence_oracle_p(one, f1, 1.0, w, 1e-3)) <= 1e-10);

  CHECK_THROWS_AS(divergence_oracle(one, fh, e1, 0.0), Error);
  auto zero = [](std::span<const double>) { return 0.0; };
  CHECK_THROWS_AS(divergence_oracle(one, zero, e1, 1e-3), Error);
}

TEST_CASE("oracle at p = 2 agrees with the p-oracle") {
  std::mt19937_64 rng(36);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int i = 0; i < 50; ++i) {
    const WeightSpec s = WeightSpec::p2(HardyParams(3, 2, 0.3 * U(rng), 0.3 * U(rng)), {U(rng), U(rng)});
    std::vector<double> x{U(rng), U(rng), U(rng)};
    if (std::hypot(x[0], x[1]) < 0.1) x[0] = 0.4;
    auto V = [&](std::span<const double> y) { return weight_V(y, s); };
    auto f = [&](std::span<const double> y) { return weight_f(y, s); };
    const double h = default_fd_step(x, 2);
    const double a = divergence_oracle(V, f, x, h), b = divergence_oracle_p(V, f, 2.0, x, h);
    CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("ill-conditioned steps are reported") {
  auto V = [](std::span<const double>) { return 1.0; };
  auto f = [](std::span<const double> y) { return std::exp(40.0 * y[0]) + 2.0; };
  const std::vector<double> x{0.0, 0.5};
  CHECK_THROWS_AS(divergence_oracle(V, f, x, 0.2), Error);
}
