#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <vector>

#include "hardy/closed_form.hpp"
#include "hardy/error.hpp"
#include "hardy/optimizer.hpp"
#include "hardy/weights.hpp"

using namespace hardy;

TEST_CASE("maximize: K > 1 example") {
  const HardyParams hp(3, 2, -0.5, -0.5);
  const auto r = maximize(hp);
  const double s3 = std::sqrt(3.0);
  CHECK(std::abs(r.value - (2 * s3 - 3) / 4) <= 1e-6);
  CHECK(r.active_constraint);
  CHECK(r.argmax.theta == doctest::Approx(-(2 - s3) / 2).epsilon(1e-4));
  CHECK(r.argmax.lambda == doctest::Approx((1 - s3) / 2).epsilon(1e-4));
  CHECK(std::abs(r.diagnostics.constraint_residual) <= 1e-8);
  CHECK(r.diagnostics.grid_value <= r.value + 1e-12);
}

TEST_CASE("maximize: K = 0 and 0 < K <= 1 examples") {
  auto r = maximize(HardyParams(3, 2, 0, 0));
  CHECK(std::abs(r.value - 1.0) <= 1e-6);
  CHECK(r.argmax.theta == doctest::Approx(-1.0).epsilon(1e-4));

  r = maximize(HardyParams(3, 2, 0, -0.05));
  CHECK(std::abs(r.value - 1.0) <= 1e-6);
  const double l0 = 0.05 - (1 + std::sqrt(1 - 0.59)) / 2;
  CHECK(r.argmax.theta == doctest::Approx(-1.0).epsilon(1e-4));
  CHECK(r.argmax.lambda == doctest::Approx(l0).epsilon(1e-4));
  CHECK(r.active_constraint);
}

TEST_CASE("maximize rejects bad input") {
  CHECK_THROWS_AS(maximize(HardyParams(3, 3, 0, 0)), Error);
  CHECK_THROWS_AS(maximize(HardyParams(2, 2, -0.5, 0)), Error);
}

TEST_CASE("sweep_regimes over the 11 x 11 grid") {
  std::vector<double> ag, bg;
  for (int i = 0; i <= 10; ++i) {
    ag.push_back(-0.9 + 0.18 * i);
    bg.push_back(-1.4 + 0.28 * i);
  }
  const auto rows = sweep_regimes(3, ag, bg);
  REQUIRE(rows.size() == 121);
  double worst = 0.0;
  int admissible = 0;
  for (const auto& r : rows) {
    if (!r.admissible) continue;
    ++admissible;
    CHECK_FALSE(r.nonconverged);
    worst = std::max(worst, r.discrepancy);
  }
  CHECK(admissible > 100);
  CHECK(worst <= 1e-6);

  const auto one = sweep_regimes(3, {-0.5}, {-0.5});
  REQUIRE(one.size() == 1);
  CHECK(one[0].discrepancy <= 1e-6);
  CHECK(one[0].branch_agreement);
  CHECK(sweep_regimes(3, {}, {}).empty());
}

TEST_CASE("active constraint whenever beta != 0; ties at beta = 0 carry the vertex value") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> U(-2, 2);
  int tested = 0;
  while (tested < 60) {
    const HardyParams hp(2 + tested % 4, 2, U(rng), U(rng));
    if (!admissible_hardy(hp) || std::abs(hp.beta()) < 1e-3) continue;
    ++tested;
    const auto r = maximize(hp);
    CHECK(r.active_constraint);
    CHECK(H2(r.argmax.theta, r.argmax.lambda, hp) >= -1e-8);
  }
  for (int n = 2; n <= 5; ++n) {
    const HardyParams hp(n, 2, 0.25, 0.0);
    const double expect = (n - 1 + 0.5) * (n - 1 + 0.5) / 4;
    CHECK(std::abs(maximize(hp).value - expect) <= 1e-6);
  }
}

TEST_CASE("value is non-increasing as beta decreases below zero") {
  for (int n : {3, 4})
    for (double a : {-0.4, 0.0, 0.5}) {
      double prev = INFINITY;
      for (double b = 0.0; b > -(n + 2 * a) / 2 + 0.05; b -= 0.1) {
        const double v = maximize(HardyParams(n, 2, a, b)).value;
        CHECK(v <= prev + 1e-8);
        prev = v;
      }
    }
}

TEST_CASE("oracle matches the closed form on 200 random instances") {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> U(-2, 2);
  std::uniform_int_distribution<int> N(2, 5);
  int tested = 0;
  double worst = 0.0;
  while (tested < 200) {
    const HardyParams hp(N(rng), 2, U(rng), U(rng));
    if (!admissible_hardy(hp)) continue;
    ++tested;
    const double c = sharp_constant_p2(hp).value;
    worst = std::max(worst, std::abs(maximize(hp).value - c) / (1 + c));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("corrected general-k formula matches the oracle on 100 random instances") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> U(-2, 2);
  int tested = 0;
  double worst = 0.0;
  while (tested < 100) {
    const int n = 3 + tested % 3;
    const int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 2));
    const HardyParams hp(n, 2, U(rng), U(rng), k);
    if (!admissible_hardy(hp)) continue;
    ++tested;
    worst = std::max(worst, std::abs(maximize(hp).value - sharp_constant_general_k_p2(hp).value));
  }
  CHECK(worst <= 1e-6);
  CHECK(std::abs(maximize(HardyParams(5, 2, 0, -1, 2)).value - 0.75) <= 1e-6);
  CHECK(std::abs(maximize(HardyParams(4, 2, 0, 0, 2)).value - 1.0) <= 1e-6);
}

TEST_CASE("result does not depend on the worker count") {
  const HardyParams hp(4, 2, 0.3, -1.1);
  const auto a = maximize(hp);
  setenv("HARDY_THREADS", "1", 1);
  const auto b = maximize(hp);
  setenv("HARDY_THREADS", "3", 1);
  const auto c = maximize(hp);
  unsetenv("HARDY_THREADS");
  CHECK(a.value == b.value);
  CHECK(a.value == c.value);
  CHECK(a.argmax.lambda == c.argmax.lambda);
}
