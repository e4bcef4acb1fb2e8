#include <doctest.h>

#include <cmath>
#include <random>

#include "hardy/closed_form.hpp"
#include "hardy/error.hpp"
#include "hardy/weights.hpp"

using namespace hardy;

namespace {
const double kS3 = std::sqrt(3.0);
}

TEST_CASE("sharp_constant_p2 examples") {
  auto r = sharp_constant_p2(HardyParams(3, 2, -0.5, -0.5));
  CHECK(std::abs(r.value - (2 * kS3 - 3) / 4) <= 1e-15);
  CHECK(r.kind == ConstantKind::SHARP);
  CHECK(r.branch == ConstantBranch::K_GT_1);

  r = sharp_constant_p2(HardyParams(3, 2, 0, 0));
  CHECK(r.value == 1.0);
  CHECK(r.branch == ConstantBranch::K_LE_0);

  r = sharp_constant_p2(HardyParams(3, 2, 0, -1));
  const double s8 = std::sqrt(8.0);
  CHECK(std::abs(r.value - (4 - (s8 - 1) * (s8 - 1)) / 4) <= 1e-15);

  CHECK(sharp_constant_p2(HardyParams(3, 2, 0, -0.05)).branch == ConstantBranch::K_IN_0_1);
  CHECK_THROWS_AS(sharp_constant_p2(HardyParams(3, 3, 0, 0)), Error);
  CHECK_THROWS_AS(sharp_constant_p2(HardyParams(4, 2, 0, 0, 2)), Error);
  CHECK_THROWS_AS(sharp_constant_p2(HardyParams(2, 2, -0.5, 0)), Error);
}

TEST_CASE("sharp_constant_general_p examples") {
  auto r = sharp_constant_general_p(HardyParams(3, 3, 0, 0.5));
  CHECK(r.value == doctest::Approx(8.0 / 27.0).epsilon(1e-15));
  CHECK(r.kind == ConstantKind::SHARP);
  CHECK(r.branch == ConstantBranch::BETA_NONNEG);

  r = sharp_constant_general_p(HardyParams(3, 2, 0, 0));
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.kind == ConstantKind::SHARP);

  r = sharp_constant_general_p(HardyParams(4, 2, 0.3, -0.2, 2));
  CHECK(r.value == doctest::Approx(1.21).epsilon(1e-14));
  CHECK(r.kind == ConstantKind::LOWER_BOUND);

  r = sharp_constant_general_p(HardyParams(3, 2, -0.5, -0.5));
  CHECK(r.kind == ConstantKind::SHARP);
  CHECK(r.value == doctest::Approx((2 * kS3 - 3) / 4).epsilon(1e-15));

  // beta < 0, p != 2, k + p(alpha + beta) <= 0: nothing is known
  CHECK_THROWS_AS(sharp_constant_general_p(HardyParams(3, 3, 0, -0.9)), Error);
}

TEST_CASE("sharp_constant_general_k_p2 examples") {
  auto r = sharp_constant_general_k_p2(HardyParams(3, 2, -0.5, -0.5, 2));
  CHECK(r.kind == ConstantKind::SHARP);
  CHECK(std::abs(r.value - (2 * kS3 - 3) / 4) <= 1e-15);

  r = sharp_constant_general_k_p2(HardyParams(4, 2, 0, 0, 2));
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.kind == ConstantKind::CONJECTURED);
  CHECK(r.branch == ConstantBranch::GENERAL_K);

  r = sharp_constant_general_k_p2(HardyParams(5, 2, 0, -1, 2));
  CHECK(r.value == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(r.kind == ConstantKind::CONJECTURED);

  CHECK_THROWS_AS(sharp_constant_general_k_p2(HardyParams(4, 3, 0, 0, 2)), Error);
}

TEST_CASE("branch candidates, K > 1") {
  const HardyParams hp(3, 2, -0.5, -0.5);
  const auto c = branch_candidates(hp);
  REQUIRE(c.size() == 2);
  const double t1 = -(2 - kS3) / 2, l1 = 0.5 - kS3 / 2;
  CHECK(c[0].point.theta == doctest::Approx(t1).epsilon(1e-14));
  CHECK(c[0].point.lambda == doctest::Approx(l1).epsilon(1e-14));
  CHECK(c[0].value == doctest::Approx((2 * kS3 - 3) / 4).epsilon(1e-13));
  CHECK(std::abs(l1 * l1 - 2 * hp.beta() * t1) <= 1e-12);
  CHECK(c[1].point.theta == doctest::Approx(-(2 + kS3) / 2).epsilon(1e-14));
  CHECK(H(c[1].point.theta, hp) < H(c[0].point.theta, hp));
  for (const auto& b : c) CHECK(std::abs(H2(b.point.theta, b.point.lambda, hp)) <= 1e-10);
}

TEST_CASE("branch candidates, K <= 1") {
  const HardyParams hp(3, 2, 0, 0);
  auto c = branch_candidates(hp);
  REQUIRE(c.size() == 1);
  CHECK(c[0].point.theta == -1.0);
  CHECK(c[0].value == 1.0);
  // Both roots {0, -1} solve lambda (lambda + 3 + 2 theta) = 0 at theta = -1; the larger is returned.
  CHECK(c[0].point.lambda == 0.0);
  CHECK(H2(-1.0, -1.0, hp) == 0.0);

  const HardyParams hq(3, 2, 0, -0.05);
  c = branch_candidates(hq);
  REQUIRE(c.size() == 1);
  const double K = 0.59;
  CHECK(c[0].point.lambda == doctest::Approx(0.05 - (1 + std::sqrt(1 - K)) / 2).epsilon(1e-14));
  CHECK(c[0].value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(H2(c[0].point.theta, c[0].point.lambda, hq)) <= 1e-10);
}

TEST_CASE("ckn_constant examples") {
  auto r = ckn_constant(CknParams(3, 2, 0, 0, 0, -0.5, 0, 0));
  CHECK(r.value == 1.0);
  CHECK(r.kind == ConstantKind::SHARP);
  CHECK(r.branch == ConstantBranch::CKN);
  r = ckn_constant(CknParams(2, 2, 0, 0, 0, -0.5, 0, 0));
  CHECK(r.value == 0.5);
  CHECK(r.kind == ConstantKind::SHARP);
  r = ckn_constant(CknParams(3, 3, 0, 0, 0, 0, 1, 0));
  CHECK(r.value == 1.0);
  CHECK(r.kind == ConstantKind::LOWER_BOUND);
  CHECK_THROWS_AS(ckn_constant(CknParams(3, 2, 0, 0, 0, 0, 0, 0)), Error);
}

TEST_CASE("explicit constant at alpha = beta = -1/2") {
  for (int n = 3; n <= 10; ++n) {
    const double c = sharp_constant_p2(HardyParams(n, 2, -0.5, -0.5)).value;
    CHECK(std::abs(c - ((n * n - 6.0 * n + 6) / 4 + std::sqrt(2.0 * n - 3) / 2)) <= 1e-12);
  }
}

TEST_CASE("positivity on random admissible instances") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> U(-2, 2);
  int tested = 0;
  while (tested < 10000) {
    const HardyParams hp(2 + tested % 6, 2, U(rng), U(rng));
    if (!admissible_hardy(hp)) continue;
    ++tested;
    REQUIRE(sharp_constant_p2(hp).value > 0.0);
  }
}

TEST_CASE("continuity across K = 1") {
  // K(beta) = -4 beta (n + 2 alpha + beta) = 1 at beta* = (-(n+2a) + sqrt((n+2a)^2 - 1))/2 ... take the root with K rising.
  for (int n = 2; n <= 6; ++n)
    for (double a : {-0.3, 0.0, 0.7}) {
      const double s = n + 2 * a;
      const double bstar = (-s + std::sqrt(s * s - 1)) / 2;  // -4 b (s + b) = 1
      const double lo = sharp_constant_p2(HardyParams(n, 2, a, bstar + 1e-7)).value;
      const double hi = sharp_constant_p2(HardyParams(n, 2, a, bstar - 1e-7)).value;
      CHECK(std::abs(lo - hi) <= 1e-4);
    }
}

TEST_CASE("beta = 0 collapse") {
  for (int n = 2; n <= 6; ++n)
    for (double a : {-0.2, 0.0, 0.4, 1.3}) {
      const HardyParams hp(n, 2, a, 0);
      if (!admissible_hardy(hp)) continue;
      const double ref = (n - 1 + 2 * a) * (n - 1 + 2 * a) / 4;
      CHECK(std::abs(sharp_constant_general_p(hp).value - sharp_constant_p2(hp).value) <= 1e-12);
      CHECK(std::abs(sharp_constant_p2(hp).value - ref) <= 1e-12);
    }
}

TEST_CASE("branch points lie on the constraint for random instances") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> U(-2, 2);
  int tested = 0;
  while (tested < 2000) {
    const HardyParams hp(2 + tested % 5, 2, U(rng), U(rng));
    if (!admissible_hardy(hp)) continue;
    ++tested;
    for (const auto& b : branch_candidates(hp)) {
      const double scale = 1 + std::abs(b.point.lambda) * (1 + std::abs(b.point.lambda)) + std::abs(b.point.theta);
      REQUIRE(std::abs(H2(b.point.theta, b.point.lambda, hp)) <= 1e-10 * scale);
    }
  }
}
