#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "hardy/error.hpp"
#include "hardy/kernels.hpp"

using namespace hardy;
namespace k = hardy::kernels;

namespace {

std::uint64_t bits(double v) { return std::bit_cast<std::uint64_t>(v); }

bool backend_has(k::Backend b) {
  for (auto a : k::available_backends())
    if (a == b) return true;
  return false;
}

}  // namespace

TEST_CASE("scalar reference accumulates in four lanes") {
  const std::vector<double> w{1, 1, 1, 1, 1};
  const std::vector<double> f{1e16, 1, -1e16, 1, 3};
  // lanes: l0 = 1e16 + 3, l1 = 1, l2 = -1e16, l3 = 1 -> (l0 + l1) + (l2 + l3)
  const double l0 = 1e16 + 3.0;
  CHECK(k::scalar::weighted_sum(w, f) == (l0 + 1.0) + (-1e16 + 1.0));
  CHECK(k::scalar::weighted_sum({}, {}) == 0.0);
}

TEST_CASE("row max picks the lowest index among ties and honours slack") {
  const std::vector<double> lam{-2, -1, 0, 1, 2};
  // h2 = lam (lam + 0) + 0 = lam^2 >= 0 everywhere; g = 1 - lam^2
  auto r = k::scalar::constrained_row_max({1.0, 0.0, 0.0}, lam, 0.0);
  CHECK(r.index == 2);
  CHECK(r.value == 1.0);
  // h2 = lam^2 - 1: feasible only for |lam| >= 1; g = 1 - h2 = 2 - lam^2, tie at -1 and 1
  r = k::scalar::constrained_row_max({1.0, 0.0, -1.0}, lam, 0.0);
  CHECK(r.index == 1);
  CHECK(r.value == 1.0);
  r = k::scalar::constrained_row_max({1.0, 0.0, -10.0}, lam, 0.0);
  CHECK(r.index == -1);
}

TEST_CASE("backends are bit-identical to the scalar reference") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> U(-1, 1);
  for (auto b : k::available_backends()) {
    CAPTURE(k::to_string(b));
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 17u, 64u, 1001u}) {
      std::vector<double> w(n), f(n), lam(n);
      for (std::size_t i = 0; i < n; ++i) {
        w[i] = U(rng);
        f[i] = U(rng) * std::pow(10.0, 8 * U(rng));
        lam[i] = 5 * U(rng);
      }
      k::set_backend(b);
      const double s = k::weighted_sum(w, f);
      const k::ConstraintRow row{U(rng), 3 * U(rng), U(rng)};
      const auto r = k::constrained_row_max(row, lam, 1e-6);
      k::set_backend(k::Backend::Scalar);
      CHECK(bits(s) == bits(k::scalar::weighted_sum(w, f)));
      const auto ref = k::scalar::constrained_row_max(row, lam, 1e-6);
      CHECK(r.index == ref.index);
      if (ref.index >= 0) CHECK(bits(r.value) == bits(ref.value));
    }
    // many equal maxima: the index must match too
    std::vector<double> flat(37, 0.0);
    k::set_backend(b);
    const auto r = k::constrained_row_max({1.0, 0.0, 0.0}, flat, 0.0);
    k::set_backend(k::Backend::Scalar);
    CHECK(r.index == 0);
  }
}

TEST_CASE("dispatch reports and validates backends") {
  CHECK(backend_has(k::Backend::Scalar));
  const auto before = k::active_backend();
  for (auto b : {k::Backend::Avx2, k::Backend::Neon})
    if (!backend_has(b)) CHECK_THROWS_AS(k::set_backend(b), Error);
  k::set_backend(before);
  CHECK(k::active_backend() == before);
  CHECK(k::to_string(k::Backend::Scalar) == "scalar");
}
