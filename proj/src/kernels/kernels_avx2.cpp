#include <immintrin.h>

#include <limits>

#include "hardy/kernels.hpp"

namespace hardy::kernels::avx2 {

double weighted_sum(std::span<const double> w, std::span<const double> f) {
  const std::size_t n = w.size() < f.size() ? w.size() : f.size();
  const std::size_t blocks = n / kLanes * kLanes;
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < blocks; i += kLanes) {
    const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(w.data() + i), _mm256_loadu_pd(f.data() + i));
    acc = _mm256_add_pd(acc, prod);
  }
  alignas(32) double lane[kLanes];
  _mm256_store_pd(lane, acc);
  for (std::size_t i = blocks; i < n; ++i) {
    const double prod = w[i] * f[i];
    lane[i % kLanes] += prod;
  }
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

RowMax constrained_row_max(const ConstraintRow& row, std::span<const double> lambdas, double slack) {
  const std::size_t n = lambdas.size();
  const std::size_t blocks = n / kLanes * kLanes;
  const double ninf = -std::numeric_limits<double>::infinity();

  const __m256d lin = _mm256_set1_pd(row.lin);
  const __m256d offset = _mm256_set1_pd(row.offset);
  const __m256d h_theta = _mm256_set1_pd(row.h_theta);
  const __m256d floor = _mm256_set1_pd(-slack);
  __m256d best = _mm256_set1_pd(ninf);
  __m256d best_idx = _mm256_set1_pd(-1.0);
  __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  const __m256d step = _mm256_set1_pd(static_cast<double>(kLanes));

  for (std::size_t j = 0; j < blocks; j += kLanes) {
    const __m256d lam = _mm256_loadu_pd(lambdas.data() + j);
    const __m256d h2 = _mm256_add_pd(_mm256_mul_pd(lam, _mm256_add_pd(lin, lam)), offset);
    const __m256d g = _mm256_sub_pd(h_theta, h2);
    const __m256d feasible = _mm256_cmp_pd(h2, floor, _CMP_GE_OQ);
    const __m256d better = _mm256_and_pd(feasible, _mm256_cmp_pd(g, best, _CMP_GT_OQ));
    best = _mm256_blendv_pd(best, g, better);
    best_idx = _mm256_blendv_pd(best_idx, idx, better);
    idx = _mm256_add_pd(idx, step);
  }

  alignas(32) double lane_val[kLanes];
  alignas(32) double lane_idx[kLanes];
  _mm256_store_pd(lane_val, best);
  _mm256_store_pd(lane_idx, best_idx);

  RowMax out{ninf, -1};
  for (std::size_t l = 0; l < kLanes; ++l) {
    if (lane_idx[l] < 0.0) continue;
    const auto li = static_cast<std::ptrdiff_t>(lane_idx[l]);
    if (lane_val[l] > out.value || (lane_val[l] == out.value && li < out.index)) out = {lane_val[l], li};
  }
  for (std::size_t j = blocks; j < n; ++j) {
    const double lam = lambdas[j];
    const double h2 = lam * (row.lin + lam) + row.offset;
    const double g = row.h_theta - h2;
    if (h2 >= -slack && g > out.value) out = {g, static_cast<std::ptrdiff_t>(j)};
  }
  return out;
}

}  // namespace hardy::kernels::avx2
