#include <arm_neon.h>

#include <limits>

#include "hardy/kernels.hpp"

// Two float64x2 registers emulate the 4-lane layout of the scalar reference.

namespace hardy::kernels::neon {

double weighted_sum(std::span<const double> w, std::span<const double> f) {
  const std::size_t n = w.size() < f.size() ? w.size() : f.size();
  const std::size_t blocks = n / kLanes * kLanes;
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < blocks; i += kLanes) {
    lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(w.data() + i), vld1q_f64(f.data() + i)));
    hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(w.data() + i + 2), vld1q_f64(f.data() + i + 2)));
  }
  double lane[kLanes];
  vst1q_f64(lane, lo);
  vst1q_f64(lane + 2, hi);
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

  const float64x2_t lin = vdupq_n_f64(row.lin);
  const float64x2_t offset = vdupq_n_f64(row.offset);
  const float64x2_t h_theta = vdupq_n_f64(row.h_theta);
  const float64x2_t floor = vdupq_n_f64(-slack);
  float64x2_t best[2] = {vdupq_n_f64(ninf), vdupq_n_f64(ninf)};
  float64x2_t best_idx[2] = {vdupq_n_f64(-1.0), vdupq_n_f64(-1.0)};
  const double base_idx[kLanes] = {0.0, 1.0, 2.0, 3.0};
  float64x2_t idx[2] = {vld1q_f64(base_idx), vld1q_f64(base_idx + 2)};
  const float64x2_t step = vdupq_n_f64(static_cast<double>(kLanes));

  for (std::size_t j = 0; j < blocks; j += kLanes) {
    for (int h = 0; h < 2; ++h) {
      const float64x2_t lam = vld1q_f64(lambdas.data() + j + 2 * h);
      const float64x2_t h2 = vaddq_f64(vmulq_f64(lam, vaddq_f64(lin, lam)), offset);
      const float64x2_t g = vsubq_f64(h_theta, h2);
      const uint64x2_t better = vandq_u64(vcgeq_f64(h2, floor), vcgtq_f64(g, best[h]));
      best[h] = vbslq_f64(better, g, best[h]);
      best_idx[h] = vbslq_f64(better, idx[h], best_idx[h]);
      idx[h] = vaddq_f64(idx[h], step);
    }
  }

  double lane_val[kLanes];
  double lane_idx[kLanes];
  vst1q_f64(lane_val, best[0]);
  vst1q_f64(lane_val + 2, best[1]);
  vst1q_f64(lane_idx, best_idx[0]);
  vst1q_f64(lane_idx + 2, best_idx[1]);

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

}  // namespace hardy::kernels::neon
