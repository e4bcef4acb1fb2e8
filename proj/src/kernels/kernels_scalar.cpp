#include <limits>

#include "hardy/kernels.hpp"

namespace hardy::kernels::scalar {

double weighted_sum(std::span<const double> w, std::span<const double> f) {
  const std::size_t n = w.size() < f.size() ? w.size() : f.size();
  double lane[kLanes] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const double prod = w[i] * f[i];
    lane[i % kLanes] += prod;
  }
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

RowMax constrained_row_max(const ConstraintRow& row, std::span<const double> lambdas, double slack) {
  RowMax best{-std::numeric_limits<double>::infinity(), -1};
  const double floor = -slack;
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    const double lam = lambdas[j];
    const double h2 = lam * (row.lin + lam) + row.offset;
    const double g = row.h_theta - h2;
    if (h2 >= floor && g > best.value) best = {g, static_cast<std::ptrdiff_t>(j)};
  }
  return best;
}

}  // namespace hardy::kernels::scalar
