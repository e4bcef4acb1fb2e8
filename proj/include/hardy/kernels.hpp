#pragma once

// Data-parallel inner loops. Every backend accumulates in the same 4-lane
// order as the scalar reference, so results are bit-identical across
// backends (the build disables FMA contraction).

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace hardy::kernels {

enum class Backend { Scalar, Avx2, Neon };

inline constexpr std::size_t kLanes = 4;

/// One theta-row of the constrained grid search. For each lambda:
///   h2 = lambda * (lin + lambda) + offset,  g = h_theta - h2.
struct ConstraintRow {
  double h_theta;
  double lin;
  double offset;
};

struct RowMax {
  double value;
  std::ptrdiff_t index;  // -1 when no lambda is feasible
};

/// sum_i w[i] * f[i]; element i accumulates in lane i % 4, lanes fold as (l0+l1)+(l2+l3).
double weighted_sum(std::span<const double> w, std::span<const double> f);

/// max g over lambdas with h2 >= -slack; ties resolve to the lowest index.
RowMax constrained_row_max(const ConstraintRow& row, std::span<const double> lambdas, double slack);

Backend active_backend();
/// Throws Error(Unsupported) if the backend is not compiled in or the CPU lacks it.
void set_backend(Backend backend);
std::vector<Backend> available_backends();
std::string_view to_string(Backend backend);

namespace scalar {
double weighted_sum(std::span<const double> w, std::span<const double> f);
RowMax constrained_row_max(const ConstraintRow& row, std::span<const double> lambdas, double slack);
}  // namespace scalar

namespace avx2 {
double weighted_sum(std::span<const double> w, std::span<const double> f);
RowMax constrained_row_max(const ConstraintRow& row, std::span<const double> lambdas, double slack);
}  // namespace avx2

namespace neon {
double weighted_sum(std::span<const double> w, std::span<const double> f);
RowMax constrained_row_max(const ConstraintRow& row, std::span<const double> lambdas, double slack);
}  // namespace neon

}  // namespace hardy::kernels
