#include <atomic>

#include "hardy/error.hpp"
#include "hardy/kernels.hpp"

namespace hardy::kernels {

namespace {

bool cpu_supports(Backend backend) {
  switch (backend) {
    case Backend::Scalar: return true;
    case Backend::Avx2:
#if defined(HARDY_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(HARDY_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend detect() {
  if (cpu_supports(Backend::Avx2)) return Backend::Avx2;
  if (cpu_supports(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

}  // namespace

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend backend) {
  if (!cpu_supports(backend))
    throw Error(ErrorCode::Unsupported, std::string("kernel backend not available: ") + std::string(to_string(backend)));
  current().store(backend, std::memory_order_relaxed);
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon})
    if (cpu_supports(b)) out.push_back(b);
  return out;
}

std::string_view to_string(Backend backend) {
  switch (backend) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "?";
}

double weighted_sum(std::span<const double> w, std::span<const double> f) {
  switch (active_backend()) {
#if defined(HARDY_HAVE_AVX2)
    case Backend::Avx2: return avx2::weighted_sum(w, f);
#endif
#if defined(HARDY_HAVE_NEON)
    case Backend::Neon: return neon::weighted_sum(w, f);
#endif
    default: return scalar::weighted_sum(w, f);
  }
}

RowMax constrained_row_max(const ConstraintRow& row, std::span<const double> lambdas, double slack) {
  switch (active_backend()) {
#if defined(HARDY_HAVE_AVX2)
    case Backend::Avx2: return avx2::constrained_row_max(row, lambdas, slack);
#endif
#if defined(HARDY_HAVE_NEON)
    case Backend::Neon: return neon::constrained_row_max(row, lambdas, slack);
#endif
    default: return scalar::constrained_row_max(row, lambdas, slack);
  }
}

}  // namespace hardy::kernels
