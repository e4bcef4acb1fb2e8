#pragma once

#include <string_view>
#include <vector>

#include "hardy/params.hpp"

namespace hardy {

enum class ConstantKind { SHARP, LOWER_BOUND, CONJECTURED };
enum class ConstantBranch { K_LE_0, K_IN_0_1, K_GT_1, BETA_NONNEG, BETA_NEG, CKN, GENERAL_K };

struct ConstantResult {
  double value;
  ConstantKind kind;
  ConstantBranch branch;
};

/// Trial-function exponents: f(x) = |x'|^theta |x|^lambda.
struct ExponentPair {
  double theta;
  double lambda;
};

struct BranchPoint {
  ExponentPair point;
  double value;  // H1 at the point
};

/// p = 2, k = n-1: ((n-1+2a)^2 - (sqrt(max(K,1)) - 1)^2) / 4.
ConstantResult sharp_constant_p2(const HardyParams& params);

/// Any p >= 1. beta >= 0 is sharp; beta < 0 gives a lower bound (or the p = 2 sharp value when k = n-1).
/// Throws Error(Unsupported) when beta < 0, p != 2 and k + p(alpha+beta) <= 0.
ConstantResult sharp_constant_general_p(const HardyParams& params);

/// p = 2, any k: ((k+2a)^2 - (sqrt(max(K,(n-k)^2)) - (n-k))^2) / 4.
/// Conjectured for k < n-1 and checked against the optimizer in the tests.
ConstantResult sharp_constant_general_k_p2(const HardyParams& params);

/// Points on H2 = 0 where the maximum of H1 is attained in each regime (p = 2, k = n-1).
/// For K <= 0 the larger lambda root is returned.
std::vector<BranchPoint> branch_candidates(const HardyParams& params);

/// (n + p(alpha + gamma1)) / p; sharp when alpha = beta = mu and gamma3 - gamma2 + 1 > 0.
/// Throws Error(Inadmissible) unless the parameters are integrable and balanced.
ConstantResult ckn_constant(const CknParams& params);

std::string_view to_string(ConstantKind kind);
std::string_view to_string(ConstantBranch branch);

}  // namespace hardy
