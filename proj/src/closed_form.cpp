#include "hardy/closed_form.hpp"

#include <algorithm>
#include <cmath>

#include "hardy/error.hpp"
#include "hardy/weights.hpp"

namespace hardy {

namespace {

void require_p2(const HardyParams& params, const char* who) {
  if (params.p() != 2.0) throw Error(ErrorCode::InvalidArgument, std::string(who) + " requires p = 2");
}

void require_full_axis(const HardyParams& params, const char* who) {
  if (!params.full_axis())
    throw Error(ErrorCode::InvalidArgument, std::string(who) + " requires k = n-1 (use the general-k path)");
}

ConstantBranch p2_branch(double K) {
  if (classify(K) == Family::K_GT_1) return ConstantBranch::K_GT_1;
  return K <= 0.0 ? ConstantBranch::K_LE_0 : ConstantBranch::K_IN_0_1;
}

}  // namespace

ConstantResult sharp_constant_p2(const HardyParams& params) {
  require_p2(params, "sharp_constant_p2");
  require_full_axis(params, "sharp_constant_p2");
  const double K = compute_K(params).k_value;
  const double lead = params.n() - 1 + 2.0 * params.alpha();
  const double corr = std::sqrt(std::max(K, 1.0)) - 1.0;
  return {(lead * lead - corr * corr) / 4.0, ConstantKind::SHARP, p2_branch(K)};
}

ConstantResult sharp_constant_general_p(const HardyParams& params) {
  if (!admissible_hardy(params)) compute_K(params);  // throws with the violated condition
  const double p = params.p();
  const double a = params.alpha();
  const double b = params.beta();
  const double k = params.k();
  if (b >= 0.0) return {std::pow((k + p * a) / p, p), ConstantKind::SHARP, ConstantBranch::BETA_NONNEG};
  if (p == 2.0 && params.full_axis()) return sharp_constant_p2(params);
  const double base = k + p * (a + b);
  if (base > 0.0) return {std::pow(base / p, p), ConstantKind::LOWER_BOUND, ConstantBranch::BETA_NEG};
  throw Error(ErrorCode::Unsupported, "no bound known for beta < 0, p != 2 with k + p(alpha+beta) <= 0");
}

ConstantResult sharp_constant_general_k_p2(const HardyParams& params) {
  require_p2(params, "sharp_constant_general_k_p2");
  if (params.full_axis()) return sharp_constant_p2(params);
  const double K = compute_K(params).k_value;
  const double m = params.n() - params.k();
  const double lead = params.k() + 2.0 * params.alpha();
  const double corr = std::sqrt(std::max(K, m * m)) - m;
  return {(lead * lead - corr * corr) / 4.0, ConstantKind::CONJECTURED, ConstantBranch::GENERAL_K};
}

std::vector<BranchPoint> branch_candidates(const HardyParams& params) {
  require_p2(params, "branch_candidates");
  require_full_axis(params, "branch_candidates");
  const double K = compute_K(params).k_value;
  const double n = params.n();
  const double a = params.alpha();
  const double b = params.beta();

  std::vector<BranchPoint> out;
  auto push = [&](double theta, double lambda) {
    out.push_back({{theta, lambda}, H1(theta, lambda, params)});
  };

  if (classify(K) != Family::K_GT_1) {
    const double theta0 = (1.0 - n - 2.0 * a) / 2.0;
    // H2(theta0, .) has discriminant 1 - K; K <= 0 keeps the larger root.
    const double root = std::sqrt(std::max(1.0 - K, 0.0));
    const double lambda0 = K <= 0.0 ? -b - (1.0 - root) / 2.0 : -b - (1.0 + root) / 2.0;
    push(theta0, lambda0);
    return out;
  }
  const double sk = std::sqrt(K);
  push((-(n + 2.0 * a) + sk) / 2.0, -b - sk / 2.0);
  push(-((n + 2.0 * a) + sk) / 2.0, -b + sk / 2.0);
  return out;
}

ConstantResult ckn_constant(const CknParams& params) {
  const CknAdmissibility adm = admissible_ckn(params);
  if (!adm.integrable || !adm.balanced) {
    std::string msg = "CKN parameters rejected";
    for (const auto& v : ckn_violations(params)) msg += "; " + v;
    throw Error(ErrorCode::Inadmissible, msg);
  }
  const double p = params.p();
  const double value = (params.n() + p * (params.alpha() + params.gamma1())) / p;
  const bool equal_weights = std::abs(params.alpha() - params.beta()) <= kCknTolerance &&
                             std::abs(params.alpha() - params.mu()) <= kCknTolerance;
  const bool decays = params.gamma3() - params.gamma2() + 1.0 > 0.0;
  return {value, equal_weights && decays ? ConstantKind::SHARP : ConstantKind::LOWER_BOUND,
          ConstantBranch::CKN};
}

std::string_view to_string(ConstantKind kind) {
  switch (kind) {
    case ConstantKind::SHARP: return "SHARP";
    case ConstantKind::LOWER_BOUND: return "LOWER_BOUND";
    case ConstantKind::CONJECTURED: return "CONJECTURED";
  }
  return "?";
}

std::string_view to_string(ConstantBranch branch) {
  switch (branch) {
    case ConstantBranch::K_LE_0: return "K_LE_0";
    case ConstantBranch::K_IN_0_1: return "K_IN_0_1";
    case ConstantBranch::K_GT_1: return "K_GT_1";
    case ConstantBranch::BETA_NONNEG: return "BETA_NONNEG";
    case ConstantBranch::BETA_NEG: return "BETA_NEG";
    case ConstantBranch::CKN: return "CKN";
    case ConstantBranch::GENERAL_K: return "GENERAL_K";
  }
  return "?";
}

}  // namespace hardy
