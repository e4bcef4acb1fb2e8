#include "hardy/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hardy/error.hpp"

namespace hardy {

HardyParams::HardyParams(int n, double p, double alpha, double beta, int k)
    : n_(n), k_(k <= 0 ? n - 1 : k), p_(p), alpha_(alpha), beta_(beta) {
  if (n_ < 2) throw Error(ErrorCode::InvalidArgument, "dimension n must be >= 2");
  if (k_ < 1 || k_ > n_ - 1) throw Error(ErrorCode::InvalidArgument, "axis dimension k must satisfy 1 <= k <= n-1");
  if (!(p_ >= 1.0)) throw Error(ErrorCode::InvalidArgument, "exponent p must be >= 1");
  if (!std::isfinite(alpha_) || !std::isfinite(beta_) || !std::isfinite(p_))
    throw Error(ErrorCode::InvalidArgument, "exponents must be finite");
}

CknParams::CknParams(int n, double p, double alpha, double beta, double mu, double gamma1,
                     double gamma2, double gamma3)
    : n_(n), p_(p), alpha_(alpha), beta_(beta), mu_(mu), gamma1_(gamma1), gamma2_(gamma2), gamma3_(gamma3) {
  if (n_ < 2) throw Error(ErrorCode::InvalidArgument, "dimension n must be >= 2");
  if (!(p_ > 1.0)) throw Error(ErrorCode::InvalidArgument, "CKN exponent p must be > 1");
  for (double v : {p, alpha, beta, mu, gamma1, gamma2, gamma3})
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "exponents must be finite");
}

bool admissible_hardy(const HardyParams& params) {
  const double p = params.p();
  return params.k() + p * params.alpha() > 0.0 && p * (params.alpha() + params.beta()) > -params.n();
}

std::vector<std::string> hardy_violations(const HardyParams& params) {
  std::vector<std::string> out;
  const double p = params.p();
  if (!(params.k() + p * params.alpha() > 0.0)) {
    std::ostringstream msg;
    if (params.full_axis())
      msg << "p*alpha > 1-n violated (p*alpha = " << p * params.alpha() << ", 1-n = " << 1 - params.n() << ")";
    else
      msg << "k + p*alpha > 0 violated (k + p*alpha = " << params.k() + p * params.alpha() << ")";
    out.push_back(msg.str());
  }
  if (!(p * (params.alpha() + params.beta()) > -params.n())) {
    std::ostringstream msg;
    msg << "p*(alpha+beta) > -n violated (p*(alpha+beta) = " << p * (params.alpha() + params.beta())
        << ", -n = " << -params.n() << ")";
    out.push_back(msg.str());
  }
  return out;
}

namespace {

double balance_gap(const CknParams& c) {
  const double p = c.p();
  return c.alpha() + c.gamma1() - ((c.mu() + c.gamma2() - 1.0) / p + (p - 1.0) * (c.beta() + c.gamma3()) / p);
}

double gamma_slack(const CknParams& c) {
  const double p = c.p();
  return (c.gamma2() - 1.0) / p + (p - 1.0) * c.gamma3() / p - c.gamma1();
}

}  // namespace

CknAdmissibility admissible_ckn(const CknParams& c) {
  const double p = c.p();
  const double n = c.n();
  CknAdmissibility out{};
  out.integrable = std::min({c.alpha(), c.beta(), c.mu()}) > (1.0 - n) / p &&
                   std::min({c.alpha() + c.gamma1(), c.mu() + c.gamma2(), c.beta() + c.gamma3()}) > -n / p;
  out.balanced = std::abs(balance_gap(c)) <= kCknTolerance && gamma_slack(c) >= -kCknTolerance;
  out.normalized = std::abs(c.alpha() * p - c.beta() * (p - 1.0) - c.mu()) <= kCknTolerance &&
                   std::abs(c.gamma1() * p - c.gamma3() * (p - 1.0) - c.gamma2() + 1.0) <= kCknTolerance;
  return out;
}

std::vector<std::string> ckn_violations(const CknParams& c) {
  std::vector<std::string> out;
  const double p = c.p();
  const double n = c.n();
  if (!(std::min({c.alpha(), c.beta(), c.mu()}) > (1.0 - n) / p))
    out.emplace_back("min(alpha, beta, mu) > (1-n)/p violated");
  if (!(std::min({c.alpha() + c.gamma1(), c.mu() + c.gamma2(), c.beta() + c.gamma3()}) > -n / p))
    out.emplace_back("min(alpha+gamma1, mu+gamma2, beta+gamma3) > -n/p violated");
  if (std::abs(balance_gap(c)) > kCknTolerance)
    out.emplace_back("alpha + gamma1 = (mu+gamma2-1)/p + (p-1)(beta+gamma3)/p violated");
  if (gamma_slack(c) < -kCknTolerance)
    out.emplace_back("gamma1 <= (gamma2-1)/p + (p-1)gamma3/p violated");
  return out;
}

double k_value(int n, double alpha, double beta) { return -4.0 * beta * (n + 2.0 * alpha + beta); }

double k_value_difference_form(int n, double alpha, double beta) {
  const double a = n + 2.0 * alpha;
  const double b = n + 2.0 * alpha + 2.0 * beta;
  return a * a - b * b;
}

Family classify(double k) {
  if (std::abs(k - 1.0) <= kRegimeTolerance) return Family::K_EQ_1;
  return k > 1.0 ? Family::K_GT_1 : Family::K_LT_1;
}

Regime compute_K(const HardyParams& params) {
  if (!admissible_hardy(params)) throw Error(ErrorCode::Inadmissible, hardy_violations(params).front());
  const double k = k_value(params.n(), params.alpha(), params.beta());
  return Regime{k, classify(k)};
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::K_GT_1: return "K_GT_1";
    case Family::K_EQ_1: return "K_EQ_1";
    case Family::K_LT_1: return "K_LT_1";
  }
  return "?";
}

}  // namespace hardy
