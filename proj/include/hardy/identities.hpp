#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hardy/params.hpp"
#include "hardy/weights.hpp"

namespace hardy {

/// (p-1)|Y|^p + |X|^p + p |Y|^(p-2) <Y, X>, clamped to 0 when slightly negative from rounding.
/// Y = 0 gives the limit |X|^p. Throws Error(NegativeR) below -1e-12 relative to the term sizes.
double r_functional(std::span<const double> X, std::span<const double> Y, double p);
/// Unclamped value of the same expression.
double r_functional_raw(std::span<const double> X, std::span<const double> Y, double p);

/// Compactly supported test function with analytic gradient, supported in the ball of
/// radius 2 width around center, smooth except on the spheres of radius width and 2 width.
struct TestFunction {
  std::vector<double> center;
  double width;
  std::function<double(std::span<const double>)> value;
  std::function<void(std::span<const double>, std::span<double>)> gradient;
};

/// u(x) = P(z) eta(|z|/width), z = x - center, P(z) = c0 + sum_d sum_i c[d,i] (z_i/width)^d.
class BumpFunction {
 public:
  /// coefficients = {c0, c[1,0..n-1], ..., c[degree,0..n-1]}; requires |center'| > 3 width
  /// where x' is the first k coordinates.
  BumpFunction(std::vector<double> center, double width, int degree, std::vector<double> coefficients, int k);

  double value(std::span<const double> x) const;
  void gradient(std::span<const double> x, std::span<double> out) const;
  TestFunction as_test_function() const;

  const std::vector<double>& center() const { return center_; }
  double width() const { return width_; }
  int degree() const { return degree_; }
  const std::vector<double>& coefficients() const { return coef_; }

 private:
  std::vector<double> center_;
  double width_;
  int degree_;
  std::vector<double> coef_;
};

/// u = f eta(|x - center|/width) for the weight's f.
TestFunction f_times_cutoff(const WeightSpec& spec, std::vector<double> center, double width);

struct BallRuleSpec {
  int radial_nodes = 16;  // per radial panel [0,w] and [w,2w]
  int polar_nodes = 24;
  int azimuth_nodes = 48;
};

struct IdentityReport {
  double lhs;
  std::vector<std::pair<std::string, double>> rhs_terms;
  double residual_rel;
  std::vector<std::pair<std::string, double>> extras;  // auxiliary checks
};

/// int V|grad u|^2 = int W u^2 + int V f^2 |grad(u/f)|^2 with W = weight_p2; grad(u/f) by
/// Richardson-combined central differences.
IdentityReport verify_E2(const WeightSpec& spec, const TestFunction& u, const BallRuleSpec& rule = {});

/// int V|grad u|^p = int W|u|^p + int V R(grad u, -u grad f/f) for f = |x'|^gamma.
IdentityReport verify_Ep(const WeightSpec& spec, const TestFunction& u, const BallRuleSpec& rule = {});

/// Product-form CKN identity with V = |x'|^(p mu) |x|^(p g2), F = |x'|^(beta-mu) |x|^(g3-g2-1) x.
/// extras: "pointwise_div_rel" (finite-difference divergence vs closed form at 20 points) and
/// "inequality_slack" (lhs minus the divergence term).
IdentityReport verify_CKNp(const CknParams& ckn, const TestFunction& u, const BallRuleSpec& rule = {});

/// Relative error of the divergence formula for V|F|^(p-2)F at the given points.
double ckn_divergence_check(const CknParams& ckn, const std::vector<std::vector<double>>& points);

struct ExtremalReport {
  double quotient;
  double constant;
  double residual_R_max;
  double kappa0;
  double r_max;
};

/// Radial evaluation of the CKN quotient at u0 = exp(-|x|^m / m), m = g3 - g2 + 1.
/// Throws Error(Truncation) if the tail cannot be bounded below 1e-8.
ExtremalReport ckn_extremal_check(const CknParams& ckn);

struct SpotReport {
  double min_quotient;
  double constant;
  std::vector<double> quotients;
};

/// Rayleigh quotients of the given bumps against the closed-form constant. Throws
/// Error(EmptyInput) on an empty list.
SpotReport hardy_spot_test(const HardyParams& params, const std::vector<BumpFunction>& bumps,
                           const BallRuleSpec& rule = {});

// ---- seeded configurations --------------------------------------------------------

struct E2Config {
  WeightSpec spec;
  BumpFunction bump;
};
struct CknConfig {
  CknParams ckn;
  BumpFunction bump;
};

/// Seeds depend on (seed, index) only, so configs are identical in serial and parallel runs.
BumpFunction random_bump(int n, int k, std::uint64_t seed, std::uint64_t index);
E2Config random_e2_config(std::uint64_t seed, std::uint64_t index);
E2Config random_ep_config(std::uint64_t seed, std::uint64_t index, double p);
CknConfig random_ckn_config(std::uint64_t seed, std::uint64_t index);

}  // namespace hardy
