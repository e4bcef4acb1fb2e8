#pragma once

#include <functional>
#include <span>

#include "hardy/closed_form.hpp"
#include "hardy/params.hpp"

namespace hardy {

/// H(theta) = -theta (k + 2 alpha + theta).
double H(double theta, const HardyParams& params);
/// H2(theta, lambda) = lambda (n + 2 alpha + 2 beta + 2 theta + lambda) + 2 beta theta.
double H2(double theta, double lambda, const HardyParams& params);
/// H1 = H - H2.
double H1(double theta, double lambda, const HardyParams& params);

/// Weight data for f = |x'|^theta |x|^lambda (p = 2) or f = |x'|^gamma (general p).
struct WeightSpec {
  HardyParams params;
  ExponentPair exponents{0.0, 0.0};
  double gamma = 0.0;
  bool general_p = false;

  static WeightSpec p2(const HardyParams& params, ExponentPair exponents) {
    return {params, exponents, 0.0, false};
  }
  static WeightSpec power(const HardyParams& params, double gamma) {
    return {params, {gamma, 0.0}, gamma, true};
  }
};

/// Points closer than this (relative to 1+|x|) to {x'=0} are rejected as SINGULAR.
inline constexpr double kSingularGuard = 1e-8;

/// True when x is outside the guard zone around {x'=0}.
bool weight_regular(std::span<const double> x, int k);

/// -div(V grad f)/f = H1 V/|x'|^2 + H2 V |x''|^2 / (|x'|^2 |x|^2), V = |x'|^(2a+2) |x|^(2b).
double weight_p2(std::span<const double> x, const WeightSpec& spec);

/// V |x'|^-p { -|g|^(p-2) g [(p-1) g + k + p a] - |g|^(p-2) g b p |x'|^2/|x|^2 }, V = |x'|^((a+1)p) |x|^(bp).
double weight_general_p(std::span<const double> x, const WeightSpec& spec);

/// V(x) of the weight (p = 2 or general p).
double weight_V(std::span<const double> x, const WeightSpec& spec);
/// f(x) of the weight.
double weight_f(std::span<const double> x, const WeightSpec& spec);

using ScalarField = std::function<double(std::span<const double>)>;

/// Default step for the finite-difference oracles at x: 1e-3 (1 + |x|).
double default_fd_step(std::span<const double> x, int k);

/// -div(V grad f)/f by a conservative second-order stencil, Richardson-combined over h and h/2.
/// Throws Error(IllConditioned) when the two levels disagree beyond 1e-4 of the summed |flux| terms.
double divergence_oracle(const ScalarField& V, const ScalarField& f, std::span<const double> x, double h);

/// -div(V |grad f|^(p-2) grad f) / f^(p-1) with the same stencil; reduces exactly to divergence_oracle at p = 2.
double divergence_oracle_p(const ScalarField& V, const ScalarField& f, double p, std::span<const double> x,
                           double h);

}  // namespace hardy
