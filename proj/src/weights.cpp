#include "hardy/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hardy/error.hpp"

namespace hardy {

double H(double theta, const HardyParams& params) {
  return -theta * (params.k() + 2.0 * params.alpha() + theta);
}

double H2(double theta, double lambda, const HardyParams& params) {
  const double a = params.n() + 2.0 * params.alpha() + 2.0 * params.beta();
  return lambda * (a + 2.0 * theta + lambda) + 2.0 * params.beta() * theta;
}

double H1(double theta, double lambda, const HardyParams& params) {
  return H(theta, params) - H2(theta, lambda, params);
}

namespace {

struct Norms {
  double y2;  // |x'|^2 over the first k coordinates
  double x2;  // |x|^2
};

Norms norms(std::span<const double> x, int k) {
  if (static_cast<int>(x.size()) <= k)
    throw Error(ErrorCode::InvalidArgument, "point dimension must exceed the axis dimension k");
  Norms out{0.0, 0.0};
  for (int i = 0; i < k; ++i) out.y2 += x[i] * x[i];
  out.x2 = out.y2;
  for (std::size_t i = k; i < x.size(); ++i) out.x2 += x[i] * x[i];
  return out;
}

Norms checked_norms(std::span<const double> x, const WeightSpec& spec) {
  if (static_cast<int>(x.size()) != spec.params.n())
    throw Error(ErrorCode::InvalidArgument, "point dimension does not match n");
  const Norms nm = norms(x, spec.params.k());
  if (std::sqrt(nm.y2) < kSingularGuard * (1.0 + std::sqrt(nm.x2)))
    throw Error(ErrorCode::Singular, "point lies in the guard zone around {x'=0}");
  return nm;
}

// |g|^(p-2) g without 0^(negative).
double signed_power(double g, double p) {
  if (g == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(g), p - 1.0), g);
}

}  // namespace

bool weight_regular(std::span<const double> x, int k) {
  const Norms nm = norms(x, k);
  return std::sqrt(nm.y2) >= kSingularGuard * (1.0 + std::sqrt(nm.x2));
}

double weight_p2(std::span<const double> x, const WeightSpec& spec) {
  const Norms nm = checked_norms(x, spec);
  const HardyParams& hp = spec.params;
  const double theta = spec.exponents.theta;
  const double lambda = spec.exponents.lambda;
  const double h1 = H1(theta, lambda, hp);
  const double h2 = H2(theta, lambda, hp);
  const double xpp2 = nm.x2 - nm.y2;
  // V/|x'|^2 = |x'|^(2a) |x|^(2b)
  const double base = std::pow(nm.y2, hp.alpha()) * std::pow(nm.x2, hp.beta());
  return base * (h1 + h2 * xpp2 / nm.x2);
}

double weight_general_p(std::span<const double> x, const WeightSpec& spec) {
  const Norms nm = checked_norms(x, spec);
  const HardyParams& hp = spec.params;
  const double p = hp.p();
  const double g = spec.gamma;
  const double sg = signed_power(g, p);
  if (sg == 0.0) return 0.0;
  const double bracket = -sg * ((p - 1.0) * g + hp.k() + p * hp.alpha()) - sg * hp.beta() * p * nm.y2 / nm.x2;
  const double base = std::pow(nm.y2, 0.5 * p * hp.alpha()) * std::pow(nm.x2, 0.5 * p * hp.beta());
  return base * bracket;
}

double weight_V(std::span<const double> x, const WeightSpec& spec) {
  const Norms nm = norms(x, spec.params.k());
  const HardyParams& hp = spec.params;
  if (!spec.general_p) return std::pow(nm.y2, hp.alpha() + 1.0) * std::pow(nm.x2, hp.beta());
  const double p = hp.p();
  return std::pow(nm.y2, 0.5 * (hp.alpha() + 1.0) * p) * std::pow(nm.x2, 0.5 * hp.beta() * p);
}

double weight_f(std::span<const double> x, const WeightSpec& spec) {
  const Norms nm = norms(x, spec.params.k());
  if (spec.general_p) return std::pow(nm.y2, 0.5 * spec.gamma);
  return std::pow(nm.y2, 0.5 * spec.exponents.theta) * std::pow(nm.x2, 0.5 * spec.exponents.lambda);
}

double default_fd_step(std::span<const double> x, int k) {
  (void)k;
  double x2 = 0.0;
  for (double v : x) x2 += v * v;
  return 1e-3 * (1.0 + std::sqrt(x2));
}

namespace {

struct StencilLevel {
  double div;    // div(V |grad f|^(p-2) grad f)
  double scale;  // magnitude of the summed fluxes, for the rounding floor
  double flux;   // sum of |face flux| / h; the size of the terms that cancel in div
};

StencilLevel stencil(const ScalarField& V, const ScalarField& f, double p, std::span<const double> x0,
                     double h) {
  const std::size_t n = x0.size();
  std::vector<double> x(x0.begin(), x0.end());
  const double f0 = f(x0);
  auto eval_at = [&](const ScalarField& F, std::size_t i, double di, std::size_t j, double dj) {
    x[i] += di;
    if (j < n) x[j] += dj;
    const double v = F(x);
    x[i] = x0[i];
    if (j < n) x[j] = x0[j];
    return v;
  };

  StencilLevel out{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const double fp = eval_at(f, i, h, n, 0.0);
    const double fm = eval_at(f, i, -h, n, 0.0);
    const double vp = eval_at(V, i, 0.5 * h, n, 0.0);
    const double vm = eval_at(V, i, -0.5 * h, n, 0.0);
    const double gp = (fp - f0) / h;
    const double gm = (f0 - fm) / h;
    // |grad f|^(p-2) at the two faces; unity when p = 2 so both oracles share one code path.
    double sp = 1.0, sm = 1.0;
    if (p != 2.0) {
      double tp2 = 0.0, tm2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double c0 = eval_at(f, j, h, n, 0.0) - eval_at(f, j, -h, n, 0.0);
        const double cp = eval_at(f, i, h, j, h) - eval_at(f, i, h, j, -h);
        const double cm = eval_at(f, i, -h, j, h) - eval_at(f, i, -h, j, -h);
        const double tp = (c0 + cp) / (4.0 * h);
        const double tm = (c0 + cm) / (4.0 * h);
        tp2 += tp * tp;
        tm2 += tm * tm;
      }
      const double np = std::sqrt(gp * gp + tp2);
      const double nm = std::sqrt(gm * gm + tm2);
      sp = np > 0.0 ? std::pow(np, p - 2.0) : 0.0;
      sm = nm > 0.0 ? std::pow(nm, p - 2.0) : 0.0;
    }
    out.div += (vp * sp * gp - vm * sm * gm) / h;
    out.scale += (std::abs(vp * sp) + std::abs(vm * sm)) * std::abs(f0) / (h * h);
    out.flux += (std::abs(vp * sp * gp) + std::abs(vm * sm * gm)) / h;
  }
  return out;
}

double oracle_impl(const ScalarField& V, const ScalarField& f, double p, std::span<const double> x, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "finite-difference step must be positive");
  const double f0 = f(x);
  if (f0 == 0.0) throw Error(ErrorCode::Singular, "f vanishes at the evaluation point");
  const StencilLevel coarse = stencil(V, f, p, x, h);
  const StencilLevel fine = stencil(V, f, p, x, 0.5 * h);
  const double rich = (4.0 * fine.div - coarse.div) / 3.0;
  const double eps = std::numeric_limits<double>::epsilon();
  const double floor = 64.0 * eps * std::max(coarse.scale, fine.scale);
  const double gap = std::abs(fine.div - coarse.div);
  // Relative to the cancelling flux terms; div itself may sit near zero.
  if (gap > 1e-4 * std::max(coarse.flux, fine.flux) + floor)
    throw Error(ErrorCode::IllConditioned, "Richardson levels disagree; reduce the step");
  const double denom = p == 2.0 ? f0 : std::copysign(std::pow(std::abs(f0), p - 1.0), f0);
  return -rich / denom;
}

}  // namespace

double divergence_oracle(const ScalarField& V, const ScalarField& f, std::span<const double> x, double h) {
  return oracle_impl(V, f, 2.0, x, h);
}

double divergence_oracle_p(const ScalarField& V, const ScalarField& f, double p, std::span<const double> x,
                           double h) {
  return oracle_impl(V, f, p, x, h);
}

}  // namespace hardy
