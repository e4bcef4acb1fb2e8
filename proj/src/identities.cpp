#include "hardy/identities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <random>

#include "hardy/closed_form.hpp"
#include "hardy/error.hpp"
#include "hardy/kernels.hpp"
#include "hardy/quadrature.hpp"

namespace hardy {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double partial_norm(std::span<const double> x, int k) { return norm(x.subspan(0, k)); }

struct RTerms {
  double value;
  double magnitude;
};

RTerms r_terms(std::span<const double> X, std::span<const double> Y, double p) {
  if (!(p > 1.0)) throw Error(ErrorCode::InvalidArgument, "R requires p > 1");
  if (X.size() != Y.size()) throw Error(ErrorCode::InvalidArgument, "R arguments differ in dimension");
  const double nx = norm(X);
  const double ny = norm(Y);
  const double xp = std::pow(nx, p);
  if (ny == 0.0) return {xp, xp};
  const double yp = std::pow(ny, p);
  const double cross = p * std::pow(ny, p - 2.0) * dot(Y, X);
  return {(p - 1.0) * yp + xp + cross, (p - 1.0) * yp + xp + std::abs(cross)};
}

}  // namespace

double r_functional_raw(std::span<const double> X, std::span<const double> Y, double p) {
  return r_terms(X, Y, p).value;
}

double r_functional(std::span<const double> X, std::span<const double> Y, double p) {
  const RTerms t = r_terms(X, Y, p);
  if (t.value >= 0.0) return t.value;
  if (t.value >= -1e-12 * std::max(1.0, t.magnitude)) return 0.0;
  throw Error(ErrorCode::NegativeR, "R(X, Y) = " + std::to_string(t.value));
}

// ---- test functions -----------------------------------------------------------------

BumpFunction::BumpFunction(std::vector<double> center, double width, int degree, std::vector<double> coefficients,
                           int k)
    : center_(std::move(center)), width_(width), degree_(degree), coef_(std::move(coefficients)) {
  const std::size_t n = center_.size();
  if (!(width_ > 0.0)) throw Error(ErrorCode::InvalidArgument, "bump width must be positive");
  if (degree_ < 0 || degree_ > 3) throw Error(ErrorCode::InvalidArgument, "bump degree must be 0..3");
  if (coef_.size() != 1 + static_cast<std::size_t>(degree_) * n)
    throw Error(ErrorCode::InvalidArgument, "bump needs 1 + degree*n coefficients");
  if (k < 1 || k >= static_cast<int>(n)) throw Error(ErrorCode::InvalidArgument, "bump axis dimension out of range");
  if (!(partial_norm(center_, k) > 3.0 * width_))
    throw Error(ErrorCode::SupportViolation, "bump center must satisfy |center'| > 3 width");
}

double BumpFunction::value(std::span<const double> x) const {
  const std::size_t n = center_.size();
  double rho2 = 0.0, P = coef_[0];
  for (std::size_t i = 0; i < n; ++i) {
    const double z = x[i] - center_[i];
    rho2 += z * z;
    double t = z / width_, pw = 1.0;
    for (int d = 1; d <= degree_; ++d) {
      pw *= t;
      P += coef_[1 + (d - 1) * n + i] * pw;
    }
  }
  return P * cutoff_eta(std::sqrt(rho2) / width_);
}

void BumpFunction::gradient(std::span<const double> x, std::span<double> out) const {
  const std::size_t n = center_.size();
  double rho2 = 0.0, P = coef_[0];
  for (std::size_t i = 0; i < n; ++i) {
    const double z = x[i] - center_[i];
    rho2 += z * z;
    const double t = z / width_;
    double pw = 1.0, dP = 0.0;
    for (int d = 1; d <= degree_; ++d) {
      const double c = coef_[1 + (d - 1) * n + i];
      dP += d * c * pw / width_;
      pw *= t;
      P += c * pw;
    }
    out[i] = dP;
  }
  const double rho = std::sqrt(rho2);
  const double et = cutoff_eta(rho / width_);
  const double ep = eta_prime(rho / width_);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] *= et;
    if (ep != 0.0) out[i] += P * ep * (x[i] - center_[i]) / (rho * width_);
  }
}

TestFunction BumpFunction::as_test_function() const {
  auto self = std::make_shared<BumpFunction>(*this);
  return {center_, width_, [self](std::span<const double> x) { return self->value(x); },
          [self](std::span<const double> x, std::span<double> g) { self->gradient(x, g); }};
}

TestFunction f_times_cutoff(const WeightSpec& spec, std::vector<double> center, double width) {
  const int k = spec.params.k();
  auto value = [spec, center, width](std::span<const double> x) {
    double rho2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) rho2 += (x[i] - center[i]) * (x[i] - center[i]);
    return weight_f(x, spec) * cutoff_eta(std::sqrt(rho2) / width);
  };
  auto gradient = [spec, center, width, k](std::span<const double> x, std::span<double> g) {
    const std::size_t n = x.size();
    double y2 = 0.0, x2 = 0.0, rho2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x2 += x[i] * x[i];
      if (static_cast<int>(i) < k) y2 += x[i] * x[i];
      rho2 += (x[i] - center[i]) * (x[i] - center[i]);
    }
    const double f = weight_f(x, spec);
    const double th = spec.general_p ? spec.gamma : spec.exponents.theta;
    const double la = spec.general_p ? 0.0 : spec.exponents.lambda;
    const double rho = std::sqrt(rho2);
    const double et = cutoff_eta(rho / width), ep = eta_prime(rho / width);
    for (std::size_t i = 0; i < n; ++i) {
      const double df = f * ((static_cast<int>(i) < k ? th * x[i] / y2 : 0.0) + la * x[i] / x2);
      g[i] = df * et + (ep != 0.0 ? f * ep * (x[i] - center[i]) / (rho * width) : 0.0);
    }
  };
  return {std::move(center), width, value, gradient};
}

// ---- ball quadrature ----------------------------------------------------------------

namespace {

struct BallRule {
  int n;
  std::vector<double> offsets;  // node-major, n per node
  std::vector<double> weights;
};

// Gauss-Legendre in the radius on [0,w] and [w,2w], in each polar angle, trapezoid in azimuth.
BallRule make_ball_rule(int n, double w, const BallRuleSpec& rs) {
  const GaussRule& gr = gauss_legendre(rs.radial_nodes);
  const GaussRule& gp = gauss_legendre(rs.polar_nodes);
  std::vector<std::pair<double, double>> radial;
  for (int panel = 0; panel < 2; ++panel) {
    const double lo = panel * w, hw = 0.5 * w;
    for (std::size_t i = 0; i < gr.nodes.size(); ++i) {
      const double rho = lo + hw * (1.0 + gr.nodes[i]);
      radial.emplace_back(rho, hw * gr.weights[i] * std::pow(rho, n - 1));
    }
  }
  // Directions with their surface weights.
  std::vector<std::vector<double>> dirs;
  std::vector<double> dweights;
  const int m_az = rs.azimuth_nodes;
  const double daz = 2.0 * std::numbers::pi / m_az;
  const int n_polar = n - 2;
  std::vector<int> idx(std::max(n_polar, 0), 0);
  const int polar_count = static_cast<int>(gp.nodes.size());
  while (true) {
    double wpolar = 1.0;
    std::vector<double> base(n, 0.0);
    double sprod = 1.0;
    for (int j = 0; j < n_polar; ++j) {
      const double phi = 0.5 * std::numbers::pi * (1.0 + gp.nodes[idx[j]]);
      wpolar *= 0.5 * std::numbers::pi * gp.weights[idx[j]] * std::pow(std::sin(phi), n_polar - j);
      base[j] = sprod * std::cos(phi);
      sprod *= std::sin(phi);
    }
    for (int a = 0; a < m_az; ++a) {
      const double psi = (a + 0.5) * daz;
      std::vector<double> d = base;
      d[n - 2] = sprod * std::cos(psi);
      d[n - 1] = sprod * std::sin(psi);
      dirs.push_back(std::move(d));
      dweights.push_back(wpolar * daz);
    }
    int j = 0;
    while (j < n_polar && ++idx[j] == polar_count) idx[j++] = 0;
    if (j == n_polar) break;
  }
  BallRule rule{n, {}, {}};
  for (const auto& [rho, wr] : radial) {
    for (std::size_t d = 0; d < dirs.size(); ++d) {
      for (int i = 0; i < n; ++i) rule.offsets.push_back(rho * dirs[d][i]);
      rule.weights.push_back(wr * dweights[d]);
    }
  }
  return rule;
}

// Integrates several integrands at once; eval(x, out) fills one value per term.
std::vector<double> integrate_ball(const TestFunction& u, int terms, const BallRuleSpec& rs,
                                   const std::function<void(std::span<const double>, std::span<double>)>& eval) {
  const int n = static_cast<int>(u.center.size());
  const BallRule rule = make_ball_rule(n, u.width, rs);
  const std::size_t nodes = rule.weights.size();
  std::vector<std::vector<double>> vals(terms, std::vector<double>(nodes));
  std::vector<double> x(n), out(terms);
  for (std::size_t j = 0; j < nodes; ++j) {
    for (int i = 0; i < n; ++i) x[i] = u.center[i] + rule.offsets[j * n + i];
    eval(x, out);
    for (int t = 0; t < terms; ++t) vals[t][j] = out[t];
  }
  std::vector<double> res(terms);
  for (int t = 0; t < terms; ++t) res[t] = kernels::weighted_sum(rule.weights, vals[t]);
  return res;
}

void check_support(const TestFunction& u, int k) {
  const double cn = partial_norm(u.center, k);
  double c = 0.0;
  for (double v : u.center) c += v * v;
  const double far = std::sqrt(c) + 2.0 * u.width;
  if (cn - 2.0 * u.width <= kSingularGuard * (1.0 + far) || cn <= 2.0 * u.width)
    throw Error(ErrorCode::SupportViolation, "test-function support reaches the singular set");
}

IdentityReport make_report(double lhs, std::vector<std::pair<std::string, double>> rhs) {
  double sum = 0.0, mag = std::abs(lhs);
  for (const auto& [name, v] : rhs) sum += v, mag += std::abs(v);
  return {lhs, std::move(rhs), std::abs(lhs - sum) / (mag + 1e-300), {}};
}

}  // namespace

IdentityReport verify_E2(const WeightSpec& spec, const TestFunction& u, const BallRuleSpec& rule) {
  if (spec.general_p) throw Error(ErrorCode::InvalidArgument, "verify_E2 takes a p = 2 weight spec");
  const int n = spec.params.n();
  if (static_cast<int>(u.center.size()) != n) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  check_support(u, spec.params.k());
  const double h = 1e-3 * u.width;
  std::vector<double> grad(n), xs(n);

  auto quotient_at = [&](std::span<const double> y) { return u.value(y) / weight_f(y, spec); };
  auto diff = [&](std::span<const double> x, int i, double step) {
    std::copy(x.begin(), x.end(), xs.begin());
    xs[i] = x[i] + step;
    const double qp = quotient_at(xs);
    xs[i] = x[i] - step;
    const double qm = quotient_at(xs);
    return (qp - qm) / (2.0 * step);
  };

  const auto I = integrate_ball(u, 3, rule, [&](std::span<const double> x, std::span<double> out) {
    const double uv = u.value(x);
    u.gradient(x, grad);
    const double V = weight_V(x, spec);
    const double f = weight_f(x, spec);
    double g2 = 0.0, q2 = 0.0;
    for (int i = 0; i < n; ++i) {
      g2 += grad[i] * grad[i];
      const double d = (4.0 * diff(x, i, 0.5 * h) - diff(x, i, h)) / 3.0;
      q2 += d * d;
    }
    out[0] = V * g2;
    out[1] = weight_p2(x, spec) * uv * uv;
    out[2] = V * f * f * q2;
  });
  return make_report(I[0], {{"weight_term", I[1]}, {"remainder", I[2]}});
}

IdentityReport verify_Ep(const WeightSpec& spec, const TestFunction& u, const BallRuleSpec& rule) {
  if (!spec.general_p) throw Error(ErrorCode::InvalidArgument, "verify_Ep takes a power weight spec");
  const int n = spec.params.n();
  const int k = spec.params.k();
  const double p = spec.params.p();
  if (!(p > 1.0)) throw Error(ErrorCode::InvalidArgument, "verify_Ep requires p > 1");
  if (static_cast<int>(u.center.size()) != n) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  check_support(u, k);
  std::vector<double> grad(n), Y(n);

  const auto I = integrate_ball(u, 3, rule, [&](std::span<const double> x, std::span<double> out) {
    const double uv = u.value(x);
    u.gradient(x, grad);
    const double V = weight_V(x, spec);
    double y2 = 0.0;
    for (int i = 0; i < k; ++i) y2 += x[i] * x[i];
    for (int i = 0; i < n; ++i) Y[i] = i < k ? -uv * spec.gamma * x[i] / y2 : 0.0;
    out[0] = V * std::pow(norm(grad), p);
    out[1] = weight_general_p(x, spec) * std::pow(std::abs(uv), p);
    out[2] = V * r_functional(grad, Y, p);
  });
  return make_report(I[0], {{"weight_term", I[1]}, {"remainder", I[2]}});
}

namespace {

struct CknFields {
  const CknParams& c;
  int k;

  double V(std::span<const double> x) const {
    const double y = partial_norm(x, k), r = norm(x);
    return std::pow(y, c.p() * c.mu()) * std::pow(r, c.p() * c.gamma2());
  }
  // F(x) written into out; returns |F|.
  double F(std::span<const double> x, std::span<double> out) const {
    const double y = partial_norm(x, k), r = norm(x);
    const double s = std::pow(y, c.beta() - c.mu()) * std::pow(r, c.gamma3() - c.gamma2() - 1.0);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = s * x[i];
    return s * r;
  }
  double div_closed(std::span<const double> x) const {
    const double y = partial_norm(x, k), r = norm(x);
    const double p = c.p();
    return (c.n() + p * (c.alpha() + c.gamma1())) * std::pow(y, c.alpha() * p) * std::pow(r, c.gamma1() * p);
  }
  // Component i of V |F|^(p-2) F.
  double G(std::span<const double> x, int i, std::span<double> scratch) const {
    const double nf = F(x, scratch);
    return V(x) * std::pow(nf, c.p() - 2.0) * scratch[i];
  }
};

}  // namespace

double ckn_divergence_check(const CknParams& ckn, const std::vector<std::vector<double>>& points) {
  const CknFields fl{ckn, ckn.n() - 1};
  double worst = 0.0;
  for (const auto& pt : points) {
    const int n = static_cast<int>(pt.size());
    std::vector<double> xs(pt), scratch(n);
    const double h0 = 1e-3 * std::min(partial_norm(pt, fl.k), norm(pt));
    auto central = [&](int i, double h) {
      xs[i] = pt[i] + h;
      const double gp = fl.G(xs, i, scratch);
      xs[i] = pt[i] - h;
      const double gm = fl.G(xs, i, scratch);
      xs[i] = pt[i];
      return (gp - gm) / (2.0 * h);
    };
    double div = 0.0;
    for (int i = 0; i < n; ++i) div += (4.0 * central(i, 0.5 * h0) - central(i, h0)) / 3.0;
    const double ref = fl.div_closed(pt);
    worst = std::max(worst, std::abs(div - ref) / std::abs(ref));
  }
  return worst;
}

IdentityReport verify_CKNp(const CknParams& ckn, const TestFunction& u, const BallRuleSpec& rule) {
  if (!admissible_ckn(ckn).normalized)
    throw Error(ErrorCode::InvalidArgument, "verify_CKNp requires the normalized exponent relations");
  const int n = ckn.n();
  const double p = ckn.p();
  if (static_cast<int>(u.center.size()) != n) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  const CknFields fl{ckn, n - 1};
  check_support(u, fl.k);
  std::vector<double> grad(n), F(n), Y(n);

  // Pass 1: int V|grad u|^p, int V|F|^p|u|^p, int div(V|F|^(p-2)F)|u|^p.
  const auto I = integrate_ball(u, 3, rule, [&](std::span<const double> x, std::span<double> out) {
    const double up = std::pow(std::abs(u.value(x)), p);
    u.gradient(x, grad);
    const double V = fl.V(x);
    const double nf = fl.F(x, F);
    out[0] = V * std::pow(norm(grad), p);
    out[1] = V * std::pow(nf, p) * up;
    out[2] = fl.div_closed(x) * up;
  });
  const double I_grad = I[0], I_F = I[1], I_div = I[2];

  IdentityReport rep;
  if (I_grad == 0.0 || I_F == 0.0) {
    rep = make_report(0.0, {{"divergence_term", I_div / p}, {"remainder", 0.0}});
  } else {
    const double kappa0 = std::pow(I_grad / I_F, (p - 1.0) / p);
    const double c = std::pow(kappa0, 1.0 / (p - 1.0));
    const auto IR = integrate_ball(u, 1, rule, [&](std::span<const double> x, std::span<double> out) {
      const double uv = u.value(x);
      u.gradient(x, grad);
      fl.F(x, F);
      for (int i = 0; i < n; ++i) Y[i] = uv * c * F[i];
      out[0] = fl.V(x) * r_functional(grad, Y, p);
    });
    const double lhs = std::pow(I_grad, 1.0 / p) * std::pow(I_F, (p - 1.0) / p);
    rep = make_report(lhs, {{"divergence_term", I_div / p}, {"remainder", IR[0] / (p * kappa0)}});
    rep.extras.emplace_back("kappa0", kappa0);
  }
  rep.extras.emplace_back("inequality_slack", rep.lhs - I_div / p);

  // Pointwise divergence formula at 20 deterministic points inside the support.
  std::vector<std::vector<double>> pts;
  for (int j = 0; j < 20; ++j) {
    std::vector<double> x(u.center);
    for (int i = 0; i < n; ++i) x[i] += 1.5 * u.width * std::sin(1.0 + 2.3 * j + 0.7 * i * (j + 1)) / std::sqrt(n);
    pts.push_back(std::move(x));
  }
  rep.extras.emplace_back("pointwise_div_rel", ckn_divergence_check(ckn, pts));
  return rep;
}

ExtremalReport ckn_extremal_check(const CknParams& ckn) {
  const double p = ckn.p();
  const double m = ckn.gamma3() - ckn.gamma2() + 1.0;
  if (std::abs(ckn.alpha() - ckn.beta()) > kCknTolerance || std::abs(ckn.alpha() - ckn.mu()) > kCknTolerance ||
      !(m > 0.0))
    throw Error(ErrorCode::InvalidArgument, "extremal check needs alpha = beta = mu and g3 - g2 + 1 > 0");
  const int n = ckn.n();
  const double c = 1.0;  // any c > 0; the quotient is scale invariant
  const double delta = 1e-6;
  QuadratureSpec qs;
  qs.rel_tol = 1e-12;

  auto u0 = [&](double r) { return std::exp(-c * std::pow(r, m) / m); };
  auto radial = [&](double expo, bool grad, double lo, double hi) {
    auto f = [&](double r, double, double) {
      const double up = std::pow(u0(r), p);
      const double g = grad ? std::pow(c * std::pow(r, m - 1.0), p) : 1.0;
      return std::pow(r, expo) * up * g;
    };
    std::vector<double> br{lo};
    for (double b = 1e-3; b < hi; b *= 4.0)
      if (b > lo) br.push_back(b);
    br.push_back(hi);
    return integrate_panels(f, br, qs).value;
  };
  const double e1 = n - 1.0 + p * ckn.gamma2(), e2 = n - 1.0 + p * ckn.gamma3(), e3 = n - 1.0 + p * ckn.gamma1();

  double R = 4.0;
  double I1 = 0, I2 = 0, I3 = 0;
  for (;; R *= 2.0) {
    I1 = radial(e1, true, delta, R);
    I2 = radial(e2, false, delta, R);
    I3 = radial(e3, false, delta, R);
    const double t1 = radial(e1, true, R, 2 * R), t2 = radial(e2, false, R, 2 * R), t3 = radial(e3, false, R, 2 * R);
    if (t1 <= 1e-8 * I1 && t2 <= 1e-8 * I2 && t3 <= 1e-8 * I3) break;
    if (R > 1e6) throw Error(ErrorCode::Truncation, "extremal tail does not decay below 1e-8");
  }

  ExtremalReport rep;
  rep.constant = ckn_constant(ckn).value;
  rep.quotient = std::pow(I1, 1.0 / p) * std::pow(I2, (p - 1.0) / p) / I3;
  rep.kappa0 = std::pow(I1 / I2, (p - 1.0) / p);
  rep.r_max = R;

  // R(grad u0, u0 c F) along a few rays.
  const CknFields fl{ckn, n - 1};
  std::vector<double> x(n), X(n), F(n), Y(n);
  double worst = 0.0;
  for (int ray = 0; ray < 4; ++ray) {
    std::vector<double> dir(n);
    for (int i = 0; i < n; ++i) dir[i] = std::cos(0.9 * ray + 1.3 * i) + 0.3;
    const double dn = norm(dir);
    for (int j = 0; j < 200; ++j) {
      const double r = delta * std::pow(R / delta, j / 199.0);
      for (int i = 0; i < n; ++i) x[i] = r * dir[i] / dn;
      if (partial_norm(x, fl.k) == 0.0) continue;
      const double u = u0(r);
      for (int i = 0; i < n; ++i) X[i] = -u * c * std::pow(r, m - 2.0) * x[i];
      fl.F(x, F);
      for (int i = 0; i < n; ++i) Y[i] = u * c * F[i];
      worst = std::max(worst, std::abs(r_functional_raw(X, Y, p)));
    }
  }
  rep.residual_R_max = worst;
  return rep;
}

SpotReport hardy_spot_test(const HardyParams& params, const std::vector<BumpFunction>& bumps,
                           const BallRuleSpec& rule) {
  if (bumps.empty()) throw Error(ErrorCode::EmptyInput, "no test functions supplied");
  const double constant = sharp_constant_general_p(params).value;
  const WeightSpec ws = WeightSpec::power(params, 0.0);
  const int n = params.n(), k = params.k();
  const double p = params.p();
  SpotReport rep{std::numeric_limits<double>::infinity(), constant, {}};
  std::vector<double> grad(n);
  for (const auto& b : bumps) {
    const TestFunction u = b.as_test_function();
    if (static_cast<int>(u.center.size()) != n) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
    check_support(u, k);
    const auto I = integrate_ball(u, 2, rule, [&](std::span<const double> x, std::span<double> out) {
      const double V = weight_V(x, ws);
      u.gradient(x, grad);
      const double y = partial_norm(x, k);
      out[0] = V * std::pow(norm(grad), p);
      out[1] = V * std::pow(y, -p) * std::pow(std::abs(u.value(x)), p);
    });
    const double q = I[0] / I[1];
    rep.quotients.push_back(q);
    rep.min_quotient = std::min(rep.min_quotient, q);
  }
  return rep;
}

// ---- seeded configurations ----------------------------------------------------------

namespace {

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t index, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

double uni(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

BumpFunction bump_from(std::mt19937_64& rng, int n, int k) {
  std::vector<double> center(n);
  double cy = 0.0;
  for (int i = 0; i < k; ++i) {
    center[i] = uni(rng, -1.0, 1.0);
    cy += center[i] * center[i];
  }
  cy = std::sqrt(cy);
  const double target = uni(rng, 0.8, 1.5);
  for (int i = 0; i < k; ++i) center[i] *= target / cy;
  for (int i = k; i < n; ++i) center[i] = uni(rng, -1.0, 1.0);
  const double width = std::min(0.1 * norm(center), target / 3.5);
  const int degree = std::uniform_int_distribution<int>(0, 3)(rng);
  std::vector<double> coef{1.0};
  for (int d = 1; d <= degree; ++d)
    for (int i = 0; i < n; ++i) {
      if (d == 1) {
        const double mag = uni(rng, 0.1, 0.2);
        coef.push_back(uni(rng, 0.0, 1.0) < 0.5 ? -mag : mag);
      } else {
        coef.push_back(uni(rng, -0.005, 0.005));
      }
    }
  return BumpFunction(center, width, degree, coef, k);
}

}  // namespace

BumpFunction random_bump(int n, int k, std::uint64_t seed, std::uint64_t index) {
  auto rng = make_rng(seed, index, 0);
  return bump_from(rng, n, k);
}

E2Config random_e2_config(std::uint64_t seed, std::uint64_t index) {
  auto rng = make_rng(seed, index, 1);
  const int n = uni(rng, 0.0, 1.0) < 0.5 ? 2 : 3;
  const double alpha = uni(rng, -0.4, 0.6), beta = uni(rng, -0.5, 0.5);
  const HardyParams hp(n, 2.0, alpha, beta);
  const ExponentPair ex{uni(rng, -1.5, 0.5), uni(rng, -1.5, 0.5)};
  return {WeightSpec::p2(hp, ex), bump_from(rng, n, n - 1)};
}

E2Config random_ep_config(std::uint64_t seed, std::uint64_t index, double p) {
  auto rng = make_rng(seed, index, 2);
  const int n = uni(rng, 0.0, 1.0) < 0.5 ? 2 : 3;
  const double alpha = uni(rng, -0.3, 0.6), beta = uni(rng, -0.4, 0.6);
  double gamma = uni(rng, -1.2, 0.6);
  if (std::abs(gamma) < 0.05) gamma = -0.5;
  const HardyParams hp(n, p, alpha, beta);
  return {WeightSpec::power(hp, gamma), bump_from(rng, n, n - 1)};
}

CknConfig random_ckn_config(std::uint64_t seed, std::uint64_t index) {
  auto rng = make_rng(seed, index, 3);
  for (;;) {
    const int n = uni(rng, 0.0, 1.0) < 0.5 ? 2 : 3;
    const double ps[] = {1.5, 2.0, 3.0};
    const double p = ps[std::uniform_int_distribution<int>(0, 2)(rng)];
    const double beta = uni(rng, -0.2, 0.3), mu = uni(rng, -0.2, 0.3);
    const double g2 = uni(rng, -0.3, 0.3), g3 = uni(rng, -0.3, 0.3);
    const double alpha = (beta * (p - 1.0) + mu) / p;
    const double g1 = (g3 * (p - 1.0) + g2 - 1.0) / p;
    const CknParams ckn(n, p, alpha, beta, mu, g1, g2, g3);
    const auto adm = admissible_ckn(ckn);
    if (adm.integrable && adm.balanced && adm.normalized) return {ckn, bump_from(rng, n, n - 1)};
  }
}

}  // namespace hardy
