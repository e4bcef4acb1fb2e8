#include "hardy/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "hardy/error.hpp"

namespace hardy {

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
  if (levels < 3) throw Error(ErrorCode::InvalidArgument, "quadrature needs at least 3 levels");
  if (!(truncation_radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "truncation radius must be positive");
}

namespace {

constexpr int kMaxTanhSinhLevel = 14;
constexpr double kTanhSinhTMax = 6.1;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Nodes on [-1, 1] for t >= 0, mirrored for t < 0. dist is 1 - x computed without cancellation.
struct TsNode {
  double x;
  double dist;
  double w;
};

struct TsTable {
  std::vector<std::vector<TsNode>> levels;  // level 0: t = 0..; level L: odd multiples of 2^-L
};

TsNode ts_node(double t) {
  const double u = 0.5 * std::numbers::pi * std::sinh(t);
  const double e = std::exp(-2.0 * u);
  const double ch = std::cosh(u);
  return {std::tanh(u), 2.0 * e / (1.0 + e), 0.5 * std::numbers::pi * std::cosh(t) / (ch * ch)};
}

const TsTable& ts_table() {
  static const TsTable table = [] {
    TsTable tbl;
    tbl.levels.resize(kMaxTanhSinhLevel + 1);
    for (int L = 0; L <= kMaxTanhSinhLevel; ++L) {
      const double h = std::ldexp(1.0, -L);
      for (int j = (L == 0 ? 0 : 1);; j += (L == 0 ? 1 : 2)) {
        const double t = j * h;
        if (t > kTanhSinhTMax) break;
        const TsNode nd = ts_node(t);
        if (nd.dist <= 0.0 || nd.w == 0.0) break;
        tbl.levels[L].push_back(nd);
      }
    }
    return tbl;
  }();
  return table;
}

void check_finite(double v, double x) {
  if (!std::isfinite(v)) throw Error(ErrorCode::Domain, "integrand is not finite at x = " + std::to_string(x));
}

bool converged(double err, double value, double mag, const QuadratureSpec& spec) {
  return err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value)) || err <= 64.0 * kEps * mag;
}

QuadResult tanh_sinh(const EndpointIntegrand& f, double a, double b, const QuadratureSpec& spec) {
  const double d = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  const TsTable& tbl = ts_table();
  const int max_level = std::min(spec.levels, kMaxTanhSinhLevel);

  auto level_sum = [&](int L, double& mag) {
    double s = 0.0;
    for (const TsNode& nd : tbl.levels[L]) {
      if (L == 0 && &nd == &tbl.levels[0].front()) {
        const double v = f(c, d, d);
        check_finite(v, c);
        s += nd.w * v;
        mag += std::abs(nd.w * v);
        continue;
      }
      const double off = d * nd.dist;          // distance to the near end
      const double far = d * (1.0 + nd.x);     // distance to the far end
      const double vr = f(b - off, far, off);
      const double vl = f(a + off, off, far);
      check_finite(vr, b - off);
      check_finite(vl, a + off);
      s += nd.w * (vr + vl);
      mag += std::abs(nd.w * vr) + std::abs(nd.w * vl);
    }
    return s;
  };

  double mag = 0.0;
  double sum = level_sum(0, mag);
  double value = d * sum;
  double err = std::numeric_limits<double>::infinity();
  for (int L = 1; L <= max_level; ++L) {
    const double h = std::ldexp(1.0, -L);
    const double prev = value;
    double mag_new = 0.0;
    const double add = level_sum(L, mag_new);
    mag += mag_new;
    sum += add;
    value = d * h * sum;
    err = std::abs(value - prev);
    if (L >= 3 && converged(err, value, d * h * mag, spec)) return {value, err};
  }
  throw QuadratureError("tanh-sinh did not reach tolerance on [" + std::to_string(a) + ", " + std::to_string(b) + "]",
                        value, err);
}

GaussRule make_gauss(int m) {
  GaussRule r;
  r.nodes.resize(m);
  r.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (m == 1) p0 = 1.0, p1 = x;
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.nodes[i] = x;
    r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

QuadResult gauss_composite(const EndpointIntegrand& f, double a, double b, const QuadratureSpec& spec) {
  const GaussRule& g = gauss_legendre(20);
  double prev = 0.0;
  double value = 0.0;
  double err = std::numeric_limits<double>::infinity();
  const int max_level = std::min(spec.levels, 16);
  for (int L = 0; L <= max_level; ++L) {
    const long panels = 1L << L;
    const double w = (b - a) / static_cast<double>(panels);
    double s = 0.0, mag = 0.0;
    for (long pnl = 0; pnl < panels; ++pnl) {
      const double lo = a + pnl * w;
      const double hi = pnl + 1 == panels ? b : lo + w;
      const double hw = 0.5 * (hi - lo);
      for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const double x = lo + hw * (1.0 + g.nodes[i]);
        const double v = f(x, x - a, b - x);
        check_finite(v, x);
        s += hw * g.weights[i] * v;
        mag += std::abs(hw * g.weights[i] * v);
      }
    }
    prev = value;
    value = s;
    if (L == 0) continue;
    err = std::abs(value - prev);
    if (L >= 2 && converged(err, value, mag, spec)) return {value, err};
  }
  throw QuadratureError("composite Gauss-Legendre did not reach tolerance", value, err);
}

}  // namespace

const GaussRule& gauss_legendre(int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "Gauss rule needs at least one node");
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, make_gauss(m)).first;
  return it->second;
}

QuadResult integrate_1d_ep(const EndpointIntegrand& f, double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  if (a == b) return {0.0, 0.0};
  if (b < a) {
    const QuadResult r = integrate_1d_ep([&](double x, double da, double db) { return f(x, db, da); }, b, a, spec);
    return {-r.value, r.err_estimate};
  }
  if (spec.method == QuadMethod::GAUSS_LEGENDRE_COMPOSITE) return gauss_composite(f, a, b, spec);
  return tanh_sinh(f, a, b, spec);
}

QuadResult integrate_1d(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  return integrate_1d_ep([&](double x, double, double) { return f(x); }, a, b, spec);
}

QuadResult integrate_panels(const EndpointIntegrand& f, std::span<const double> breaks,
                            const QuadratureSpec& spec) {
  QuadResult total{0.0, 0.0};
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const QuadResult r = integrate_1d_ep(f, breaks[i], breaks[i + 1], spec);
    total.value += r.value;
    total.err_estimate += r.err_estimate;
  }
  return total;
}

std::vector<double> geometric_breakpoints(double scale, double R) {
  std::vector<double> out{0.0};
  const double top = std::min(1.0, R);
  for (double r = scale; r < top * (1.0 - 1e-12); r *= 4.0) out.push_back(r);
  out.push_back(top);
  if (R > top) out.push_back(R);
  return out;
}

QuadResult integrate_power_start(double c, const Integrand& S, double b, const QuadratureSpec& spec) {
  if (!(c > -1.0)) throw Error(ErrorCode::Domain, "power-start integral requires c > -1");
  const double s0 = S(0.0);
  const double head = s0 * std::pow(b, c + 1.0) / (c + 1.0);
  const QuadResult rest = integrate_1d_ep(
      [&](double r, double da, double) { return da == 0.0 ? 0.0 : std::pow(da, c) * (S(r) - s0); }, 0.0, b, spec);
  return {head + rest.value, rest.err_estimate};
}

QuadResult angular_integral(double e, const Integrand& g, const QuadratureSpec& spec) {
  if (!(e > -1.0)) throw Error(ErrorCode::Domain, "angular integral requires e > -1");
  const double g0 = g(0.0);
  const double head = g0 * 0.5 * sin_power_integral(e);
  const QuadResult rest = integrate_1d_ep(
      [&](double phi, double da, double) { return da == 0.0 ? 0.0 : std::pow(std::sin(da), e) * (g(phi) - g0); },
      0.0, 0.5 * std::numbers::pi, spec);
  return {head + rest.value, rest.err_estimate};
}

double sin_power_integral_numeric(double lam, const QuadratureSpec& spec) {
  if (!(lam > -1.0)) throw Error(ErrorCode::Domain, "sin_power_integral requires lam > -1");
  return integrate_1d_ep([&](double, double da, double db) { return std::pow(std::sin(std::min(da, db)), lam); },
                         0.0, std::numbers::pi, spec)
      .value;
}

double integrate_2d_product(const Integrand& fr, const Integrand& fphi, const QuadratureSpec& spec) {
  const double R = spec.truncation_radius;
  return integrate_1d(fr, 0.0, R, spec).value * integrate_1d(fphi, 0.0, std::numbers::pi, spec).value;
}

double integrate_2d(const std::function<double(double, double)>& f, const QuadratureSpec& spec,
                    std::span<const double> r_breaks) {
  const double R = spec.truncation_radius;
  std::vector<double> breaks{0.0};
  for (double b : r_breaks)
    if (b > 0.0 && b < R) breaks.push_back(b);
  breaks.push_back(R);
  std::sort(breaks.begin(), breaks.end());
  auto inner = [&](double r, double, double) {
    return integrate_1d_ep(
               [&](double phi, double da, double db) {
                 // Pass the angle measured from the nearer pole so sin() keeps full precision.
                 return da <= db ? f(r, phi) : f(r, std::numbers::pi - db);
               },
               0.0, std::numbers::pi, spec)
        .value;
  };
  return integrate_panels(inner, breaks, spec).value;
}

bool XiSpec::satisfies_hypothesis(double tol) const { return a > -1.0 && std::abs(a + 2.0 * b + 1.0) <= tol; }

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t m = std::min(x.size(), y.size());
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "line fit needs at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) mx += x[i], my += y[i];
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorCode::InvalidArgument, "line fit needs distinct abscissae");
  LineFit out{sxy / sxx, 0.0, 0.0};
  out.intercept = my - out.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = y[i] - (out.slope * x[i] + out.intercept);
    ss += r * r;
  }
  out.rms = std::sqrt(ss / m);
  return out;
}

Lemma1Result lemma1_check(const XiSpec& xi, const std::vector<double>& eps_list, const QuadratureSpec& spec) {
  if (!(xi.a > -1.0)) throw Error(ErrorCode::Domain, "xi requires a > -1");
  Lemma1Result out{{}, 0.0, 0.0};
  std::vector<double> logs;
  for (double eps : eps_list) {
    if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::Domain, "eps must lie in (0, 1)");
    const double top = 2.0 / eps;
    // Panels 0, 1, 4, 16, ..., 1/eps, 2/eps.
    std::vector<double> breaks{0.0, 1.0};
    for (double t = 4.0; t < 1.0 / eps; t *= 4.0) breaks.push_back(t);
    if (1.0 / eps > 1.0) breaks.push_back(1.0 / eps);
    breaks.push_back(top);
    const QuadResult head =
        integrate_power_start(xi.a, [&](double t) { return std::pow(t * t + 1.0, xi.b) * cutoff_eta(eps * t); }, 1.0,
                              spec);
    const QuadResult tail = integrate_panels(
        [&](double t, double, double) { return std::pow(t, xi.a) * std::pow(t * t + 1.0, xi.b) * cutoff_eta(eps * t); },
        std::span<const double>(breaks).subspan(1), spec);
    const double q = head.value + tail.value + std::log(eps);
    out.values.push_back(q);
    out.max_abs = std::max(out.max_abs, std::abs(q));
    logs.push_back(std::log(eps));
  }
  if (out.values.size() >= 2) out.slope_vs_log_eps = fit_line(logs, out.values).slope;
  return out;
}

}  // namespace hardy
