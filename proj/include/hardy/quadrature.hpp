#pragma once

#include <functional>
#include <span>
#include <vector>

namespace hardy {

// ---- special functions -------------------------------------------------------------

double log_gamma(double t);
/// B(t, g); throws Error(Domain) unless t, g > 0.
double beta(double t, double g);
/// int_0^pi (sin s)^lam ds = B((lam+1)/2, 1/2); throws Error(Domain) for lam <= -1.
double sin_power_integral(double lam);
/// Surface measure of the unit sphere in R^m, 2 pi^(m/2) / Gamma(m/2).
double sphere_area(int m);

/// Cutoff: 1 on (-inf, 1], 0 on [2, inf), 1 - (6u^5 - 15u^4 + 10u^3) with u = t - 1 between.
double cutoff_eta(double t);
double eta_prime(double t);

// ---- quadrature --------------------------------------------------------------------

enum class QuadMethod { TANH_SINH, GAUSS_LEGENDRE_COMPOSITE };

struct QuadratureSpec {
  QuadMethod method = QuadMethod::TANH_SINH;
  int levels = 12;  // maximum refinement level
  double abs_tol = 1e-15;
  double rel_tol = 1e-12;
  double truncation_radius = 2.0;

  /// Throws Error(InvalidArgument) unless tolerances are positive and levels >= 3.
  void validate() const;
};

struct QuadResult {
  double value;
  double err_estimate;
};

using Integrand = std::function<double(double)>;
/// f(x, da, db) with da = x - a and db = b - x accurate to full relative precision near the ends.
using EndpointIntegrand = std::function<double(double, double, double)>;

/// Throws QuadratureError when the level-difference estimate misses max(abs_tol, rel_tol |value|).
/// A singularity at a nonzero right end b is only resolved to about ulp(b)-relative node placement
/// (a few 1e-9 for t^-1/2); use integrate_1d_ep there.
QuadResult integrate_1d(const Integrand& f, double a, double b, const QuadratureSpec& spec);
QuadResult integrate_1d_ep(const EndpointIntegrand& f, double a, double b, const QuadratureSpec& spec);

/// Sum over consecutive panels [breaks[i], breaks[i+1]].
QuadResult integrate_panels(const EndpointIntegrand& f, std::span<const double> breaks,
                            const QuadratureSpec& spec);

/// {0, scale, 4 scale, 16 scale, ..., 1, R}: panels for integrands with a feature at r ~ scale.
std::vector<double> geometric_breakpoints(double scale, double R);

/// int_0^b r^c S(r) dr for c > -1 and S smooth at 0. S(0) b^(c+1)/(c+1) is taken exactly and
/// the remainder r^c (S(r) - S(0)) is integrated numerically.
QuadResult integrate_power_start(double c, const Integrand& S, double b, const QuadratureSpec& spec);

/// int_0^(pi/2) (sin phi)^e g(phi) dphi for e > -1 and g smooth, with the sin^e mass at 0 exact.
QuadResult angular_integral(double e, const Integrand& g, const QuadratureSpec& spec);

/// Tanh-sinh evaluation of int_0^pi (sin s)^lam ds.
double sin_power_integral_numeric(double lam, const QuadratureSpec& spec);

/// (int_0^R fr dr) (int_0^pi fphi dphi), R = spec.truncation_radius.
double integrate_2d_product(const Integrand& fr, const Integrand& fphi, const QuadratureSpec& spec);
/// Nested tensor quadrature of f(r, phi) over (0, R) x (0, pi); radial panels split at r_breaks
/// (interior points only, defaults to none).
double integrate_2d(const std::function<double(double, double)>& f, const QuadratureSpec& spec,
                    std::span<const double> r_breaks = {});

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int m);

// ---- kernel boundedness check ------------------------------------------------------

/// xi(t) = t^a (t^2 + 1)^b.
struct XiSpec {
  double a;
  double b;
  bool satisfies_hypothesis(double tol = 1e-12) const;
};

struct Lemma1Result {
  std::vector<double> values;  // q(eps) = int_0^inf xi(t) eta(eps t) dt + ln eps
  double max_abs;
  double slope_vs_log_eps;
};

/// Throws Error(Domain) for a <= -1 or eps outside (0, 1).
Lemma1Result lemma1_check(const XiSpec& xi, const std::vector<double>& eps_list, const QuadratureSpec& spec);

/// Least-squares slope and intercept of y on x.
struct LineFit {
  double slope;
  double intercept;
  double rms;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace hardy
