#include <cmath>
#include <numbers>

#include "hardy/error.hpp"
#include "hardy/quadrature.hpp"

namespace hardy {

double log_gamma(double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::Domain, "log_gamma requires t > 0");
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(t, &sign);
#else
  return std::lgamma(t);
#endif
}

double beta(double t, double g) {
  if (!(t > 0.0) || !(g > 0.0)) throw Error(ErrorCode::Domain, "beta requires positive arguments");
  // tgamma is correctly rounded to a few ulps; the log route loses digits to cancellation.
  if (t + g < 170.0) return std::tgamma(t) / std::tgamma(t + g) * std::tgamma(g);
  return std::exp(log_gamma(t) + log_gamma(g) - log_gamma(t + g));
}

double sin_power_integral(double lam) {
  if (!(lam > -1.0)) throw Error(ErrorCode::Domain, "sin_power_integral requires lam > -1");
  return beta((lam + 1.0) / 2.0, 0.5);
}

double sphere_area(int m) {
  if (m < 1) throw Error(ErrorCode::Domain, "sphere_area requires m >= 1");
  const double h = 0.5 * m;
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

double cutoff_eta(double t) {
  if (t <= 1.0) return 1.0;
  if (t >= 2.0) return 0.0;
  const double u = t - 1.0;
  return 1.0 - u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

double eta_prime(double t) {
  if (t <= 1.0 || t >= 2.0) return 0.0;
  const double u = t - 1.0;
  const double v = 1.0 - u;
  return -30.0 * u * u * v * v;
}

}  // namespace hardy
