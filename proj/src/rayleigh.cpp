#include "hardy/rayleigh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hardy/error.hpp"
#include "hardy/parallel.hpp"

namespace hardy {

namespace {

double theta0_of(const HardyParams& hp) { return (1.0 - hp.n() - 2.0 * hp.alpha()) / 2.0; }

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

}  // namespace

void TestFamily::validate() const {
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
  require(admissible_hardy(params), "family parameters are not admissible");
  require(params.full_axis(), "test families are defined for k = n-1");
  const double K = k_value(params.n(), params.alpha(), params.beta());
  switch (kind) {
    case FamilyKind::P2_K_GT_1:
      require(params.p() == 2.0, "P2 family requires p = 2");
      require(K > 1.0, "P2_K_GT_1 requires K > 1");
      require(sigma == 0.0, "P2_K_GT_1 takes sigma = 0");
      break;
    case FamilyKind::P2_K_EQ_1:
      require(params.p() == 2.0, "P2 family requires p = 2");
      require(sigma > 0.0, "P2_K_EQ_1 requires sigma > 0");
      break;
    case FamilyKind::P2_K_LT_1:
      require(params.p() == 2.0, "P2 family requires p = 2");
      require(K < 1.0, "P2_K_LT_1 requires K < 1");
      require(sigma > 0.0 && sigma < std::sqrt(1.0 - K) / 2.0, "P2_K_LT_1 requires 0 < sigma < sqrt(1-K)/2");
      break;
    case FamilyKind::GENERAL_P_BETA_NONNEG:
      require(params.beta() >= 0.0, "general-p family requires beta >= 0");
      require(sigma > 0.0 && sigma < 1.0, "general-p family requires 0 < sigma < 1");
      break;
  }
}

double TestFamily::theta() const {
  switch (kind) {
    case FamilyKind::P2_K_GT_1: {
      const double K = k_value(params.n(), params.alpha(), params.beta());
      return (-(params.n() + 2.0 * params.alpha()) + std::sqrt(K)) / 2.0;
    }
    case FamilyKind::P2_K_EQ_1:
    case FamilyKind::P2_K_LT_1: return theta0_of(params) + sigma;
    case FamilyKind::GENERAL_P_BETA_NONNEG:
      return -(params.k() + params.p() * params.alpha()) / params.p() + sigma;
  }
  return 0.0;
}

double TestFamily::mu() const {
  const double b = params.beta();
  switch (kind) {
    case FamilyKind::P2_K_GT_1: return -b - std::sqrt(k_value(params.n(), params.alpha(), b)) / 2.0;
    case FamilyKind::P2_K_EQ_1: return -b - 0.5 - sigma;
    case FamilyKind::P2_K_LT_1: {
      const double K = k_value(params.n(), params.alpha(), b);
      return -b - (1.0 + std::sqrt(1.0 - K)) / 2.0;
    }
    case FamilyKind::GENERAL_P_BETA_NONNEG: return -b - 1.0 / params.p() - sigma;
  }
  return 0.0;
}

namespace {

// Radial integral of r^c S(r) over (0, 2): the first panel takes r^c exactly.
double radial_integral(double c, const Integrand& S, double eps, const QuadratureSpec& spec) {
  const std::vector<double> breaks = geometric_breakpoints(eps, 2.0);
  double total = integrate_power_start(c, S, breaks[1], spec).value;
  total += integrate_panels([&](double r, double, double) { return std::pow(r, c) * S(r); },
                            std::span<const double>(breaks).subspan(1), spec)
               .value;
  return total;
}

}  // namespace

QuotientResult quotient_p2(const TestFamily& family, const QuadratureSpec& spec) {
  family.validate();
  if (family.kind == FamilyKind::GENERAL_P_BETA_NONNEG)
    throw Error(ErrorCode::InvalidArgument, "quotient_p2 takes a p = 2 family");
  const HardyParams& hp = family.params;
  const double n = hp.n(), a = hp.alpha(), b = hp.beta();
  const double theta = family.theta();
  const double mu = family.mu();
  const double eps = family.epsilon;
  const double c = n - 1.0 + 2.0 * a + 2.0 * b + 2.0 * theta;
  const double e_low = n - 2.0 + 2.0 * a + 2.0 * theta;
  if (!(c > -1.0) || !(e_low > -1.0))
    throw Error(ErrorCode::SingularParams, "reduced exponent <= -1; integrals diverge");

  const double e2 = eps * eps;
  auto D = [&](double r) {  // g'(r) / (r^2+eps^2)^(mu/2)
    return mu * r * cutoff_eta(r) / (r * r + e2) + eta_prime(r);
  };
  const double Rd = radial_integral(
      c, [&](double r) { const double et = cutoff_eta(r); return std::pow(r * r + e2, mu) * et * et; }, eps, spec);
  const double R2 = radial_integral(
      c, [&](double r) { const double d = D(r); return r * r * std::pow(r * r + e2, mu) * d * d; }, eps, spec);
  const double R3 = radial_integral(
      c, [&](double r) { return r * std::pow(r * r + e2, mu) * cutoff_eta(r) * D(r); }, eps, spec);

  const double A_low = sin_power_integral(e_low);
  const double A_high = sin_power_integral(e_low + 2.0);
  QuotientResult out;
  out.j_terms = {A_low * theta * theta * Rd, A_high * R2, A_high * 2.0 * theta * R3};
  out.numerator = out.j_terms[0] + out.j_terms[1] + out.j_terms[2];
  out.denominator = A_low * Rd;
  out.quotient = out.numerator / out.denominator;
  return out;
}

QuotientResult quotient_general_p(const TestFamily& family, const QuadratureSpec& spec) {
  family.validate();
  if (family.kind != FamilyKind::GENERAL_P_BETA_NONNEG)
    throw Error(ErrorCode::InvalidArgument, "quotient_general_p takes the general-p family");
  const HardyParams& hp = family.params;
  const double n = hp.n(), p = hp.p(), a = hp.alpha(), b = hp.beta();
  const double gamma = family.theta();
  const double lambda = family.mu();
  const double eps = family.epsilon;
  const double e = n - 2.0 + p * (a + gamma);
  const double c = n - 1.0 + p * (a + b + gamma);
  if (!(c > -1.0) || !(e > -1.0)) throw Error(ErrorCode::SingularParams, "reduced exponent <= -1; integrals diverge");

  const double e2 = eps * eps;
  const double half_p = 0.5 * p;
  // |grad v|^p V / weights, with (r^2+eps^2)^(p lambda/2) and the angular power factored out.
  auto angular = [&](double r) {
    const double et = cutoff_eta(r);
    const double d = lambda * r * et / (r * r + e2) + eta_prime(r);
    const double base = gamma * gamma * et * et;
    const double cross = r * r * d * d + 2.0 * gamma * r * et * d;
    auto g = [&](double phi) {
      const double s = std::sin(phi);
      const double q = std::max(base + s * s * cross, 0.0);
      return std::pow(q, half_p);
    };
    return 2.0 * angular_integral(e, g, spec).value;
  };
  const double num = radial_integral(
      c, [&](double r) { return std::pow(r * r + e2, half_p * lambda) * angular(r); }, eps, spec);
  const double rden = radial_integral(
      c, [&](double r) { return std::pow(r * r + e2, half_p * lambda) * std::pow(cutoff_eta(r), p); }, eps, spec);
  QuotientResult out;
  out.j_terms = {0.0, 0.0, 0.0};
  out.numerator = num;
  out.denominator = sin_power_integral(e) * rden;
  out.quotient = out.numerator / out.denominator;
  return out;
}

QuotientResult quotient(const TestFamily& family, const QuadratureSpec& spec) {
  return family.kind == FamilyKind::GENERAL_P_BETA_NONNEG ? quotient_general_p(family, spec)
                                                          : quotient_p2(family, spec);
}

FamilyKind select_family(const HardyParams& params) {
  if (!admissible_hardy(params)) compute_K(params);
  if (params.p() == 2.0 && params.full_axis()) {
    const double K = compute_K(params).k_value;
    switch (classify(K)) {
      case Family::K_GT_1: return FamilyKind::P2_K_GT_1;
      case Family::K_LT_1: return FamilyKind::P2_K_LT_1;
      case Family::K_EQ_1:
        // The K = 1 family needs 2 beta in (-1, 0).
        if (params.beta() > -0.5 && params.beta() < 0.0) return FamilyKind::P2_K_EQ_1;
        return K > 1.0 ? FamilyKind::P2_K_GT_1 : FamilyKind::P2_K_LT_1;
    }
  }
  if (params.beta() >= 0.0 && params.full_axis()) return FamilyKind::GENERAL_P_BETA_NONNEG;
  throw Error(ErrorCode::Unsupported, "no extremizing family for these parameters");
}

std::vector<double> default_eps_list(FamilyKind kind) {
  if (kind == FamilyKind::GENERAL_P_BETA_NONNEG) return {1e-3, 1e-4, 1e-5, 1e-6};
  return {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
}

std::vector<double> default_sigma_list(const HardyParams& params, FamilyKind kind) {
  if (kind == FamilyKind::P2_K_GT_1) return {};
  std::vector<double> out{0.02, 0.01, 0.005, 0.0025};
  if (kind == FamilyKind::P2_K_LT_1) {
    const double cap = std::sqrt(1.0 - k_value(params.n(), params.alpha(), params.beta())) / 2.0;
    if (out.front() >= cap)
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = cap * 0.4 / static_cast<double>(1u << i);
  }
  return out;
}

namespace {

struct Limit {
  double value;
  double residual;
  double inv_log;
};

// num and den are affine in |ln eps|; the limit is the slope ratio.
Limit slope_ratio(const std::vector<SweepRow>& rows) {
  std::vector<double> L, num, den, q, invL;
  for (const auto& r : rows) {
    L.push_back(std::abs(std::log(r.epsilon)));
    invL.push_back(1.0 / L.back());
    num.push_back(r.numerator);
    den.push_back(r.denominator);
    q.push_back(r.quotient);
  }
  const LineFit fn = fit_line(L, num);
  const LineFit fd = fit_line(L, den);
  double ss = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double model = (fn.slope * L[i] + fn.intercept) / (fd.slope * L[i] + fd.intercept);
    ss += (q[i] - model) * (q[i] - model);
  }
  return {fn.slope / fd.slope, std::sqrt(ss / rows.size()), fit_line(invL, q).intercept};
}

// Quotients converge geometrically in eps; Aitken on the last three.
Limit aitken(const std::vector<SweepRow>& rows) {
  const std::size_t m = rows.size();
  const double q3 = rows[m - 1].quotient;
  if (m < 3) return {q3, 0.0, q3};
  const double q2 = rows[m - 2].quotient, q1 = rows[m - 3].quotient;
  const double d2 = q3 - q2, d1 = q2 - q1;
  const double denom = d2 - d1;
  const double lim = denom != 0.0 && std::abs(denom) > 1e-300 ? q3 - d2 * d2 / denom : q3;
  return {lim, std::abs(q3 - lim), q3};
}

// Least-squares polynomial in sigma; returns the value at sigma = 0 and the RMS misfit.
std::pair<double, double> poly_intercept(const std::vector<double>& s, const std::vector<double>& y, int degree) {
  const std::size_t m = s.size();
  const int k = degree + 1;
  const double scale = *std::max_element(s.begin(), s.end());
  std::vector<double> A(k * k, 0.0), rhs(k, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double t = s[i] / scale;
    std::vector<double> pw(k, 1.0);
    for (int j = 1; j < k; ++j) pw[j] = pw[j - 1] * t;
    for (int r = 0; r < k; ++r) {
      rhs[r] += pw[r] * y[i];
      for (int cc = 0; cc < k; ++cc) A[r * k + cc] += pw[r] * pw[cc];
    }
  }
  // Gaussian elimination with partial pivoting.
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int r = col + 1; r < k; ++r)
      if (std::abs(A[r * k + col]) > std::abs(A[piv * k + col])) piv = r;
    for (int cc = 0; cc < k; ++cc) std::swap(A[col * k + cc], A[piv * k + cc]);
    std::swap(rhs[col], rhs[piv]);
    for (int r = col + 1; r < k; ++r) {
      const double f = A[r * k + col] / A[col * k + col];
      for (int cc = col; cc < k; ++cc) A[r * k + cc] -= f * A[col * k + cc];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> coef(k);
  for (int r = k - 1; r >= 0; --r) {
    double v = rhs[r];
    for (int cc = r + 1; cc < k; ++cc) v -= A[r * k + cc] * coef[cc];
    coef[r] = v / A[r * k + r];
  }
  double ss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double t = s[i] / scale;
    double v = 0.0;
    for (int j = k - 1; j >= 0; --j) v = v * t + coef[j];
    ss += (y[i] - v) * (y[i] - v);
  }
  return {coef[0], std::sqrt(ss / m)};
}

}  // namespace

SweepResult sweep_and_extrapolate(const HardyParams& params, const std::vector<double>& eps_list,
                                  const std::vector<double>& sigma_list, const QuadratureSpec& spec) {
  spec.validate();
  const FamilyKind kind = select_family(params);
  SweepResult out;
  out.family = kind;

  if (eps_list.size() < 2) throw Error(ErrorCode::InvalidArgument, "eps list needs at least two values");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0 && eps_list[i] < 1.0)) throw Error(ErrorCode::InvalidArgument, "eps must lie in (0, 1)");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) throw Error(ErrorCode::InvalidArgument, "eps list must decrease");
  }
  const bool log_family = kind != FamilyKind::P2_K_LT_1;
  std::vector<double> sigmas = sigma_list;
  if (kind == FamilyKind::P2_K_GT_1) {
    if (!sigmas.empty()) {
      if (classify(compute_K(params).k_value) != Family::K_GT_1) {
        out.note = "K within the K = 1 band but 2 beta outside (-1, 0); routed through the K > 1 family";
        sigmas.clear();
      } else {
        throw Error(ErrorCode::InvalidArgument, "sigma list is not used for K > 1");
      }
    }
    sigmas = {0.0};
  } else if (sigmas.empty()) {
    throw Error(ErrorCode::InvalidArgument, "sigma list is required for this family");
  }
  if (log_family && eps_list.size() < 3 && kind == FamilyKind::P2_K_GT_1)
    throw Error(ErrorCode::InvalidArgument, "slope fit needs at least three eps values");

  const std::size_t ne = eps_list.size();
  out.rows.resize(sigmas.size() * ne);
  for (std::size_t si = 0; si < sigmas.size(); ++si)
    TestFamily{kind, params, eps_list[0], sigmas[si]}.validate();
  parallel_for(out.rows.size(), [&](std::size_t idx) {
    const double sigma = sigmas[idx / ne];
    const double eps = eps_list[idx % ne];
    const QuotientResult q = quotient(TestFamily{kind, params, eps, sigma}, spec);
    out.rows[idx] = {eps, sigma, q.numerator, q.denominator, q.quotient};
  });

  out.fit.eps_model = log_family ? FitModel::LOG_SLOPE_RATIO : FitModel::AITKEN_EPS;
  double residual = 0.0;
  std::vector<double> limits;
  for (std::size_t si = 0; si < sigmas.size(); ++si) {
    const std::vector<SweepRow> group(out.rows.begin() + si * ne, out.rows.begin() + (si + 1) * ne);
    const Limit lim = log_family ? slope_ratio(group) : aitken(group);
    limits.push_back(lim.value);
    residual = std::max(residual, lim.residual);
    out.fit.inv_log_eps_estimate = lim.inv_log;
  }

  if (kind == FamilyKind::P2_K_GT_1) {
    out.extrapolated = limits.front();
    out.fit.model = FitModel::LOG_SLOPE_RATIO;
  } else {
    out.fit.sigma_limits = limits;
    if (sigmas.size() == 1) {
      out.extrapolated = limits.front();
      out.fit.model = out.fit.eps_model;
    } else {
      const int degree = static_cast<int>(std::min<std::size_t>(2, sigmas.size() - 1));
      const auto [intercept, rms] = poly_intercept(sigmas, limits, degree);
      out.extrapolated = intercept;
      residual = std::max(residual, rms);
      out.fit.model = degree == 1 ? FitModel::LINEAR_SIGMA : FitModel::POLY_SIGMA;
    }
  }
  out.fit.residual = residual;
  if (!std::isfinite(out.extrapolated) || residual > 0.05 * std::abs(out.extrapolated))
    throw Error(ErrorCode::FitUnstable, "fit residual " + std::to_string(residual) + " exceeds 5% of the limit");
  return out;
}

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::P2_K_GT_1: return "P2_K_GT_1";
    case FamilyKind::P2_K_EQ_1: return "P2_K_EQ_1";
    case FamilyKind::P2_K_LT_1: return "P2_K_LT_1";
    case FamilyKind::GENERAL_P_BETA_NONNEG: return "GENERAL_P_BETA_NONNEG";
  }
  return "?";
}

std::string_view to_string(FitModel model) {
  switch (model) {
    case FitModel::INV_LOG_EPS: return "INV_LOG_EPS";
    case FitModel::LINEAR_SIGMA: return "LINEAR_SIGMA";
    case FitModel::LOG_SLOPE_RATIO: return "LOG_SLOPE_RATIO";
    case FitModel::AITKEN_EPS: return "AITKEN_EPS";
    case FitModel::POLY_SIGMA: return "POLY_SIGMA";
  }
  return "?";
}

}  // namespace hardy
