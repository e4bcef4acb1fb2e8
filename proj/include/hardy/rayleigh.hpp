#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "hardy/params.hpp"
#include "hardy/quadrature.hpp"

namespace hardy {

enum class FamilyKind { P2_K_GT_1, P2_K_EQ_1, P2_K_LT_1, GENERAL_P_BETA_NONNEG };

/// v = |x'|^theta (r^2 + eps^2)^(mu/2) eta(r), r = |x|, with (theta, mu) fixed by the kind:
///   P2_K_GT_1:  theta1, lambda1                      (sigma = 0)
///   P2_K_EQ_1:  theta0 + sigma, -beta - 1/2 - sigma  (sigma > 0)
///   P2_K_LT_1:  theta0 + sigma, lambda0              (0 < sigma < sqrt(1-K)/2)
///   GENERAL_P_BETA_NONNEG: -(k+p alpha)/p + sigma, -beta - 1/p - sigma  (beta >= 0, 0 < sigma < 1)
struct TestFamily {
  FamilyKind kind;
  HardyParams params;
  double epsilon;
  double sigma;

  /// Throws Error(InvalidArgument) when the family invariants fail.
  void validate() const;
  double theta() const;  // exponent of |x'|
  double mu() const;     // exponent of (r^2 + eps^2)^(1/2)
};

struct QuotientResult {
  double numerator;
  double denominator;
  double quotient;
  std::array<double, 3> j_terms;  // J1, J2, J3 for p = 2 kinds; zero otherwise
};

/// Spherically reduced quotient, omega-free, for the p = 2 kinds. Each of J1, J2, J3 and the
/// denominator is a Beta factor times a radial integral.
QuotientResult quotient_p2(const TestFamily& family, const QuadratureSpec& spec);

/// General-p quotient: the numerator does not factor and is integrated over (r, phi).
QuotientResult quotient_general_p(const TestFamily& family, const QuadratureSpec& spec);

QuotientResult quotient(const TestFamily& family, const QuadratureSpec& spec);

enum class FitModel { INV_LOG_EPS, LINEAR_SIGMA, LOG_SLOPE_RATIO, AITKEN_EPS, POLY_SIGMA };

struct SweepRow {
  double epsilon;
  double sigma;
  double numerator;
  double denominator;
  double quotient;
};

struct SweepFit {
  FitModel model;        // model behind `extrapolated`
  double residual;       // largest RMS misfit over the fitting stages
  FitModel eps_model;    // per-sigma limit in eps
  std::vector<double> sigma_limits;  // eps -> 0 estimate per sigma (empty for K > 1)
  double inv_log_eps_estimate;       // C' of q = C' + c/|ln eps| on the last sigma group
};

struct SweepResult {
  FamilyKind family;
  std::vector<SweepRow> rows;
  double extrapolated;
  SweepFit fit;
  std::string note;
};

/// Family used for these parameters: p = 2, k = n-1 by regime; otherwise the beta >= 0 family.
/// Throws Error(Unsupported) when no family exists.
FamilyKind select_family(const HardyParams& params);

std::vector<double> default_eps_list(FamilyKind kind);
std::vector<double> default_sigma_list(const HardyParams& params, FamilyKind kind);

/// Quotients on the (sigma, eps) grid, then the limit eps -> 0 per sigma and sigma -> 0.
/// Throws Error(FitUnstable) when the residual exceeds 5% of the extrapolated value.
SweepResult sweep_and_extrapolate(const HardyParams& params, const std::vector<double>& eps_list,
                                  const std::vector<double>& sigma_list, const QuadratureSpec& spec);

std::string_view to_string(FamilyKind kind);
std::string_view to_string(FitModel model);

}  // namespace hardy
