#pragma once

#include <string>
#include <vector>

namespace hardy {

/// One anisotropic Hardy inequality instance
///   || |x|^beta |y|^(alpha+1) grad u ||_p >= C || |x|^beta |y|^alpha u ||_p,
/// where x = (y, x'') with y the first k coordinates (k = n-1 by default).
class HardyParams {
 public:
  /// Throws Error(InvalidArgument) unless n >= 2, 1 <= k <= n-1 and p >= 1.
  /// k <= 0 selects the default k = n-1.
  HardyParams(int n, double p, double alpha, double beta, int k = 0);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  double p() const noexcept { return p_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  bool full_axis() const noexcept { return k_ == n_ - 1; }

 private:
  int n_;
  int k_;
  double p_;
  double alpha_;
  double beta_;
};

/// Exponents of the product-form CKN inequality
///   || |x|^g2 |x'|^mu grad u ||_p || |x|^g3 |x'|^beta u ||_p^(p-1) >= C || |x|^g1 |x'|^alpha u ||_p^p.
class CknParams {
 public:
  /// Throws Error(InvalidArgument) unless n >= 2 and p > 1.
  CknParams(int n, double p, double alpha, double beta, double mu, double gamma1,
            double gamma2, double gamma3);

  int n() const noexcept { return n_; }
  double p() const noexcept { return p_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double mu() const noexcept { return mu_; }
  double gamma1() const noexcept { return gamma1_; }
  double gamma2() const noexcept { return gamma2_; }
  double gamma3() const noexcept { return gamma3_; }

 private:
  int n_;
  double p_;
  double alpha_, beta_, mu_;
  double gamma1_, gamma2_, gamma3_;
};

enum class Family { K_GT_1, K_EQ_1, K_LT_1 };

struct Regime {
  double k_value;
  Family family;
};

inline constexpr double kRegimeTolerance = 1e-9;
inline constexpr double kCknTolerance = 1e-12;

/// Strict local-integrability conditions k + p*alpha > 0 and p*(alpha+beta) > -n.
bool admissible_hardy(const HardyParams& params);

/// Human-readable list of the violated admissibility inequalities (empty when admissible).
std::vector<std::string> hardy_violations(const HardyParams& params);

struct CknAdmissibility {
  bool integrable;
  bool balanced;
  bool normalized;
};

CknAdmissibility admissible_ckn(const CknParams& params);
std::vector<std::string> ckn_violations(const CknParams& params);

/// K = -4 beta (n + 2 alpha + beta); classification uses kRegimeTolerance around K = 1.
/// Throws Error(Inadmissible) for non-admissible parameters.
Regime compute_K(const HardyParams& params);

/// Unchecked K; both algebraic forms are exposed for the identity test.
double k_value(int n, double alpha, double beta);
double k_value_difference_form(int n, double alpha, double beta);

Family classify(double k_value);

std::string_view to_string(Family family);

}  // namespace hardy
