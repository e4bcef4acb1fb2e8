#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hardy/closed_form.hpp"
#include "hardy/params.hpp"

namespace hardy {

enum class OptimizerBranch { VERTEX, LOWER_BRANCH, UPPER_BRANCH };

struct OptimizerDiagnostics {
  double grid_value;
  double refined_value;
  double constraint_residual;  // H2 at the returned argmax
};

struct OptimizerReport {
  double value;
  ExponentPair argmax;
  bool active_constraint;
  OptimizerBranch branch_guess;
  OptimizerDiagnostics diagnostics;
};

/// Grid half-width B = 2(n + 2|alpha| + 2|beta|) + 4.
double search_half_width(const HardyParams& params);

/// max H1(theta, lambda) subject to H2(theta, lambda) >= 0 for p = 2 and any k, computed
/// without the closed forms: an 801 x 801 grid on [-B, B]^2 followed by refinement along
/// H2 = 0 (parametrized by lambda on either side of the pole at -beta) and at the vertex of H.
/// Throws Error(NonConverged) if the grid beats the refined value by more than 1e-4.
OptimizerReport maximize(const HardyParams& params);

struct RegimeSweepRow {
  double alpha;
  double beta;
  bool admissible;
  double k_value;
  std::string regime;
  std::optional<OptimizerReport> report;  // empty when inadmissible or not converged
  double closed_form;
  double discrepancy;
  bool branch_agreement;
  bool nonconverged;
  std::string note;
};

/// Oracle vs closed form over an (alpha, beta) grid with k = n-1. Inadmissible points and
/// non-converged refinements are flagged in their row; the sweep never aborts.
std::vector<RegimeSweepRow> sweep_regimes(int n, const std::vector<double>& alpha_grid,
                                          const std::vector<double>& beta_grid);

std::string_view to_string(OptimizerBranch branch);

}  // namespace hardy
