#include "hardy/optimizer.hpp"

#include <cmath>
#include <limits>

#include "hardy/error.hpp"
#include "hardy/kernels.hpp"
#include "hardy/parallel.hpp"
#include "hardy/weights.hpp"

namespace hardy {

namespace {

constexpr int kGridHalfSteps = 400;
constexpr double kGridSlack = 1e-6;
constexpr int kBranchSamples = 4000;
constexpr double kBracketWidth = 1e-10;
constexpr double kStallGap = 1e-4;

const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;

// Golden-section maximization of a unimodal objective on [lo, hi].
template <class F>
double golden_max(F&& fn, double lo, double hi) {
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = fn(c), fd = fn(d);
  while (hi - lo > kBracketWidth) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = fn(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = fn(d);
    }
  }
  return 0.5 * (lo + hi);
}

struct Candidate {
  double value;
  ExponentPair at;
  OptimizerBranch branch;
};

void check_branch_points_inside(const HardyParams& params, double B) {
  const double m = params.n() + 2.0 * params.alpha();
  const double K = k_value(params.n(), params.alpha(), params.beta());
  bool inside = std::abs((params.k() + 2.0 * params.alpha()) / 2.0) <= B / 2;
  if (K > 0.0) {
    const double s = std::sqrt(K);
    inside = inside && std::abs((-m + s) / 2) <= B / 2 && std::abs((m + s) / 2) <= B / 2 &&
             std::abs(params.beta()) + s / 2 <= B / 2;
  }
  if (!inside) throw Error(ErrorCode::Domain, "branch points fall outside half the search box");
}

}  // namespace

double search_half_width(const HardyParams& params) {
  return 2.0 * (params.n() + 2.0 * std::abs(params.alpha()) + 2.0 * std::abs(params.beta())) + 4.0;
}

OptimizerReport maximize(const HardyParams& params) {
  if (params.p() != 2.0) throw Error(ErrorCode::InvalidArgument, "maximize requires p = 2");
  if (!admissible_hardy(params)) compute_K(params);  // throws Inadmissible

  const double B = search_half_width(params);
  check_branch_points_inside(params, B);
  const double a = params.n() + 2.0 * params.alpha() + 2.0 * params.beta();
  const double beta = params.beta();
  const double step = B / kGridHalfSteps;
  const std::size_t count = 2 * kGridHalfSteps + 1;

  std::vector<double> axis(count);
  for (std::size_t i = 0; i < count; ++i) axis[i] = -B + static_cast<double>(i) * step;

  // Phase 1: grid. Row i fixes theta, the kernel scans lambda.
  std::vector<kernels::RowMax> rows(count);
  parallel_for(count, [&](std::size_t i) {
    const double theta = axis[i];
    const kernels::ConstraintRow row{H(theta, params), a + 2.0 * theta, 2.0 * beta * theta};
    rows[i] = kernels::constrained_row_max(row, axis, kGridSlack);
  });
  double grid_value = -std::numeric_limits<double>::infinity();
  for (const auto& r : rows)
    if (r.index >= 0 && r.value > grid_value) grid_value = r.value;

  // Phase 2a: vertex of H, feasible when H2(theta, .) has a real root.
  std::vector<Candidate> cands;
  const double theta_v = golden_max([&](double t) { return H(t, params); }, -B, B);
  const double lin_v = a + 2.0 * theta_v;
  const double disc_v = lin_v * lin_v - 8.0 * beta * theta_v;
  if (disc_v >= 0.0) {
    // Both roots tie; the lower one continues the lambda < -beta branch.
    const double lambda_v = (-lin_v - std::sqrt(disc_v)) / 2.0;
    cands.push_back({H1(theta_v, lambda_v, params), {theta_v, lambda_v}, OptimizerBranch::VERTEX});
  }

  // Phase 2b: the active branch theta(lambda) on each side of the pole lambda = -beta.
  auto theta_of = [&](double lam) { return -lam * (a + lam) / (2.0 * (lam + beta)); };
  auto branch_objective = [&](double lam) {
    if (lam + beta == 0.0) return -std::numeric_limits<double>::infinity();
    const double t = theta_of(lam);
    if (!(std::abs(t) <= B)) return -std::numeric_limits<double>::infinity();
    return H(t, params);
  };
  const double sides[2][2] = {{-B, -beta}, {-beta, B}};
  for (int s = 0; s < 2; ++s) {
    const double lo = sides[s][0], hi = sides[s][1];
    if (!(hi > lo)) continue;
    const double ds = (hi - lo) / kBranchSamples;
    int best = -1;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < kBranchSamples; ++j) {
      const double v = branch_objective(lo + (j + 0.5) * ds);
      if (v > best_val) {
        best_val = v;
        best = j;
      }
    }
    if (best < 0) continue;
    const double blo = std::max(lo, lo + (best - 0.5) * ds);
    const double bhi = std::min(hi, lo + (best + 1.5) * ds);
    const double lam = golden_max(branch_objective, blo, bhi);
    const double cand_lam = branch_objective(lam) >= best_val ? lam : lo + (best + 0.5) * ds;
    const double t = theta_of(cand_lam);
    cands.push_back({H1(t, cand_lam, params), {t, cand_lam},
                     s == 0 ? OptimizerBranch::LOWER_BRANCH : OptimizerBranch::UPPER_BRANCH});
  }
  if (cands.empty()) throw Error(ErrorCode::NonConverged, "no feasible refinement candidate");

  // Ties go to the earlier candidate (the vertex).
  Candidate best = cands.front();
  for (const auto& c : cands)
    if (c.value > best.value + 1e-12 * (1.0 + std::abs(best.value))) best = c;

  if (grid_value - best.value > kStallGap)
    throw Error(ErrorCode::NonConverged, "grid value exceeds refined value by " +
                                             std::to_string(grid_value - best.value));

  const double residual = H2(best.at.theta, best.at.lambda, params);
  OptimizerReport rep;
  rep.value = best.value;
  rep.argmax = best.at;
  rep.active_constraint = std::abs(residual) <= 1e-8;
  rep.branch_guess = best.branch;
  rep.diagnostics = {grid_value, best.value, residual};
  return rep;
}

std::vector<RegimeSweepRow> sweep_regimes(int n, const std::vector<double>& alpha_grid,
                                          const std::vector<double>& beta_grid) {
  std::vector<RegimeSweepRow> rows;
  rows.reserve(alpha_grid.size() * beta_grid.size());
  for (double alpha : alpha_grid) {
    for (double beta : beta_grid) {
      RegimeSweepRow row{alpha, beta, false, 0.0, "", std::nullopt, 0.0, 0.0, false, false, ""};
      const HardyParams hp(n, 2.0, alpha, beta);
      row.admissible = admissible_hardy(hp);
      if (!row.admissible) {
        row.note = hardy_violations(hp).front();
        rows.push_back(std::move(row));
        continue;
      }
      const Regime reg = compute_K(hp);
      row.k_value = reg.k_value;
      row.regime = std::string(to_string(reg.family));
      row.closed_form = sharp_constant_p2(hp).value;
      try {
        row.report = maximize(hp);
        row.discrepancy = std::abs(row.report->value - row.closed_form);
        const OptimizerBranch expected =
            reg.family == Family::K_GT_1 ? OptimizerBranch::LOWER_BRANCH : OptimizerBranch::VERTEX;
        row.branch_agreement = row.report->branch_guess == expected;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NonConverged) throw;
        row.nonconverged = true;
        row.note = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string_view to_string(OptimizerBranch branch) {
  switch (branch) {
    case OptimizerBranch::VERTEX: return "VERTEX";
    case OptimizerBranch::LOWER_BRANCH: return "LOWER_BRANCH";
    case OptimizerBranch::UPPER_BRANCH: return "UPPER_BRANCH";
  }
  return "?";
}

}  // namespace hardy
