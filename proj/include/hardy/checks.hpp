#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hardy {

/// One verified quantity: observed value against a bound.
struct CheckItem {
  std::string label;
  double value;
  double bound;
  bool passed;
  std::string note;
};

/// Outcome of a named batch. `passed` is the conjunction of the items unless `error` is set.
struct CheckBatch {
  std::string name;
  bool passed;
  std::vector<CheckItem> items;
  std::vector<std::pair<std::string, double>> metrics;
  std::string error;  // non-empty if the batch aborted with an exception
  double seconds;
};

// ---- verification batches (the CLI `verify` targets) --------------------------------

/// E2 identity on `count` seeded random configs, residual <= 1e-6.
CheckBatch verify_batch_e2(std::uint64_t seed, int count);
/// Ep identity, p cycling through {1.5, 2, 3, 4}, residual <= 1e-5.
CheckBatch verify_batch_ep(std::uint64_t seed, int count);
/// CKN identity (residual <= 1e-5) and pointwise field divergence (<= 1e-6).
CheckBatch verify_batch_ckn(std::uint64_t seed, int count);
/// weight_p2 against the divergence oracle, `count` specs x 50 points, plus general-p specs.
CheckBatch verify_batch_weights(std::uint64_t seed, int count);
/// -div(V grad f)/f for V = |x1|/|x|, f = sqrt(-ln|x|) at `count` points of the half disc.
CheckBatch verify_batch_leray(int count);
/// Boundedness of q(eps) for two admissible kernels and detection of a non-admissible one.
CheckBatch verify_batch_lemma1();
/// R(X, Y) >= -1e-12 on `count` random samples plus the X = -Y zero at p = 2.
CheckBatch verify_batch_r_functional(std::uint64_t seed, int count);

/// Dispatch by name: E2, Ep, CKNp, weights, leray, lemma1, rfunc. Throws Error(InvalidArgument) otherwise.
CheckBatch verify_batch(const std::string& which, std::uint64_t seed, int count);

// ---- acceptance criteria --------------------------------------------------------------

/// Criterion `id` in 1..11. Never throws; failures are reported in the batch.
CheckBatch acceptance_criterion(int id, std::uint64_t seed);
std::vector<CheckBatch> acceptance_all(std::uint64_t seed);

}  // namespace hardy
