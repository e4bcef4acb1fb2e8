#include "hardy/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "hardy/closed_form.hpp"
#include "hardy/error.hpp"
#include "hardy/identities.hpp"
#include "hardy/optimizer.hpp"
#include "hardy/parallel.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/rayleigh.hpp"
#include "hardy/weights.hpp"

namespace hardy {
namespace {

using Clock = std::chrono::steady_clock;

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(stream), 0x68617264u};
  return std::mt19937_64(seq);
}

double uni(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

CheckItem item(std::string label, double value, double bound, std::string note = {}) {
  return {std::move(label), value, bound, value <= bound, std::move(note)};
}

// Runs body, timing it and converting exceptions into a failed batch.
CheckBatch run_batch(std::string name, const std::function<void(CheckBatch&)>& body) {
  CheckBatch b{std::move(name), false, {}, {}, {}, 0.0};
  const auto t0 = Clock::now();
  try {
    body(b);
  } catch (const std::exception& e) {
    b.error = e.what();
  }
  b.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  b.passed = b.error.empty() &&
             std::all_of(b.items.begin(), b.items.end(), [](const CheckItem& i) { return i.passed; });
  return b;
}

double worst(const std::vector<CheckItem>& items) {
  double w = 0.0;
  for (const auto& i : items) w = std::max(w, i.value);
  return w;
}

std::vector<double> random_point(std::mt19937_64& rng, int n, int k, double min_axis) {
  std::vector<double> x(n);
  for (;;) {
    for (auto& v : x) v = uni(rng, -1.0, 1.0);
    double y2 = 0.0;
    for (int i = 0; i < k; ++i) y2 += x[i] * x[i];
    if (std::sqrt(y2) >= min_axis) return x;
  }
}

// Worst relative error of weight vs oracle over 50 points of one random spec.
double weight_spec_error(std::uint64_t seed, std::uint64_t index, bool general_p, std::string& label) {
  auto rng = stream_rng(seed, index, general_p ? 11 : 10);
  const int n = 2 + static_cast<int>(index % 3);
  const double alpha = uni(rng, -0.5, 0.5), beta = uni(rng, -0.5, 0.5);
  WeightSpec spec = WeightSpec::p2(HardyParams(n, 2.0, alpha, beta), {0.0, 0.0});
  if (general_p) {
    const double ps[] = {1.5, 3.0, 4.0};
    const double p = ps[index % 3];
    spec = WeightSpec::power(HardyParams(n, p, alpha, beta), uni(rng, -1.1, -0.5));
  } else {
    spec.exponents = {uni(rng, -1.0, 1.0), uni(rng, -1.0, 1.0)};
  }
  const int k = spec.params.k();
  auto V = [&](std::span<const double> y) { return weight_V(y, spec); };
  auto f = [&](std::span<const double> y) { return weight_f(y, spec); };
  double w = 0.0;
  for (int j = 0; j < 50; ++j) {
    const auto x = random_point(rng, n, k, 0.1);
    const double h = default_fd_step(x, k);
    double exact, oracle;
    if (general_p) {
      exact = weight_general_p(x, spec);
      oracle = divergence_oracle_p(V, f, spec.params.p(), x, h);
    } else {
      exact = weight_p2(x, spec);
      oracle = divergence_oracle(V, f, x, h);
    }
    w = std::max(w, rel_err(oracle, exact));
  }
  label = "weight set " + std::to_string(index) + " n=" + std::to_string(n) + " p=" +
          std::to_string(spec.params.p()).substr(0, 3);
  return w;
}

}  // namespace

CheckBatch verify_batch_e2(std::uint64_t seed, int count) {
  return run_batch("E2", [&](CheckBatch& b) {
    std::vector<double> res(count);
    parallel_for(count, [&](std::size_t i) {
      const auto c = random_e2_config(seed, i);
      res[i] = verify_E2(c.spec, c.bump.as_test_function()).residual_rel;
    });
    for (int i = 0; i < count; ++i) b.items.push_back(item("config " + std::to_string(i), res[i], 1e-6));
    b.metrics.push_back({"worst_residual", worst(b.items)});
  });
}

CheckBatch verify_batch_ep(std::uint64_t seed, int count) {
  return run_batch("Ep", [&](CheckBatch& b) {
    const double ps[] = {1.5, 2.0, 3.0, 4.0};
    std::vector<double> res(count);
    parallel_for(count, [&](std::size_t i) {
      const auto c = random_ep_config(seed, i, ps[i % 4]);
      res[i] = verify_Ep(c.spec, c.bump.as_test_function()).residual_rel;
    });
    for (int i = 0; i < count; ++i)
      b.items.push_back(item("config " + std::to_string(i) + " p=" + std::to_string(ps[i % 4]).substr(0, 3),
                             res[i], 1e-5));
    b.metrics.push_back({"worst_residual", worst(b.items)});
  });
}

CheckBatch verify_batch_ckn(std::uint64_t seed, int count) {
  return run_batch("CKNp", [&](CheckBatch& b) {
    std::vector<double> res(count), point(count);
    parallel_for(count, [&](std::size_t i) {
      const auto c = random_ckn_config(seed, i);
      const auto r = verify_CKNp(c.ckn, c.bump.as_test_function());
      res[i] = r.residual_rel;
      for (const auto& [key, v] : r.extras)
        if (key == "pointwise_div_rel") point[i] = v;
    });
    double wr = 0.0, wp = 0.0;
    for (int i = 0; i < count; ++i) {
      b.items.push_back(item("config " + std::to_string(i) + " identity", res[i], 1e-5));
      b.items.push_back(item("config " + std::to_string(i) + " pointwise divergence", point[i], 1e-6));
      wr = std::max(wr, res[i]);
      wp = std::max(wp, point[i]);
    }
    b.metrics.push_back({"worst_residual", wr});
    b.metrics.push_back({"worst_pointwise", wp});
  });
}

CheckBatch verify_batch_weights(std::uint64_t seed, int count) {
  return run_batch("weights", [&](CheckBatch& b) {
    std::vector<double> e2(count), ep(count);
    std::vector<std::string> l2(count), lp(count);
    parallel_for(2 * static_cast<std::size_t>(count), [&](std::size_t t) {
      const std::size_t i = t / 2;
      if (t % 2 == 0)
        e2[i] = weight_spec_error(seed, i, false, l2[i]);
      else
        ep[i] = weight_spec_error(seed, i, true, lp[i]);
    });
    double w2 = 0.0, wp = 0.0;
    for (int i = 0; i < count; ++i) {
      b.items.push_back(item("p=2 " + l2[i], e2[i], 1e-6));
      w2 = std::max(w2, e2[i]);
    }
    for (int i = 0; i < count; ++i) {
      b.items.push_back(item("general " + lp[i], ep[i], 1e-5));
      wp = std::max(wp, ep[i]);
    }
    b.metrics.push_back({"worst_p2", w2});
    b.metrics.push_back({"worst_general_p", wp});
  });
}

CheckBatch verify_batch_leray(int count) {
  return run_batch("leray", [&](CheckBatch& b) {
    auto V = [](std::span<const double> y) { return std::abs(y[0]) / std::hypot(y[0], y[1]); };
    auto f = [](std::span<const double> y) { return std::sqrt(-std::log(std::hypot(y[0], y[1]))); };
    double w = 0.0;
    for (int j = 0; j < count; ++j) {
      // Radii in (0.1, 0.9), angles from the x2 axis in (0.1, 3.0): strictly inside the punctured half disc.
      const double r = 0.1 + 0.8 * (j + 0.5) / count;
      const double ph = 0.1 + 2.9 * static_cast<double>((j * 7) % count) / count;
      const std::vector<double> x{r * std::sin(ph), r * std::cos(ph)};
      const double o = divergence_oracle(V, f, x, default_fd_step(x, 1));
      const double L = std::log(r);
      const double ref = std::abs(x[0]) / (4.0 * r * r * r * L * L);
      w = std::max(w, rel_err(o, ref));
    }
    b.items.push_back(item("worst relative error over " + std::to_string(count) + " points", w, 1e-6));
    b.metrics.push_back({"worst_rel", w});
  });
}

CheckBatch verify_batch_lemma1() {
  return run_batch("lemma1", [&](CheckBatch& b) {
    const std::vector<double> eps{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    const QuadratureSpec qs;
    // Denominator kernel of the K > 1 family at n = 3, alpha = beta = -1/2: a = 2b - 1 + sqrt K, b = -beta - sqrt K / 2.
    const double sk = std::sqrt(3.0);
    const XiSpec family{2.0 * -0.5 - 1.0 + sk, 0.5 - sk / 2.0};
    const XiSpec canonical{1.0, -1.0};
    const XiSpec control{1.0, -0.6};
    const auto r1 = lemma1_check(family, eps, qs);
    const auto r2 = lemma1_check(canonical, eps, qs);
    const auto r3 = lemma1_check(control, eps, qs);
    b.items.push_back(item("family kernel |slope|", std::abs(r1.slope_vs_log_eps), 1e-2));
    b.items.push_back(item("t/(t^2+1) |slope|", std::abs(r2.slope_vs_log_eps), 1e-2));
    const double s3 = std::abs(r3.slope_vs_log_eps);
    b.items.push_back({"negative control |slope| >= 0.1", s3, 0.1, s3 >= 0.1, "a + 2b != -1"});
    b.metrics.push_back({"family_max_abs_q", r1.max_abs});
    b.metrics.push_back({"canonical_max_abs_q", r2.max_abs});
  });
}

CheckBatch verify_batch_r_functional(std::uint64_t seed, int count) {
  return run_batch("rfunc", [&](CheckBatch& b) {
    auto rng = stream_rng(seed, 0, 20);
    double most_negative = 0.0;
    int thrown = 0;
    std::vector<double> X, Y;
    for (int s = 0; s < count; ++s) {
      const int d = std::uniform_int_distribution<int>(1, 4)(rng);
      const double p = uni(rng, 1.0, 5.0) + 1e-9;
      X.assign(d, 0.0);
      Y.assign(d, 0.0);
      for (int i = 0; i < d; ++i) {
        X[i] = uni(rng, -2.0, 2.0);
        Y[i] = uni(rng, -2.0, 2.0);
      }
      // Every fourth sample sits on the zero set X = -t Y (zero only for t = 1) to stress cancellation.
      if (s % 4 == 0)
        for (int i = 0; i < d; ++i) X[i] = -Y[i] * (s % 8 == 0 ? 1.0 : uni(rng, 0.5, 1.5));
      try {
        r_functional(X, Y, p);
      } catch (const Error&) {
        ++thrown;
      }
      most_negative = std::min(most_negative, r_functional_raw(X, Y, p));
    }
    b.items.push_back(item("samples with R < -1e-12 (relative)", thrown, 0.0));
    const std::vector<double> e{0.3, -1.2}, me{-0.3, 1.2};
    b.items.push_back(item("p=2, X=-Y", std::abs(r_functional(me, e, 2.0)), 1e-12));
    b.metrics.push_back({"most_negative_raw", most_negative});
  });
}

CheckBatch verify_batch(const std::string& which, std::uint64_t seed, int count) {
  if (which == "E2") return verify_batch_e2(seed, count);
  if (which == "Ep") return verify_batch_ep(seed, count);
  if (which == "CKNp") return verify_batch_ckn(seed, count);
  if (which == "weights") return verify_batch_weights(seed, count);
  if (which == "leray") return verify_batch_leray(count);
  if (which == "lemma1") return verify_batch_lemma1();
  if (which == "rfunc") return verify_batch_r_functional(seed, count);
  throw Error(ErrorCode::InvalidArgument, "unknown verify target '" + which + "'");
}

// ---- acceptance -------------------------------------------------------------------------

namespace {

CheckBatch criterion_1() {
  return run_batch("reference constant vector", [](CheckBatch& b) {
    const HardyParams hp(3, 2.0, -0.5, -0.5);
    const double expected = (2.0 * std::sqrt(3.0) - 3.0) / 4.0;
    sharp_constant_p2(hp);
    const auto t0 = Clock::now();
    const auto r = sharp_constant_p2(hp);
    const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    b.items.push_back(item("|C - (2 sqrt3 - 3)/4|", std::abs(r.value - expected), 1e-12));
    b.items.push_back({"kind SHARP", 0.0, 0.0, r.kind == ConstantKind::SHARP, std::string(to_string(r.kind))});
    b.items.push_back(item("runtime [s]", dt, 1e-3));
    b.metrics.push_back({"constant", r.value});
  });
}

CheckBatch criterion_2() {
  return run_batch("closed form vs n-formula at alpha = beta = -1/2", [](CheckBatch& b) {
    for (int n = 3; n <= 10; ++n) {
      const double c = sharp_constant_p2(HardyParams(n, 2.0, -0.5, -0.5)).value;
      const double ref = (n * n - 6.0 * n + 6.0) / 4.0 + std::sqrt(2.0 * n - 3.0) / 2.0;
      b.items.push_back(item("n=" + std::to_string(n), std::abs(c - ref), 1e-12));
    }
  });
}

CheckBatch criterion_3(std::uint64_t seed) {
  return run_batch("optimizer vs closed form, 200 instances", [&](CheckBatch& b) {
    auto rng = stream_rng(seed, 0, 30);
    std::vector<HardyParams> inst;
    while (inst.size() < 200) {
      const int n = std::uniform_int_distribution<int>(2, 5)(rng);
      const HardyParams hp(n, 2.0, uni(rng, -2.0, 2.0), uni(rng, -2.0, 2.0));
      if (admissible_hardy(hp)) inst.push_back(hp);
    }
    std::vector<double> gap(inst.size());
    std::vector<std::string> err(inst.size());
    const auto t0 = Clock::now();
    parallel_for(inst.size(), [&](std::size_t i) {
      try {
        const double c = sharp_constant_p2(inst[i]).value;
        gap[i] = std::abs(maximize(inst[i]).value - c) / (1.0 + std::abs(c));
      } catch (const std::exception& e) {
        gap[i] = INFINITY;
        err[i] = e.what();
      }
    });
    const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    double w = 0.0;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      w = std::max(w, gap[i]);
      if (gap[i] > 1e-6) {
        const auto& h = inst[i];
        b.items.push_back(item("n=" + std::to_string(h.n()) + " a=" + std::to_string(h.alpha()) +
                                   " b=" + std::to_string(h.beta()),
                               gap[i], 1e-6, err[i]));
      }
    }
    b.items.push_back(item("worst |opt - C|/(1+C)", w, 1e-6));
    b.metrics.push_back({"worst_gap", w});
    b.items.push_back(item("runtime [s]", dt, 60.0));
  });
}

CheckBatch criterion_4(std::uint64_t seed) {
  return run_batch("general-k formula vs optimizer, 100 instances", [&](CheckBatch& b) {
    auto rng = stream_rng(seed, 0, 40);
    std::vector<HardyParams> inst;
    while (inst.size() < 100) {
      const int n = std::uniform_int_distribution<int>(3, 5)(rng);
      const int k = std::uniform_int_distribution<int>(1, n - 2)(rng);
      const HardyParams hp(n, 2.0, uni(rng, -2.0, 2.0), uni(rng, -2.0, 2.0), k);
      if (admissible_hardy(hp)) inst.push_back(hp);
    }
    std::vector<double> gap(inst.size());
    std::vector<std::string> err(inst.size());
    parallel_for(inst.size(), [&](std::size_t i) {
      try {
        gap[i] = std::abs(maximize(inst[i]).value - sharp_constant_general_k_p2(inst[i]).value);
      } catch (const std::exception& e) {
        gap[i] = INFINITY;
        err[i] = e.what();
      }
    });
    double w = 0.0;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      w = std::max(w, gap[i]);
      if (gap[i] > 1e-6) {
        const auto& h = inst[i];
        b.items.push_back(item("finding: n=" + std::to_string(h.n()) + " k=" + std::to_string(h.k()) +
                                   " a=" + std::to_string(h.alpha()) + " b=" + std::to_string(h.beta()),
                               gap[i], 1e-6, err[i]));
      }
    }
    b.items.push_back(item("worst |opt - formula|", w, 1e-6));
    b.metrics.push_back({"worst_gap", w});
  });
}

CheckBatch criterion_5() {
  return run_batch("sharpness sweep K > 1", [](CheckBatch& b) {
    const HardyParams hp(3, 2.0, -0.5, -0.5);
    const double C = sharp_constant_p2(hp).value;
    const auto kind = select_family(hp);
    const auto r = sweep_and_extrapolate(hp, default_eps_list(kind), default_sigma_list(hp, kind), QuadratureSpec{});
    double min_ratio = INFINITY;
    int increases = 0;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      min_ratio = std::min(min_ratio, r.rows[i].quotient / C);
      if (i > 0 && !(r.rows[i].quotient < r.rows[i - 1].quotient)) ++increases;
    }
    b.items.push_back({"min quotient / C >= 1 - 1e-6", min_ratio, 1.0 - 1e-6, min_ratio >= 1.0 - 1e-6, {}});
    b.items.push_back(item("non-decreasing steps as eps decreases", increases, 0.0));
    b.items.push_back(item("|extrapolated - C| / C", rel_err(r.extrapolated, C), 0.02));
    b.metrics.push_back({"extrapolated", r.extrapolated});
    b.metrics.push_back({"constant", C});
  });
}

CheckBatch criterion_6() {
  return run_batch("sharpness sweep general p", [](CheckBatch& b) {
    const HardyParams hp(3, 3.0, 0.0, 0.5);
    const double C = 8.0 / 27.0;
    const auto kind = select_family(hp);
    const auto t0 = Clock::now();
    const auto r = sweep_and_extrapolate(hp, default_eps_list(kind), default_sigma_list(hp, kind), QuadratureSpec{});
    const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    b.items.push_back(item("|extrapolated - (2/3)^3| / (2/3)^3", rel_err(r.extrapolated, C), 0.02));
    b.items.push_back(item("runtime [s]", dt, 120.0));
    b.metrics.push_back({"extrapolated", r.extrapolated});
  });
}

CheckBatch criterion_7() {
  return run_batch("sharpness sweep K <= 1", [](CheckBatch& b) {
    const HardyParams hp(3, 2.0, 0.0, -0.05);
    const double C = 1.0;
    const auto kind = select_family(hp);
    const auto r = sweep_and_extrapolate(hp, default_eps_list(kind), default_sigma_list(hp, kind), QuadratureSpec{});
    b.items.push_back(item("|extrapolated - 1|", rel_err(r.extrapolated, C), 0.02));
    b.metrics.push_back({"extrapolated", r.extrapolated});
  });
}

CheckBatch criterion_8(std::uint64_t seed) {
  return run_batch("identity suite", [&](CheckBatch& b) {
    for (const auto& sub : {verify_batch_e2(seed, 20), verify_batch_ep(seed, 20), verify_batch_ckn(seed, 10),
                            verify_batch_r_functional(seed, 100000)}) {
      if (!sub.error.empty()) throw Error(ErrorCode::InvalidArgument, sub.name + ": " + sub.error);
      double w = 0.0;
      bool ok = true;
      for (const auto& i : sub.items) ok = ok && i.passed;
      for (const auto& m : sub.metrics) b.metrics.push_back({sub.name + "." + m.first, m.second});
      for (const auto& i : sub.items) w = std::max(w, i.value);
      b.items.push_back({sub.name + " (all items within bound)", w, 0.0, ok, {}});
    }
  });
}

CheckBatch criterion_9() {
  return run_batch("CKN extremal", [](CheckBatch& b) {
    const auto r = ckn_extremal_check(CknParams(3, 2.0, 0.0, 0.0, 0.0, -0.5, 0.0, 0.0));
    b.items.push_back(item("|quotient - 1|", std::abs(r.quotient - 1.0), 1e-3));
    b.items.push_back(item("max |R|", r.residual_R_max, 1e-12));
    b.metrics.push_back({"quotient", r.quotient});
  });
}

CheckBatch criterion_10(std::uint64_t seed) {
  return run_batch("special functions", [&](CheckBatch& b) {
    auto rng = stream_rng(seed, 0, 100);
    double wb = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double t = uni(rng, 0.05, 30.0), g = uni(rng, 0.05, 30.0);
      wb = std::max(wb, rel_err(beta(t + 1.0, g), t / (t + g) * beta(t, g)));
    }
    b.items.push_back(item("Beta recurrence, 1000 pairs", wb, 1e-13));
    const QuadratureSpec qs;
    double ws = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double lam = -0.95 + i * 10.95 / 49.0;
      ws = std::max(ws, rel_err(sin_power_integral_numeric(lam, qs), sin_power_integral(lam)));
    }
    b.items.push_back(item("sin-power quadrature vs Beta, 50 exponents", ws, 1e-9));
    b.metrics.push_back({"beta_recurrence_rel", wb});
    b.metrics.push_back({"sin_power_rel", ws});
    const auto lem = verify_batch_lemma1();
    if (!lem.error.empty()) throw Error(ErrorCode::InvalidArgument, "lemma1: " + lem.error);
    for (const auto& i : lem.items) b.items.push_back(i);
  });
}

CheckBatch criterion_11(std::uint64_t seed) {
  return run_batch("weight oracle", [&](CheckBatch& b) {
    std::vector<double> e(20);
    std::vector<std::string> l(20);
    parallel_for(20, [&](std::size_t i) { e[i] = weight_spec_error(seed, i, false, l[i]); });
    double w = 0.0;
    for (double v : e) w = std::max(w, v);
    b.items.push_back(item("weight_p2 vs oracle, 20 specs x 50 points", w, 1e-6));
    b.metrics.push_back({"worst_weight_rel", w});
    const auto lr = verify_batch_leray(50);
    if (!lr.error.empty()) throw Error(ErrorCode::InvalidArgument, "leray: " + lr.error);
    b.items.push_back(lr.items.front());
    b.metrics.push_back({"worst_leray_rel", lr.items.front().value});
  });
}

}  // namespace

CheckBatch acceptance_criterion(int id, std::uint64_t seed) {
  CheckBatch b;
  switch (id) {
    case 1: b = criterion_1(); break;
    case 2: b = criterion_2(); break;
    case 3: b = criterion_3(seed); break;
    case 4: b = criterion_4(seed); break;
    case 5: b = criterion_5(); break;
    case 6: b = criterion_6(); break;
    case 7: b = criterion_7(); break;
    case 8: b = criterion_8(seed); break;
    case 9: b = criterion_9(); break;
    case 10: b = criterion_10(seed); break;
    case 11: b = criterion_11(seed); break;
    default:
      return {"criterion " + std::to_string(id), false, {}, {}, "no such criterion", 0.0};
  }
  b.name = std::to_string(id) + ". " + b.name;
  return b;
}

std::vector<CheckBatch> acceptance_all(std::uint64_t seed) {
  std::vector<CheckBatch> out;
  for (int id = 1; id <= 11; ++id) out.push_back(acceptance_criterion(id, seed));
  return out;
}

}  // namespace hardy
