#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "hardy/checks.hpp"
#include "hardy/closed_form.hpp"
#include "hardy/error.hpp"
#include "hardy/identities.hpp"
#include "hardy/optimizer.hpp"
#include "hardy/params.hpp"
#include "hardy/rayleigh.hpp"

namespace hardy::cli {
namespace {

using json = nlohmann::ordered_json;

struct Globals {
  std::string format = "json";
  std::uint64_t seed = 20240601;
  std::string config;
  bool quiet = false;
  std::string timestamp;
};

std::string fmt(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool has_flag(const std::vector<std::string>& args, const std::string& name) {
  for (const auto& a : args)
    if (a == name || a.rfind(name + "=", 0) == 0) return true;
  return false;
}

// Appends key=value lines of the --config file as flags not already present on the command line.
std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::InvalidArgument, path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config")
      throw Error(ErrorCode::InvalidArgument, path + ":" + std::to_string(lineno) + ": invalid key");
    const std::string flag = "--" + key;
    if (has_flag(args, flag)) continue;
    if (value == "true") {
      args.push_back(flag);
    } else if (value != "false") {
      args.push_back(flag);
      args.push_back(value);
    }
  }
  return args;
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::Inadmissible:
    case ErrorCode::InvalidArgument:
    case ErrorCode::Domain:
    case ErrorCode::SingularParams:
    case ErrorCode::Unsupported:
    case ErrorCode::SupportViolation:
    case ErrorCode::EmptyInput:
      return 2;
    default:
      return 1;
  }
}

json batch_json(const CheckBatch& b) {
  json items = json::array();
  for (const auto& i : b.items)
    items.push_back({{"label", i.label}, {"value", i.value}, {"bound", i.bound}, {"passed", i.passed}, {"note", i.note}});
  json metrics = json::object();
  for (const auto& [k, v] : b.metrics) metrics[k] = v;
  json out{{"name", b.name}, {"passed", b.passed}, {"items", items}, {"metrics", metrics}};
  if (!b.error.empty()) out["error"] = b.error;
  return out;
}

json sweep_json(const SweepResult& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"epsilon", row.epsilon},
                    {"sigma", row.sigma},
                    {"numerator", row.numerator},
                    {"denominator", row.denominator},
                    {"quotient", row.quotient}});
  return {{"family", to_string(r.family)},
          {"extrapolated", r.extrapolated},
          {"fit",
           {{"model", to_string(r.fit.model)},
            {"eps_model", to_string(r.fit.eps_model)},
            {"residual", r.fit.residual},
            {"sigma_limits", r.fit.sigma_limits},
            {"inv_log_eps_estimate", r.fit.inv_log_eps_estimate}}},
          {"note", r.note},
          {"rows", rows}};
}

void write_sweep_csv(std::ostream& out, const SweepResult& r) {
  out << "epsilon,sigma,numerator,denominator,quotient\n";
  for (const auto& row : r.rows)
    out << fmt(row.epsilon) << ',' << fmt(row.sigma) << ',' << fmt(row.numerator) << ',' << fmt(row.denominator)
        << ',' << fmt(row.quotient) << '\n';
  out << "# extrapolated=" << fmt(r.extrapolated) << '\n';
}

void flatten(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else if (j.is_number_float()) {
    out << prefix << ',' << fmt(j.get<double>()) << '\n';
  } else {
    out << prefix << ',' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

// Everything a command produces: the JSON result, an optional custom CSV body and the exit code.
struct Output {
  json result;
  std::function<void(std::ostream&)> csv;
  int code = 0;
};

void emit(std::ostream& out, const Globals& g, const json& manifest, const Output& o) {
  if (g.format == "csv") {
    out << "# manifest=" << manifest.dump() << '\n';
    if (o.csv) {
      o.csv(out);
    } else {
      out << "key,value\n";
      flatten(o.result, "", out);
    }
  } else {
    out << json{{"manifest", manifest}, {"result", o.result}}.dump(2) << '\n';
  }
}

std::string violations_text(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : "; ") + x;
  return s;
}

struct HardyOpts {
  int n = 0;
  double p = 2.0;
  double alpha = 0.0;
  double beta = 0.0;
  int k = 0;
};

void add_hardy(CLI::App* c, HardyOpts& h, bool with_p, bool with_k) {
  c->add_option("--n", h.n, "dimension")->required();
  if (with_p) c->add_option("--p", h.p, "exponent (default 2)");
  c->add_option("--alpha", h.alpha, "exponent of |x'|");
  c->add_option("--beta", h.beta, "exponent of |x|");
  if (with_k) c->add_option("--k", h.k, "axis dimension (default n-1)");
}

// Returns nullopt when admissible; otherwise the exit-2 output.
std::optional<Output> reject_inadmissible(const HardyParams& hp, std::ostream& err) {
  const auto v = hardy_violations(hp);
  if (v.empty()) return std::nullopt;
  err << "error: inadmissible parameters: " << violations_text(v) << '\n';
  return Output{{{"admissible", false}, {"violations", v}}, {}, 2};
}

ConstantResult hardy_constant(const HardyParams& hp) {
  if (hp.p() == 2.0) return hp.full_axis() ? sharp_constant_p2(hp) : sharp_constant_general_k_p2(hp);
  return sharp_constant_general_p(hp);
}

Output cmd_constant(const HardyOpts& h, const std::vector<double>& ckn, std::ostream& err) {
  if (!ckn.empty()) {
    if (ckn.size() != 6)
      throw Error(ErrorCode::InvalidArgument, "--ckn expects six exponents alpha,beta,mu,gamma1,gamma2,gamma3");
    const CknParams c(h.n, h.p, ckn[0], ckn[1], ckn[2], ckn[3], ckn[4], ckn[5]);
    const auto adm = admissible_ckn(c);
    if (!adm.integrable || !adm.balanced) {
      const auto v = ckn_violations(c);
      err << "error: inadmissible parameters: " << violations_text(v) << '\n';
      return {{{"admissible", false}, {"violations", v}}, {}, 2};
    }
    const auto r = ckn_constant(c);
    return {{{"admissible", true},
             {"K", nullptr},
             {"regime", "CKN"},
             {"constant", r.value},
             {"kind", to_string(r.kind)},
             {"branch", to_string(r.branch)}},
            {},
            0};
  }
  const HardyParams hp(h.n, h.p, h.alpha, h.beta, h.k);
  if (auto bad = reject_inadmissible(hp, err)) return *bad;
  const Regime reg = compute_K(hp);
  const auto r = hardy_constant(hp);
  return {{{"admissible", true},
           {"K", reg.k_value},
           {"regime", to_string(reg.family)},
           {"constant", r.value},
           {"kind", to_string(r.kind)},
           {"branch", to_string(r.branch)}},
          {},
          0};
}

Output cmd_optimize(const HardyOpts& h, bool sweep, std::ostream& err) {
  if (sweep) {
    std::vector<double> ag, bg;
    for (int i = 0; i <= 10; ++i) {
      ag.push_back(-0.9 + 0.18 * i);
      bg.push_back(-1.4 + 0.28 * i);
    }
    const auto rows = sweep_regimes(h.n, ag, bg);
    json arr = json::array();
    double worst = 0.0;
    bool ok = true;
    for (const auto& r : rows) {
      json row{{"alpha", r.alpha}, {"beta", r.beta}, {"admissible", r.admissible}, {"K", r.k_value},
               {"regime", r.regime}, {"closed_form", r.closed_form}, {"discrepancy", r.discrepancy},
               {"branch_agreement", r.branch_agreement}, {"nonconverged", r.nonconverged}, {"note", r.note}};
      if (r.report) row["value"] = r.report->value;
      arr.push_back(row);
      if (r.admissible) {
        worst = std::max(worst, r.discrepancy);
        ok = ok && !r.nonconverged && r.discrepancy <= 1e-6;
      }
    }
    if (!ok) err << "optimize --sweep: discrepancy above 1e-6 or non-converged rows\n";
    return {{{"max_discrepancy", worst}, {"passed", ok}, {"rows", arr}}, {}, ok ? 0 : 1};
  }
  const HardyParams hp(h.n, 2.0, h.alpha, h.beta, h.k);
  if (auto bad = reject_inadmissible(hp, err)) return *bad;
  const auto rep = maximize(hp);
  const auto cf = hardy_constant(hp);
  return {{{"value", rep.value},
           {"argmax", {{"theta", rep.argmax.theta}, {"lambda", rep.argmax.lambda}}},
           {"active_constraint", rep.active_constraint},
           {"branch_guess", to_string(rep.branch_guess)},
           {"diagnostics",
            {{"grid_value", rep.diagnostics.grid_value},
             {"refined_value", rep.diagnostics.refined_value},
             {"constraint_residual", rep.diagnostics.constraint_residual}}},
           {"closed_form", cf.value},
           {"kind", to_string(cf.kind)},
           {"discrepancy", std::abs(rep.value - cf.value)}},
          {},
          0};
}

Output cmd_rayleigh(const HardyOpts& h, const std::string& eps_text, const std::string& sigma_text,
                    std::ostream& err) {
  const HardyParams hp(h.n, h.p, h.alpha, h.beta);
  if (auto bad = reject_inadmissible(hp, err)) return *bad;
  const auto kind = select_family(hp);
  const auto eps = eps_text.empty() ? default_eps_list(kind) : parse_list(eps_text);
  const auto sigma = sigma_text.empty() ? default_sigma_list(hp, kind) : parse_list(sigma_text);
  const auto r = sweep_and_extrapolate(hp, eps, sigma, QuadratureSpec{});
  json res = sweep_json(r);
  const double c = hardy_constant(hp).value;
  res["closed_form"] = c;
  res["relative_gap"] = std::abs(r.extrapolated - c) / std::abs(c);
  return {res, [r](std::ostream& o) { write_sweep_csv(o, r); }, 0};
}

int default_count(const std::string& which) {
  if (which == "CKNp") return 10;
  if (which == "leray") return 50;
  if (which == "rfunc") return 100000;
  return 20;
}

Output cmd_verify(const std::string& which, int count, const Globals& g, std::ostream& err) {
  const CheckBatch b = verify_batch(which, g.seed, count);
  if (!g.quiet) {
    std::size_t ok = 0;
    for (const auto& i : b.items) ok += i.passed ? 1 : 0;
    err << "verify " << which << ": " << ok << "/" << b.items.size() << " checks passed"
        << (b.error.empty() ? "" : " (aborted: " + b.error + ")") << '\n';
  }
  auto csv = [b](std::ostream& o) {
    o << "label,value,bound,passed\n";
    for (const auto& i : b.items) o << '"' << i.label << "\"," << fmt(i.value) << ',' << fmt(i.bound) << ',' << i.passed << '\n';
  };
  return {batch_json(b), csv, b.passed ? 0 : 1};
}

Output cmd_ckn(int n, double p, const std::vector<double>& e, bool extremal, std::ostream& err) {
  const CknParams c(n, p, e[0], e[1], e[2], e[3], e[4], e[5]);
  const auto adm = admissible_ckn(c);
  json res{{"integrable", adm.integrable}, {"balanced", adm.balanced}, {"normalized", adm.normalized}};
  if (!adm.integrable || !adm.balanced) {
    const auto v = ckn_violations(c);
    err << "error: inadmissible parameters: " << violations_text(v) << '\n';
    res["violations"] = v;
    return {res, {}, 2};
  }
  const auto r = ckn_constant(c);
  res["constant"] = r.value;
  res["kind"] = to_string(r.kind);
  if (extremal) {
    const auto x = ckn_extremal_check(c);
    res["extremal"] = {{"quotient", x.quotient},
                       {"constant", x.constant},
                       {"residual_R_max", x.residual_R_max},
                       {"kappa0", x.kappa0},
                       {"r_max", x.r_max}};
  }
  return {res, {}, 0};
}

Output cmd_report(const Globals& g, const std::string& csv_dir, std::ostream& err) {
  const auto all = acceptance_all(g.seed);
  json arr = json::array();
  bool ok = true;
  for (const auto& b : all) {
    arr.push_back(batch_json(b));
    ok = ok && b.passed;
    if (!g.quiet) err << (b.passed ? "PASS " : "FAIL ") << b.name << '\n';
  }
  if (!csv_dir.empty()) {
    std::filesystem::create_directories(csv_dir);
    const HardyParams cases[] = {HardyParams(3, 2.0, -0.5, -0.5), HardyParams(3, 2.0, 0.0, -0.05),
                                 HardyParams(3, 3.0, 0.0, 0.5)};
    for (const auto& hp : cases) {
      const auto kind = select_family(hp);
      const auto r = sweep_and_extrapolate(hp, default_eps_list(kind), default_sigma_list(hp, kind), QuadratureSpec{});
      std::ofstream f(std::filesystem::path(csv_dir) / ("sweep_" + std::string(to_string(kind)) + ".csv"));
      write_sweep_csv(f, r);
    }
  }
  auto csv = [all](std::ostream& o) {
    o << "criterion,passed\n";
    for (const auto& b : all) o << '"' << b.name << "\"," << b.passed << '\n';
  };
  return {{{"passed", ok}, {"criteria", arr}}, csv, ok ? 0 : 1};
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    double v = 0.0;
    const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || r.ec != std::errc() || r.ptr != tok.data() + tok.size())
      throw Error(ErrorCode::InvalidArgument, "malformed number '" + tok + "' in list '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty list");
  return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Best constants for weighted Hardy and CKN inequalities, with numerical checks", "hardy"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Globals g;
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", g.seed, "seed for randomized checks");
  app.add_option("--config", g.config, "flat key=value file; command-line flags take precedence");
  app.add_flag("--quiet", g.quiet, "suppress progress on stderr");
  app.add_option("--timestamp", g.timestamp, "manifest timestamp (default: current UTC time)");

  HardyOpts h;
  std::string ckn_text, eps_text, sigma_text, which, csv_dir;
  bool sweep = false, extremal = false;
  int count = 0;
  double mu = 0.0, g1 = 0.0, g2 = 0.0, g3 = 0.0;

  auto* c_const = app.add_subcommand("constant", "closed-form sharp constant");
  add_hardy(c_const, h, true, true);
  c_const->add_option("--ckn", ckn_text, "CKN exponents alpha,beta,mu,gamma1,gamma2,gamma3");

  auto* c_opt = app.add_subcommand("optimize", "constrained-optimization oracle (p = 2)");
  add_hardy(c_opt, h, false, true);
  c_opt->add_flag("--sweep", sweep, "11x11 (alpha, beta) regime sweep at dimension n");

  auto* c_ray = app.add_subcommand("rayleigh", "Rayleigh-quotient sweep over the extremizing family");
  add_hardy(c_ray, h, true, false);
  c_ray->add_option("--eps-list", eps_text, "comma-separated epsilon values");
  c_ray->add_option("--sigma-list", sigma_text, "comma-separated sigma values");

  auto* c_ver = app.add_subcommand("verify", "identity and oracle checks");
  c_ver->add_option("--which", which, "check family")
      ->required()
      ->check(CLI::IsMember({"E2", "Ep", "CKNp", "weights", "leray", "lemma1", "rfunc"}));
  c_ver->add_option("--count", count, "number of configs or points (default per check)");

  auto* c_ckn = app.add_subcommand("ckn", "CKN admissibility, constant and extremal check");
  c_ckn->add_option("--n", h.n, "dimension")->required();
  c_ckn->add_option("--p", h.p, "exponent (default 2)");
  c_ckn->add_option("--alpha", h.alpha);
  c_ckn->add_option("--beta", h.beta);
  c_ckn->add_option("--mu", mu);
  c_ckn->add_option("--gamma1", g1);
  c_ckn->add_option("--gamma2", g2);
  c_ckn->add_option("--gamma3", g3);
  c_ckn->add_flag("--extremal", extremal, "evaluate the extremal quotient");

  auto* c_rep = app.add_subcommand("report", "run every acceptance criterion");
  c_rep->add_option("--csv-dir", csv_dir, "also write sweep tables as CSV into this directory");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> args = apply_config(raw_args);
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  const CLI::App* sub = app.get_subcommands().front();
  json manifest{{"command", sub->get_name()}, {"params", json::object()}, {"seed", g.seed},
                {"tool_version", kToolVersion}, {"timestamp", g.timestamp.empty() ? utc_now() : g.timestamp}};
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    const std::string key = opt->get_name().substr(2);
    manifest["params"][key] = opt->get_type_size() == 0 ? json(true) : json(opt->as<std::string>());
  }

  try {
    Output o;
    const std::string name = sub->get_name();
    if (name == "constant") {
      o = cmd_constant(h, ckn_text.empty() ? std::vector<double>{} : parse_list(ckn_text), err);
    } else if (name == "optimize") {
      o = cmd_optimize(h, sweep, err);
    } else if (name == "rayleigh") {
      o = cmd_rayleigh(h, eps_text, sigma_text, err);
    } else if (name == "verify") {
      if (count < 0) throw Error(ErrorCode::InvalidArgument, "--count must be positive");
      o = cmd_verify(which, count == 0 ? default_count(which) : count, g, err);
    } else if (name == "ckn") {
      o = cmd_ckn(h.n, h.p, {h.alpha, h.beta, mu, g1, g2, g3}, extremal, err);
    } else {
      o = cmd_report(g, csv_dir, err);
    }
    emit(out, g, manifest, o);
    return o.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace hardy::cli
