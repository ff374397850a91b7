#include "ridelab/cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ridelab/equilibria.hpp"
#include "ridelab/errors.hpp"
#include "ridelab/limit.hpp"
#include "ridelab/model.hpp"

namespace ridelab::cli {

namespace {

// Evaluates fn(i) for i in [0, n) on up to `threads` threads; results are
// stored by index so output order never depends on completion order.
template <typename Fn>
auto parallel_map(std::size_t n, int threads, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<R> out(n);
  const std::size_t width = static_cast<std::size_t>(std::max(threads, 1));
  for (std::size_t start = 0; start < n; start += width) {
    const std::size_t stop = std::min(n, start + width);
    std::vector<std::future<R>> jobs;
    for (std::size_t i = start; i < stop; ++i) {
      jobs.push_back(std::async(width > 1 ? std::launch::async : std::launch::deferred, fn, i));
    }
    for (std::size_t i = start; i < stop; ++i) out[i] = jobs[i - start].get();
  }
  return out;
}

class CsvWriter {
 public:
  explicit CsvWriter(std::initializer_list<const char*> header) {
    bool first = true;
    for (const char* h : header) {
      if (!first) os_ << ',';
      os_ << h;
      first = false;
    }
    os_ << '\n';
  }

  CsvWriter& num(double v) { return cell(format_number(v)); }
  CsvWriter& opt(bool present, double v) { return cell(present ? format_number(v) : ""); }
  CsvWriter& text(const std::string& s) { return cell(s); }
  CsvWriter& flag(bool b) { return cell(b ? "1" : "0"); }
  void end_row() {
    os_ << '\n';
    fresh_ = true;
  }
  std::string str() const { return os_.str(); }

 private:
  CsvWriter& cell(const std::string& s) {
    if (!fresh_) os_ << ',';
    os_ << s;
    fresh_ = false;
    return *this;
  }

  std::ostringstream os_;
  bool fresh_ = true;
};

const SweepSpec& require_sweep(const RunConfig& cfg, const char* parameter) {
  if (!cfg.sweep) throw ConfigError("sweep.parameter", std::string("this command needs a ") + parameter + " sweep");
  if (cfg.sweep->parameter != parameter) {
    throw ConfigError("sweep.parameter", "expected '" + std::string(parameter) + "', got '" +
                                             cfg.sweep->parameter + "'");
  }
  return *cfg.sweep;
}

std::string d_zero_cell(const DZero& z) {
  switch (z.where) {
    case DZero::Where::Interior: return format_number(z.phi);
    case DZero::Where::AboveRange: return "above_range";
    case DZero::Where::BelowRange: return "below_range";
  }
  return "";
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

int thread_budget() {
  if (const char* env = std::getenv("RIDE_LAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

CommandOutput cmd_monopoly(const RunConfig& cfg, int threads) {
  validate(cfg);
  const SweepSpec& sweep = require_sweep(cfg, "beta");
  const ResponseFunction rf = cfg.response_function();
  PlatformParams base = cfg.platform();
  if (cfg.merged) {
    base = PlatformParams(2.0 * base.Lambda(), 2.0 * base.eta(), base.p(), base.nu(), base.beta(),
                          base.phi_h());
  }
  // Merged rows report revenue per original platform.
  const double mr_scale = cfg.merged ? 0.5 : 1.0;
  const PriceOptimum lim = monopoly_optimum_limit(rf, base.e(), base.Lambda());

  const std::vector<double> betas = sweep.values();
  const auto rows = parallel_map(betas.size(), threads, [&](std::size_t i) {
    return monopoly_optimum_exact(base.with_beta(betas[i]), rf);
  });

  CsvWriter csv({"beta", "phi_star_exact", "mr_exact", "phi_star_limit", "mr_limit"});
  for (std::size_t i = 0; i < betas.size(); ++i) {
    csv.num(betas[i]).num(rows[i].phi).num(mr_scale * rows[i].mr).num(lim.phi).num(mr_scale * lim.mr);
    csv.end_row();
  }
  return {csv.str(), kOk};
}

CommandOutput cmd_duopoly(const RunConfig& cfg, char metric, int threads) {
  validate(cfg);
  if (metric != 'D' && metric != 'B') throw ConfigError("--metric", "expected D or B");
  const SweepSpec& sweep = require_sweep(cfg, "e_over_lambda");
  const ResponseFunction rf = cfg.response_function();
  const double Lambda = cfg.rates.Lambda;
  const double phi_h = rf.phi_h();

  struct Row {
    EquilibriumOutcome outcome;
    ThresholdSet thr;
    PriceOptimum mono;
  };
  const std::vector<double> ratios = sweep.values();
  const auto rows = parallel_map(ratios.size(), threads, [&](std::size_t i) {
    const double e = ratios[i] * Lambda;
    Row r;
    r.outcome = metric == 'D' ? duopoly_D_equilibrium(rf, e, Lambda, phi_h)
                              : duopoly_B_equilibrium(rf, e, Lambda, phi_h, cfg.epsilon);
    r.thr = thresholds(rf, e, Lambda);
    r.mono = monopoly_optimum_limit(rf, e, Lambda);
    return r;
  });

  CsvWriter csv({"e_over_lambda", "outcome_kind", "phi1", "phi2", "cycle_lo", "cycle_hi", "mr1", "mr2",
                 "phi_underbar", "phi_bar", "phi_P_star", "phi_m_star", "phi_d_zero", "phi_L_star",
                 "phi_U_star", "phi_monopoly", "mr_monopoly"});
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const auto& o = rows[i].outcome;
    const auto& t = rows[i].thr;
    const bool point = o.kind == OutcomeKind::NashPoint || o.kind == OutcomeKind::EpsilonNE;
    const bool cycle = o.kind == OutcomeKind::EquilibriumCycle;
    const bool known = o.kind != OutcomeKind::NoEquilibriumKnown;
    csv.num(ratios[i]).text(to_string(o.kind));
    csv.opt(point, o.phi1).opt(point, o.phi2).opt(cycle, o.cycle_lo()).opt(cycle, o.cycle_hi());
    csv.opt(known, o.mr1).opt(known, o.mr2);
    csv.num(t.phi_underbar).num(t.phi_bar).num(t.phi_P_star).num(t.phi_m_star).text(d_zero_cell(t.phi_d_zero));
    csv.opt(t.phi_L_star.has_value(), t.phi_L_star.value_or(0.0));
    csv.opt(t.phi_U_star.has_value(), t.phi_U_star.value_or(0.0));
    csv.num(rows[i].mono.phi).num(rows[i].mono.mr);
    csv.end_row();
  }
  return {csv.str(), kOk};
}

CommandOutput cmd_simulate(const RunConfig& cfg, int threads) {
  validate(cfg);
  if (!cfg.sim) throw ConfigError("sim", "simulate needs a sim section");
  const SimSpec& spec = *cfg.sim;
  if (!(cfg.rates.beta > 0.0)) throw ConfigError("rates.beta", "simulate compares against beta > 0 analytics");
  const ResponseFunction rf = cfg.response_function();

  std::vector<OracleCase> cases;
  if (spec.lambda) cases.push_back({cfg.platform(), spec.price, *spec.lambda});
  for (auto& c : random_oracle_cases(spec.config.seed, spec.random_sets, rf.phi_h())) {
    cases.push_back(std::move(c));
  }
  if (cases.empty()) throw ConfigError("sim.lambda", "no parameter sets: set sim.lambda or sim.random_sets");

  SimConfig sim_cfg = spec.config;
  sim_cfg.threads = 1;
  const auto checks = parallel_map(cases.size(), threads, [&](std::size_t i) {
    SimConfig c = sim_cfg;
    c.seed = derive_seed(sim_cfg.seed, i);
    return check_against_analytic(cases[i], rf, c);
  });

  CsvWriter csv({"set", "lambda", "price", "eta", "p", "nu", "beta", "D_analytic", "B_analytic",
                 "MR_analytic", "D_sim", "D_se", "B_sim", "B_se", "MR_sim", "MR_se", "D_pass",
                 "B_pass", "MR_pass", "status"});
  bool all_ok = true;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    const auto& k = checks[i];
    const bool have = k.status != "insufficient_data";
    csv.num(static_cast<double>(i)).num(c.lambda).num(c.price).num(c.params.eta()).num(c.params.p());
    csv.num(c.params.nu()).num(c.params.beta()).num(k.D).num(k.B).num(k.MR);
    csv.opt(have, k.sim.D.mean).opt(have, k.sim.D.se).opt(have, k.sim.B.mean).opt(have, k.sim.B.se);
    csv.opt(have, k.sim.MR.mean).opt(have, k.sim.MR.se);
    csv.flag(k.D_pass).flag(k.B_pass).flag(k.MR_pass).text(k.status);
    csv.end_row();
    all_ok = all_ok && k.passed();
  }
  return {csv.str(), all_ok ? kOk : kOracleMismatch};
}

CommandOutput cmd_cycle_verify(const RunConfig& cfg, double lo, double hi, char metric) {
  validate(cfg);
  if (metric != 'D' && metric != 'B') throw ConfigError("--metric", "expected D or B");
  const ResponseFunction rf = cfg.response_function();
  const double Lambda = cfg.rates.Lambda;
  const double e = cfg.platform().e();
  if (!(lo < hi)) throw ConfigError("--lo", "need --lo < --hi");
  if (!(hi <= rf.phi_h())) throw ConfigError("--hi", "must not exceed response.phi_h");
  if (lo < 0.0) throw ConfigError("--lo", "must be >= 0");

  const PayoffMap payoff = metric == 'B' ? limit_B_payoff(rf, e, Lambda) : duopoly_D_payoff_map(rf, e, Lambda);
  CycleVerifyOptions opts;
  const ThresholdSet t = thresholds(rf, e, Lambda);
  opts.candidates = {t.phi_underbar, t.phi_bar, t.phi_m_star};
  if (t.phi_L_star) opts.candidates.push_back(*t.phi_L_star);
  if (t.phi_U_star) opts.candidates.push_back(*t.phi_U_star);
  const CycleVerification v = verify_equilibrium_cycle(payoff, lo, hi, rf.phi_h(), opts);

  CsvWriter csv({"condition", "passed", "checked", "failures", "witness_player", "witness_phi_own",
                 "witness_phi_other", "witness_deviation", "witness_gain"});
  auto row = [&](const char* name, bool ok, long checked, const std::vector<CycleWitness>& fails,
                 const std::optional<CycleWitness>& sample) {
    csv.text(name).flag(ok).num(static_cast<double>(checked)).num(static_cast<double>(fails.size()));
    const CycleWitness* w = nullptr;
    if (!fails.empty()) {
      w = &fails.front();
    } else if (sample) {
      w = &*sample;
    }
    if (w) {
      csv.num(w->player + 1).num(w->phi_own).num(w->phi_other).num(w->deviation).num(w->gain);
    } else {
      csv.text("").text("").text("").text("").text("");
    }
    csv.end_row();
  };
  row("stability", v.stability, v.stability_checked, v.stability_failures, v.stability_sample);
  row("cyclicity", v.cyclicity, v.cyclicity_checked, v.cyclicity_failures, v.cyclicity_sample);
  return {csv.str(), v.passed() ? kOk : kOracleMismatch};
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pricing equilibria and performance metrics for competing ride-hailing platforms"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "Key/value configuration file")->required();
  app.add_option("--out", out_dir, "Directory for CSV output (default: stdout)");
  app.add_option("--seed", seed, "Override sim.seed");

  auto* monopoly = app.add_subcommand("monopoly", "Exact vs limit monopoly optimum over a beta sweep");
  auto* duopoly = app.add_subcommand("duopoly", "Duopoly equilibria over an e/Lambda sweep");
  std::string metric = "D";
  duopoly->add_option("--metric", metric, "QoS metric")->check(CLI::IsMember({"D", "B"}))->required();
  auto* simulate = app.add_subcommand("simulate", "Simulation oracle against analytic D, B, MR");
  auto* cycle = app.add_subcommand("cycle-verify", "Check the equilibrium-cycle conditions on [lo, hi]");
  double lo = 0.0;
  double hi = 0.0;
  std::string cycle_metric = "B";
  cycle->add_option("--lo", lo, "Lower end of the interval")->required();
  cycle->add_option("--hi", hi, "Upper end of the interval")->required();
  cycle->add_option("--metric", cycle_metric, "QoS metric")->check(CLI::IsMember({"D", "B"}));

  // Options given after the subcommand name are accepted too.
  for (auto* sub : {monopoly, duopoly, simulate, cycle}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  std::string name;
  try {
    RunConfig cfg = load_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (seed && cfg.sim) cfg.sim->config.seed = *seed;
    const int threads = thread_budget();

    CommandOutput result;
    if (monopoly->parsed()) {
      name = "monopoly";
      result = cmd_monopoly(cfg, threads);
    } else if (duopoly->parsed()) {
      name = "duopoly_" + metric;
      result = cmd_duopoly(cfg, metric[0], threads);
    } else if (simulate->parsed()) {
      name = "simulate";
      result = cmd_simulate(cfg, threads);
    } else {
      name = "cycle_verify";
      result = cmd_cycle_verify(cfg, lo, hi, cycle_metric[0]);
    }

    if (cfg.output_dir.empty()) {
      out << result.csv;
    } else {
      std::filesystem::create_directories(cfg.output_dir);
      const auto path = std::filesystem::path(cfg.output_dir) / (name + ".csv");
      std::ofstream f(path, std::ios::binary);
      if (!f) {
        err << "error: cannot write " << path.string() << '\n';
        return kConfigError;
      }
      f << result.csv;
    }
    if (result.exit_code == kOracleMismatch) {
      err << name << ": one or more checks failed\n";
    }
    return result.exit_code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const TruncationOverflow& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  }
}

}  // namespace ridelab::cli
