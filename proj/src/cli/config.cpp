#include "ridelab/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ridelab/errors.hpp"
#include "ridelab/model.hpp"

namespace ridelab::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(x)) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a number, got '" + v + "'");
  }
}

long long to_int(const std::string& key, const std::string& v) {
  long long x = 0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, x);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ConfigError(key, "expected an integer, got '" + v + "'");
  }
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  std::string low = v;
  std::transform(low.begin(), low.end(), low.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (low == "true" || low == "1" || low == "yes") return true;
  if (low == "false" || low == "0" || low == "no") return false;
  throw ConfigError(key, "expected true/false, got '" + v + "'");
}

}  // namespace

std::vector<double> SweepSpec::values() const {
  std::vector<double> out;
  if (points == 1) {
    out.push_back(lo);
    return out;
  }
  out.reserve(points);
  for (int k = 0; k < points; ++k) {
    const double t = static_cast<double>(k) / (points - 1);
    double v;
    if (log_scale) {
      v = std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
    } else {
      v = lo + t * (hi - lo);
    }
    if (k == 0) v = lo;
    if (k == points - 1) v = hi;
    out.push_back(v);
  }
  return out;
}

ResponseFunction RunConfig::response_function() const {
  try {
    if (response.family == "linear") return ResponseFunction::linear(response.a, response.phi_h);
    if (response.family == "square") return ResponseFunction::square(response.a, response.phi_h);
  } catch (const DomainError& e) {
    throw ConfigError("response.a", e.what());
  }
  throw ConfigError("response.family", "expected 'linear' or 'square', got '" + response.family + "'");
}

PlatformParams RunConfig::platform() const {
  try {
    return PlatformParams(rates.Lambda, rates.eta, rates.p, rates.nu, rates.beta, response.phi_h);
  } catch (const DomainError& e) {
    const std::string msg = e.what();
    std::string field = "rates";
    for (const char* k : {"Lambda", "eta", "nu", "beta", "phi_h"}) {
      if (msg.rfind(k, 0) == 0) field = std::string(k) == "phi_h" ? "response.phi_h" : "rates." + std::string(k);
    }
    if (msg.find("rejoin probability") != std::string::npos) field = "rates.p";
    throw ConfigError(field, msg);
  }
}

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  SweepSpec sweep;
  bool has_sweep = false;
  SimSpec sim;
  bool has_sim = false;

  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"response.family", [&](auto& k, auto& v) { (void)k; cfg.response.family = v; }},
      {"response.a", [&](auto& k, auto& v) { cfg.response.a = to_double(k, v); }},
      {"response.phi_h", [&](auto& k, auto& v) { cfg.response.phi_h = to_double(k, v); }},
      {"rates.Lambda", [&](auto& k, auto& v) { cfg.rates.Lambda = to_double(k, v); }},
      {"rates.eta", [&](auto& k, auto& v) { cfg.rates.eta = to_double(k, v); }},
      {"rates.p", [&](auto& k, auto& v) { cfg.rates.p = to_double(k, v); }},
      {"rates.nu", [&](auto& k, auto& v) { cfg.rates.nu = to_double(k, v); }},
      {"rates.beta", [&](auto& k, auto& v) { cfg.rates.beta = to_double(k, v); }},
      {"sweep.parameter", [&](auto& k, auto& v) { (void)k; sweep.parameter = v; has_sweep = true; }},
      {"sweep.lo", [&](auto& k, auto& v) { sweep.lo = to_double(k, v); has_sweep = true; }},
      {"sweep.hi", [&](auto& k, auto& v) { sweep.hi = to_double(k, v); has_sweep = true; }},
      {"sweep.points", [&](auto& k, auto& v) { sweep.points = static_cast<int>(to_int(k, v)); has_sweep = true; }},
      {"sweep.log", [&](auto& k, auto& v) { sweep.log_scale = to_bool(k, v); has_sweep = true; }},
      {"sim.seed", [&](auto& k, auto& v) { sim.config.seed = static_cast<std::uint64_t>(to_int(k, v)); has_sim = true; }},
      {"sim.horizon", [&](auto& k, auto& v) { sim.config.horizon = to_double(k, v); has_sim = true; }},
      {"sim.warmup", [&](auto& k, auto& v) { sim.config.warmup = to_double(k, v); has_sim = true; }},
      {"sim.replications", [&](auto& k, auto& v) { sim.config.replications = static_cast<int>(to_int(k, v)); has_sim = true; }},
      {"sim.batches", [&](auto& k, auto& v) { sim.config.batches = static_cast<int>(to_int(k, v)); has_sim = true; }},
      {"sim.lambda", [&](auto& k, auto& v) { sim.lambda = to_double(k, v); has_sim = true; }},
      {"sim.price", [&](auto& k, auto& v) { sim.price = to_double(k, v); has_sim = true; }},
      {"sim.random_sets", [&](auto& k, auto& v) { sim.random_sets = static_cast<int>(to_int(k, v)); has_sim = true; }},
      {"duopoly.epsilon", [&](auto& k, auto& v) { cfg.epsilon = to_double(k, v); }},
      {"monopoly.merged", [&](auto& k, auto& v) { cfg.merged = to_bool(k, v); }},
      {"output.dir", [&](auto& k, auto& v) { (void)k; cfg.output_dir = v; }},
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(line, "line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(key, "unknown key");
    if (value.empty()) throw ConfigError(key, "missing value");
    it->second(key, value);
  }
  if (has_sweep) cfg.sweep = sweep;
  if (has_sim) cfg.sim = sim;
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
  return parse_config(in);
}

void validate(const RunConfig& cfg) {
  const ResponseFunction rf = cfg.response_function();
  const ValidationReport report = validate_response_function(rf);
  if (!report.passed()) {
    for (const auto& c : report.checks) {
      if (!c.passed) throw ConfigError("response", c.name + " fails: " + c.detail);
    }
  }
  cfg.platform();
  if (!(cfg.rates.Lambda > 0.0)) throw ConfigError("rates.Lambda", "must be > 0");
  if (!(cfg.epsilon > 0.0)) throw ConfigError("duopoly.epsilon", "must be > 0");

  if (cfg.sweep) {
    const auto& s = *cfg.sweep;
    if (s.parameter != "beta" && s.parameter != "e_over_lambda") {
      throw ConfigError("sweep.parameter", "expected 'beta' or 'e_over_lambda', got '" + s.parameter + "'");
    }
    if (s.points < 1) throw ConfigError("sweep.points", "must be >= 1");
    if (s.points >= 2 && !(s.lo < s.hi)) throw ConfigError("sweep.lo", "need sweep.lo < sweep.hi");
    if (!(s.lo > 0.0)) throw ConfigError("sweep.lo", "must be > 0");
    if (s.log_scale && !(s.lo > 0.0)) throw ConfigError("sweep.lo", "log sweep needs lo > 0");
  }
  if (cfg.sim) {
    const auto& c = cfg.sim->config;
    if (!(c.horizon > 0.0)) throw ConfigError("sim.horizon", "must be > 0");
    if (!(c.effective_warmup() < c.horizon)) throw ConfigError("sim.warmup", "must be < sim.horizon");
    if (c.replications < 1) throw ConfigError("sim.replications", "must be >= 1");
    if (c.batches < 2) throw ConfigError("sim.batches", "must be >= 2");
    if (cfg.sim->random_sets < 0) throw ConfigError("sim.random_sets", "must be >= 0");
    if (cfg.sim->lambda && !(*cfg.sim->lambda >= 0.0)) throw ConfigError("sim.lambda", "must be >= 0");
    if (!(cfg.sim->price >= 0.0 && cfg.sim->price <= cfg.response.phi_h)) {
      throw ConfigError("sim.price", "must lie in [0, response.phi_h]");
    }
  }
}

}  // namespace ridelab::cli
