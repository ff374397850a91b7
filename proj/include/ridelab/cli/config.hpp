#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ridelab/platform.hpp"
#include "ridelab/response.hpp"
#include "ridelab/sim.hpp"

namespace ridelab::cli {

// Invalid or missing configuration value; field() names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct ResponseSpec {
  std::string family = "linear";  // linear | square
  double a = 0.1;
  double phi_h = 9.0;
};

struct RatesSpec {
  double Lambda = 1.0;
  double eta = 0.4;
  double p = 0.0;
  double nu = 1.0;
  double beta = 1.0;
};

struct SweepSpec {
  std::string parameter;  // beta | e_over_lambda
  double lo = 0.0;
  double hi = 0.0;
  int points = 0;
  bool log_scale = false;

  std::vector<double> values() const;
};

struct SimSpec {
  SimConfig config;
  // Configured parameter set; skipped when lambda is unset.
  std::optional<double> lambda;
  double price = 0.0;
  int random_sets = 0;
};

struct RunConfig {
  ResponseSpec response;
  RatesSpec rates;
  std::optional<SweepSpec> sweep;
  std::optional<SimSpec> sim;
  double epsilon = 0.01;  // duopoly.epsilon
  bool merged = false;    // monopoly.merged
  std::string output_dir;

  ResponseFunction response_function() const;
  PlatformParams platform() const;
};

// Flat `section.key = value` lines; `#` starts a comment. Unknown keys are
// rejected. Throws ConfigError.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

// Structural checks shared by every command (response function validity,
// rate ranges, sweep shape).
void validate(const RunConfig& cfg);

}  // namespace ridelab::cli
