#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "smq/lambda_distribution.hpp"
#include "smq/model_state.hpp"
#include "smq/report.hpp"
#include "smq/states.hpp"

namespace smq::cli {

/// Invalid configuration or usage; maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StateEntry {
  std::string label;
  StateSpec spec;
  std::optional<std::string> file;  // tabulated source, as written in the config
};

struct MonteCarloSettings {
  std::size_t n = 1000000;
  std::uint64_t seed = 20240607;
  std::size_t bins = 100;
};

enum class SweepParameter { slit_width, lambda_atoms, q0 };

const char* to_string(SweepParameter p) noexcept;

struct SweepSettings {
  SweepParameter parameter = SweepParameter::slit_width;
  std::vector<double> values;
};

struct RunConfig {
  std::vector<StateEntry> states;
  std::optional<std::vector<LambdaAtom>> lambda_atoms;  // empty: two-point at hbar
  std::optional<double> grid_q_min;
  std::optional<double> grid_q_max;
  std::optional<std::size_t> grid_points;
  Tolerances tolerances;
  double floor_factor = kDefaultFloorFactor;
  std::optional<double> q0;  // empty: density mean
  MonteCarloSettings montecarlo;
  std::optional<SweepSettings> sweep;
  std::filesystem::path out_dir = "smq-out";
  unsigned threads = 1;  // never written to outputs

  LambdaDistribution lambda_for(const StateEntry& entry) const;
  /// spec with the grid overrides applied (default grid filled in when only
  /// the point count is overridden).
  StateSpec resolved_spec(const StateEntry& entry) const;
  /// Throws ConfigError when the state cannot be constructed.
  ModelState build_state(const StateEntry& entry) const;
};

/// Command-line flags that take precedence over the config file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> grid_points;
  std::optional<double> tolerance;
  std::optional<std::filesystem::path> out_dir;
  std::optional<unsigned> threads;
};

/// Strict parse: unknown keys, wrong types and out-of-range values throw
/// ConfigError. Relative tabulated file paths resolve against base_dir.
RunConfig parse_run_config(const nlohmann::json& doc, const Overrides& overrides = {},
                           const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path, const Overrides& overrides = {});

/// Every setting after defaults and overrides, including each state's grid.
nlohmann::ordered_json resolved_config_json(const RunConfig& config);

}  // namespace smq::cli
