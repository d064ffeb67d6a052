#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "manet/analytic.hpp"

namespace manet {

// Shared mobility knobs (the paper-style experiments vary only the
// random:guided ratio on top of these).
struct MobilityParams {
  double side = 100.0;   // meters
  double speed = 1.0;    // meters/second
  double dt = 1.0;       // seconds per tick
  int steps = 300;       // recorded ticks
  std::string field = "rotation";  // rotation | uniform-drift
  double angular_rate = 0.05;      // rad/s, rotation field
  double drift_x = 1.0, drift_y = 0.0;
};

using Ratio = std::pair<int, int>;  // random : guided

struct EntropySweepParams {
  MobilityParams mobility;
  std::vector<Ratio> ratios = {{1, 7}, {2, 6}, {3, 5}, {4, 4}, {5, 3}, {6, 2}, {7, 1}};
  bool dump_trajectories = false;
  bool emit_per_node = false;
  bool emit_curl_map = false;
  double curl_spacing = 5.0;
};

struct CompressionSurfaceParams {
  MobilityParams mobility{.steps = 1200};
  std::vector<Ratio> ratios = {{1, 7}, {2, 6}, {3, 5}, {4, 4}, {5, 3}, {6, 2}, {7, 1}};
  double coverage_min = 0.34;  // node transmission area / field area
  double coverage_max = 0.75;
  int radius_steps = 13;
  std::vector<std::string> codecs = {"deflate", "rle"};
  bool per_snapshot = false;
};

struct RouteProbabilityParams {
  long long n = 100;
  double comm_radius = 2.0;
  double area = 25e6;  // 5000 x 5000 meters
  std::string link_prob_mode = "pairwise";
  double p_override = -1.0;  // < 0: derive from geometry
  double w = 10.0;
  int k_min = 1, k_max = 30;
  // single-epoch gap report between the closed form and sampled graphs
  bool emit_gap_report = true;
  int gap_n = 20;
  double gap_p = 0.15;
  long long gap_epochs = 20000;
  // where in (area, radius, mode) space the headline short-route
  // probability is actually attained
  bool emit_calibration = true;
  int calibration_k = 15;
  double calibration_target = 0.7;
};

struct DifferentialGainParams {
  long long n = 100;
  double comm_radius = 2.0;
  double area = 25e6;
  std::string link_prob_mode = "pairwise";
  double p_override = -1.0;
  double w = 10.0;
  double flow_bits = 1e8;      // f_l
  int hops = 50;               // h
  int hop_reduction_max = 49;  // largest h_diff swept; must stay < hops
  // per-hop delay is 10^x seconds; b_r = flow_bits / 10^x
  std::vector<double> delay_exponents = {0, 1, 2, 3, 4};
};

struct FlashRouteParams {
  long long n = 100;
  double comm_radius = 2.0;
  double area = 5000.0;
  std::string link_prob_mode = "expected-degree";
  double p_override = -1.0;
  double link_capacity = 1e6;  // W
  double guard_factor = 1.0;   // Delta
  int n_l_max = 12;
  std::vector<double> w_values = {10.0, 1.0, 0.1, 0.01};
};

struct UpdateBoundParams {
  long long n = 100;  // N
  long long c_min = 1, c_max = 100;
  double area = 25e6;
  double link_capacity = 1e6;
  double guard_factor = 1.0;
};

using ScenarioParams =
    std::variant<EntropySweepParams, CompressionSurfaceParams, RouteProbabilityParams,
                 DifferentialGainParams, FlashRouteParams, UpdateBoundParams>;

struct ScenarioConfig {
  std::string scenario;
  std::uint64_t seed = 42;
  int repetitions = 20;
  std::string output_dir = "out";
  int jobs = 1;
  ScenarioParams params;
};

struct Diagnostic {
  std::string path;     // config key path, e.g. "params.hops"
  std::string message;  // violation and allowed range
};

struct ValidationResult {
  std::optional<ScenarioConfig> config;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return config.has_value() && diagnostics.empty(); }
};

std::vector<std::string> scenario_names();
std::string scenario_description(const std::string& name);

// Full validation of ranges and cross-field constraints; every violation is
// reported with its key path. Nothing is computed on failure.
ValidationResult parse_config_text(const std::string& json_text);
ValidationResult validate_config(const std::filesystem::path& path);

// The config with every default materialized, as a JSON document.
std::string resolved_config_json(const ScenarioConfig& config);

struct RunOutcome {
  std::filesystem::path out_dir;
  std::vector<std::string> files;  // names written into out_dir
  std::vector<GainReport> reports;
};

// Writes one CSV per figure analogue plus report.json. Outputs are staged in
// a temp directory and promoted on success; reruns with the same config and
// seed are byte-identical regardless of `jobs`.
RunOutcome run_scenario(const ScenarioConfig& config);

}  // namespace manet
