#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dunkl {

// Run configuration: everything a subcommand needs, reproducible from
// (config, seed). Parsed from JSON; unknown keys are rejected.
struct RunConfig {
  int dimension = 1;
  std::vector<double> multiplicities{0.5};

  int grid_points = 4096;
  double grid_half_width = 64.0;
  int freq_points = 4096;
  double freq_bandwidth = 32.0;
  // Wider frequency window used by the dyadic/decomposition machinery (sharp
  // cube cutoffs push atom spectra past the bump band).
  int atoms_freq_points = 8192;
  double atoms_freq_bandwidth = 96.0;

  int j_min = -6;
  int j_max = 6;

  double epsilon_target = 0.0;  // 0: calibrated epsilon_0 / 4
  int max_outer = 5;
  bool refine_balls = false;

  std::string input = "builtin:truncated-log";
  double input_radius = 8.0;

  std::string system = "riesz";  // or a manifest path

  std::string output_dir = "dunkl-out";
  std::uint64_t seed = 20260808;
  int threads = 0;  // 0: hardware

  static RunConfig from_json_text(const std::string& text);
  static RunConfig from_json_file(const std::string& path);

  std::string canonical_json() const;
  std::uint64_t config_hash() const;  // FNV-1a over the canonical dump
  void validate() const;
};

}  // namespace dunkl
