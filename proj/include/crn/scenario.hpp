#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crn/network.hpp"

namespace crn {

enum class ScenarioKind { kTwoPbs, kFourCellA, kFourCellB, kAdHoc };

std::string to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(const std::string& name);

// Declarative description of one snapshot family. SINR targets are in dB
// here and converted to linear scale when a snapshot is generated.
struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::kFourCellA;
  double area_width = 1000.0;   // m
  double area_height = 1000.0;  // m
  double bs_separation = 150.0; // d, m
  double bs_height = 20.0;      // m; receivers of ad-hoc links sit at ground level
  int num_pu = 20;
  int num_su = 20;
  std::vector<double> pu_target_db{-20.0, -24.0};
  std::vector<double> su_target_db{-20.0, -24.0};
  double noise = 5e-13;         // W, every receiving point
  double attenuation = 0.09;    // k in h = k d^-n
  double p_max = 0.1;           // W, every user
  double path_loss_exponent = 4.0;
  double link_max_distance = 250.0;  // ad-hoc tx-rx bound, m
  bool nearest_assignment = false;   // two-pbs only: nearer PBS instead of random
  double min_distance = 1.0;         // distance clamp before the gain law, m
  int snapshots = 200;
  std::uint64_t seed = 1;
  std::vector<double> alphas{0.1, 1.0, 10.0};
};

// Defaults for a scenario kind (area, target sets).
ScenarioConfig default_config(ScenarioKind kind);

// Throws ConfigError on an inconsistent configuration.
void validate(const ScenarioConfig& cfg);

// Path gain k * d^-n with d the 3-D distance, clamped below at cfg.min_distance.
double path_gain(const ScenarioConfig& cfg, double horizontal, double height);

NetworkInstance generate_snapshot(const ScenarioConfig& cfg, std::uint64_t seed);

}  // namespace crn
