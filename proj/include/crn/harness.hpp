#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "crn/jpac.hpp"
#include "crn/outage.hpp"
#include "crn/scenario.hpp"

namespace crn {

enum class Algorithm { kJpac, kJpacBox, kGpPoly, kGpBox };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& name);
bool uses_alpha(Algorithm a);

enum class SweepParameter { kNone, kSuCount, kBsSeparation, kAlpha };

std::string to_string(SweepParameter s);
SweepParameter sweep_parameter_from_string(const std::string& name);

struct SnapshotMetrics {
  double pu_outage_ratio = 0.0;
  double su_outage_ratio = 0.0;
  int admitted = 0;
  double throughput_nats = 0.0;
  double runtime_ms = 0.0;
};

struct SnapshotRow {
  double sweep_value = 0.0;
  int snapshot = 0;
  Algorithm algorithm = Algorithm::kJpac;
  double alpha = 0.0;  // NaN when the algorithm takes no alpha
  std::string status = "ok";
  SnapshotMetrics metrics;
  std::vector<RemovalStep> removal_trace;
  std::vector<double> objective_trace;
};

struct SweepSpec {
  SweepParameter parameter = SweepParameter::kNone;
  std::vector<double> values;  // ignored for kNone
  std::vector<Algorithm> algorithms{Algorithm::kJpac, Algorithm::kJpacBox};
  int threads = 0;             // 0: hardware concurrency
  bool record_runtime = false; // runtime column stays empty otherwise
};

struct ExperimentResult {
  ScenarioConfig config;
  SweepSpec sweep;
  std::vector<SnapshotRow> rows;
};

// Runs one algorithm on one network. Library errors become a non-"ok" status.
SnapshotRow evaluate_snapshot(const NetworkInstance& net, Algorithm algorithm, double alpha);

// Every (sweep value, snapshot) pair is generated with seed = cfg.seed + snapshot
// and evaluated with every algorithm (and every alpha for box baselines).
// Rows are ordered by sweep value, snapshot, algorithm, alpha.
ExperimentResult run_experiment(const ScenarioConfig& cfg, const SweepSpec& sweep);

// Short error tag used in the status column.
std::string status_of(const std::exception& e);

void write_csv(const ExperimentResult& result, std::ostream& out);
void write_removal_traces(const ExperimentResult& result, std::ostream& out);
void write_objective_traces(const ExperimentResult& result, std::ostream& out);
std::string summary_json(const ExperimentResult& result);

}  // namespace crn
