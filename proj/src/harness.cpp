#include "crn/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <thread>
#include <tuple>

#include "crn/errors.hpp"
#include "crn/serialize.hpp"
#include "crn/throughput_gp.hpp"

namespace crn {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  if (!std::isfinite(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double su_throughput(const NetworkInstance& net, const PowerVector& p) {
  const SinrVector gamma = sinr_of(net, p);
  double total = 0.0;
  for (int i : net.su_indices()) total += std::log1p(gamma[i]);
  return total;
}

ScenarioConfig config_at(const ScenarioConfig& cfg, SweepParameter param, double value) {
  ScenarioConfig out = cfg;
  switch (param) {
    case SweepParameter::kNone:
      break;
    case SweepParameter::kSuCount:
      out.num_su = static_cast<int>(std::lround(value));
      break;
    case SweepParameter::kBsSeparation:
      out.bs_separation = value;
      break;
    case SweepParameter::kAlpha:
      out.alphas = {value};
      break;
  }
  return out;
}

std::vector<SnapshotRow> evaluate_task(const ScenarioConfig& cfg, const SweepSpec& sweep,
                                       double sweep_value, int snapshot) {
  std::vector<SnapshotRow> rows;
  auto emit = [&](SnapshotRow row) {
    row.sweep_value = sweep_value;
    row.snapshot = snapshot;
    rows.push_back(std::move(row));
  };
  const ScenarioConfig local = config_at(cfg, sweep.parameter, sweep_value);
  std::optional<NetworkInstance> net;
  std::string failure;
  try {
    validate(local);
    net.emplace(generate_snapshot(local, local.seed + static_cast<std::uint64_t>(snapshot)));
  } catch (const std::exception& e) {
    failure = status_of(e);
  }
  for (Algorithm alg : sweep.algorithms) {
    const std::vector<double> alphas = uses_alpha(alg) ? local.alphas : std::vector<double>{kNaN};
    for (double alpha : alphas) {
      if (net) {
        emit(evaluate_snapshot(*net, alg, alpha));
      } else {
        SnapshotRow row;
        row.algorithm = alg;
        row.alpha = alpha;
        row.status = failure;
        row.metrics = {kNaN, kNaN, 0, kNaN, kNaN};
        emit(std::move(row));
      }
    }
  }
  return rows;
}

std::string group_key_alpha(double alpha) { return std::isfinite(alpha) ? fmt(alpha) : ""; }

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kJpac:
      return "jpac";
    case Algorithm::kJpacBox:
      return "jpac-box";
    case Algorithm::kGpPoly:
      return "gp-poly";
    case Algorithm::kGpBox:
      return "gp-box";
  }
  return "?";
}

Algorithm algorithm_from_string(const std::string& name) {
  for (Algorithm a : {Algorithm::kJpac, Algorithm::kJpacBox, Algorithm::kGpPoly, Algorithm::kGpBox})
    if (to_string(a) == name) return a;
  throw ConfigError("unknown algorithm '" + name + "'");
}

bool uses_alpha(Algorithm a) { return a == Algorithm::kJpacBox || a == Algorithm::kGpBox; }

std::string to_string(SweepParameter s) {
  switch (s) {
    case SweepParameter::kNone:
      return "none";
    case SweepParameter::kSuCount:
      return "su";
    case SweepParameter::kBsSeparation:
      return "d";
    case SweepParameter::kAlpha:
      return "alpha";
  }
  return "?";
}

SweepParameter sweep_parameter_from_string(const std::string& name) {
  for (SweepParameter s : {SweepParameter::kNone, SweepParameter::kSuCount,
                           SweepParameter::kBsSeparation, SweepParameter::kAlpha})
    if (to_string(s) == name) return s;
  throw ConfigError("unknown sweep parameter '" + name + "'");
}

std::string status_of(const std::exception& e) {
  if (dynamic_cast<const InfeasibleSinr*>(&e)) return "infeasible-sinr";
  if (dynamic_cast<const PrimaryInfeasible*>(&e)) return "primary-infeasible";
  if (dynamic_cast<const NoCandidate*>(&e)) return "no-candidate";
  if (dynamic_cast<const DegenerateGamma*>(&e)) return "degenerate-gamma";
  if (dynamic_cast<const FeasibilityRequired*>(&e)) return "feasibility-required";
  if (dynamic_cast<const InfeasibleProblem*>(&e)) return "infeasible-problem";
  if (dynamic_cast<const ConfigError*>(&e)) return "config";
  if (dynamic_cast<const InvalidNetwork*>(&e)) return "invalid-network";
  if (dynamic_cast<const DimensionMismatch*>(&e)) return "dimension-mismatch";
  return "error";
}

SnapshotRow evaluate_snapshot(const NetworkInstance& net, Algorithm algorithm, double alpha) {
  SnapshotRow row;
  row.algorithm = algorithm;
  row.alpha = uses_alpha(algorithm) ? alpha : kNaN;
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (algorithm) {
      case Algorithm::kJpac:
      case Algorithm::kJpacBox: {
        const JpacOutcome out = algorithm == Algorithm::kJpac
                                    ? run_jpac(net)
                                    : run_jpac_box(net, baseline_itl(build_fcir(net), alpha));
        row.metrics.pu_outage_ratio = out.pu_outage_ratio;
        row.metrics.su_outage_ratio = out.su_outage_ratio;
        row.metrics.admitted = static_cast<int>(out.admitted.size());
        row.metrics.throughput_nats = su_throughput(net, out.p_final);
        row.removal_trace = out.removal_trace;
        break;
      }
      case Algorithm::kGpPoly:
      case Algorithm::kGpBox: {
        const FcirPolyhedron fcir = build_fcir(net);
        const Protection protection = algorithm == Algorithm::kGpPoly
                                          ? Protection{fcir}
                                          : Protection{BoxItl{baseline_itl(fcir, alpha)}};
        const GpRun run = run_algorithm2(net, protection);
        row.metrics.pu_outage_ratio = run.pu_outage_ratio;
        row.metrics.su_outage_ratio = outage_ratio(net, run.p_full, Tier::kSecondary);
        row.metrics.admitted = net.num_su();
        row.metrics.throughput_nats = run.final.objective;
        row.objective_trace = run.objective_trace;
        if (run.stalled) row.status = "stalled";
        break;
      }
    }
  } catch (const std::exception& e) {
    row.status = status_of(e);
    row.metrics = {kNaN, kNaN, 0, kNaN, kNaN};
  }
  row.metrics.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

ExperimentResult run_experiment(const ScenarioConfig& cfg, const SweepSpec& sweep) {
  validate(cfg);
  if (sweep.algorithms.empty()) throw ConfigError("no algorithms selected");
  const std::vector<double> values =
      sweep.parameter == SweepParameter::kNone ? std::vector<double>{0.0} : sweep.values;
  if (values.empty()) throw ConfigError("sweep has no values");

  const std::size_t per_value = static_cast<std::size_t>(cfg.snapshots);
  const std::size_t total = values.size() * per_value;
  std::vector<std::vector<SnapshotRow>> slots(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++)
      slots[k] = evaluate_task(cfg, sweep, values[k / per_value], static_cast<int>(k % per_value));
  };
  unsigned threads = sweep.threads > 0 ? static_cast<unsigned>(sweep.threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(total, 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  ExperimentResult result{cfg, sweep, {}};
  for (auto& slot : slots)
    for (auto& row : slot) result.rows.push_back(std::move(row));
  return result;
}

void write_csv(const ExperimentResult& result, std::ostream& out) {
  out << "sweep_value,snapshot,algorithm,alpha,pu_outage,su_outage,admitted,throughput_nats,"
         "runtime_ms,status\n";
  for (const auto& r : result.rows) {
    const bool ok = r.status == "ok" || r.status == "stalled";
    out << fmt(r.sweep_value) << ',' << r.snapshot << ',' << to_string(r.algorithm) << ','
        << fmt(r.alpha) << ',' << fmt(r.metrics.pu_outage_ratio) << ','
        << fmt(r.metrics.su_outage_ratio) << ',' << (ok ? std::to_string(r.metrics.admitted) : "")
        << ',' << fmt(r.metrics.throughput_nats) << ','
        << (result.sweep.record_runtime ? fmt(r.metrics.runtime_ms) : "") << ',' << r.status
        << '\n';
  }
}

void write_removal_traces(const ExperimentResult& result, std::ostream& out) {
  out << "sweep_value,snapshot,algorithm,alpha,iteration,case,removed_su,score\n";
  for (const auto& r : result.rows)
    for (const auto& s : r.removal_trace)
      out << fmt(r.sweep_value) << ',' << r.snapshot << ',' << to_string(r.algorithm) << ','
          << fmt(r.alpha) << ',' << s.iteration << ',' << static_cast<int>(s.removal_case) << ','
          << s.removed_su << ',' << fmt(s.score) << '\n';
}

void write_objective_traces(const ExperimentResult& result, std::ostream& out) {
  out << "sweep_value,snapshot,algorithm,alpha,outer_iteration,objective\n";
  for (const auto& r : result.rows)
    for (std::size_t k = 0; k < r.objective_trace.size(); ++k)
      out << fmt(r.sweep_value) << ',' << r.snapshot << ',' << to_string(r.algorithm) << ','
          << fmt(r.alpha) << ',' << k << ',' << fmt(r.objective_trace[k]) << '\n';
}

std::string summary_json(const ExperimentResult& result) {
  struct Acc {
    double sweep_value = 0.0;
    Algorithm algorithm = Algorithm::kJpac;
    double alpha = 0.0;
    int total = 0;
    int ok = 0;
    double pu = 0.0, su = 0.0, admitted = 0.0, throughput = 0.0;
    std::map<std::string, int> statuses;
  };
  std::vector<Acc> groups;
  std::map<std::tuple<std::string, int, std::string>, std::size_t> index;
  for (const auto& r : result.rows) {
    const auto key = std::make_tuple(fmt(r.sweep_value), static_cast<int>(r.algorithm),
                                     group_key_alpha(r.alpha));
    auto [it, fresh] = index.try_emplace(key, groups.size());
    if (fresh) {
      Acc g;
      g.sweep_value = r.sweep_value;
      g.algorithm = r.algorithm;
      g.alpha = r.alpha;
      groups.push_back(std::move(g));
    }
    Acc& g = groups[it->second];
    ++g.total;
    ++g.statuses[r.status];
    if (r.status != "ok" && r.status != "stalled") continue;
    ++g.ok;
    g.pu += r.metrics.pu_outage_ratio;
    g.su += r.metrics.su_outage_ratio;
    g.admitted += r.metrics.admitted;
    g.throughput += r.metrics.throughput_nats;
  }
  Json out_groups = Json::array();
  for (const auto& g : groups) {
    const double n = g.ok > 0 ? g.ok : kNaN;
    out_groups.push_back(Json{{"sweep_value", g.sweep_value},
                              {"algorithm", to_string(g.algorithm)},
                              {"alpha", number_json(g.alpha)},
                              {"snapshots", g.total},
                              {"ok", g.ok},
                              {"statuses", g.statuses},
                              {"mean_pu_outage", number_json(g.pu / n)},
                              {"mean_su_outage", number_json(g.su / n)},
                              {"mean_admitted", number_json(g.admitted / n)},
                              {"mean_throughput_nats", number_json(g.throughput / n)}});
  }
  Json values = Json::array();
  for (double v : result.sweep.values) values.push_back(v);
  Json algs = Json::array();
  for (Algorithm a : result.sweep.algorithms) algs.push_back(to_string(a));
  const Json doc{{"scenario", scenario_to_json(result.config)},
                 {"sweep", Json{{"parameter", to_string(result.sweep.parameter)},
                                {"values", values},
                                {"algorithms", algs}}},
                 {"groups", out_groups}};
  return doc.dump(2) + "\n";
}

}  // namespace crn
