#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "crn/harness.hpp"
#include "crn/serialize.hpp"

using namespace crn;

namespace {

std::string csv_of(const ExperimentResult& r) {
  std::ostringstream out;
  write_csv(r, out);
  return out.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

ScenarioConfig small_four_cell(int snapshots) {
  ScenarioConfig cfg = default_config(ScenarioKind::kFourCellA);
  cfg.num_pu = 6;
  cfg.num_su = 8;
  cfg.snapshots = snapshots;
  cfg.seed = 100;
  return cfg;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("csv header") {
    ExperimentResult r;
    const auto rows = parse_csv(csv_of(r));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0] == std::vector<std::string>{"sweep_value", "snapshot", "algorithm", "alpha",
                                              "pu_outage", "su_outage", "admitted",
                                              "throughput_nats", "runtime_ms", "status"});
  }

  TEST_CASE("primary-only scenario") {
    ScenarioConfig cfg = default_config(ScenarioKind::kTwoPbs);
    cfg.snapshots = 5;
    cfg.num_pu = 4;
    SweepSpec sweep;
    sweep.algorithms = {Algorithm::kJpac};
    const ExperimentResult r = run_experiment(cfg, sweep);
    REQUIRE(r.rows.size() == 5);
    for (const auto& row : r.rows) {
      if (row.status != "ok") continue;
      CHECK(row.metrics.su_outage_ratio == 0.0);
      CHECK(row.metrics.pu_outage_ratio == 0.0);
      CHECK(row.metrics.admitted == 0);
    }
  }

  TEST_CASE("admission control never leaves a PU in outage") {
    SweepSpec sweep;
    sweep.algorithms = {Algorithm::kJpac};
    const ExperimentResult r = run_experiment(small_four_cell(20), sweep);
    int ok = 0;
    for (const auto& row : r.rows) {
      if (row.status != "ok") continue;
      CHECK(row.metrics.pu_outage_ratio == 0.0);
      ++ok;
    }
    CHECK(ok > 10);
  }

  TEST_CASE("rows are ordered and complete") {
    SweepSpec sweep;
    sweep.parameter = SweepParameter::kSuCount;
    sweep.values = {2, 4};
    sweep.algorithms = {Algorithm::kJpac, Algorithm::kJpacBox};
    ScenarioConfig cfg = small_four_cell(3);
    cfg.alphas = {0.5, 2.0};
    const ExperimentResult r = run_experiment(cfg, sweep);
    REQUIRE(r.rows.size() == 2 * 3 * 3);
    std::size_t k = 0;
    for (double v : sweep.values)
      for (int s = 0; s < 3; ++s) {
        const std::vector<std::pair<Algorithm, double>> expect{
            {Algorithm::kJpac, NAN}, {Algorithm::kJpacBox, 0.5}, {Algorithm::kJpacBox, 2.0}};
        for (const auto& [alg, alpha] : expect) {
          const SnapshotRow& row = r.rows[k++];
          CHECK(row.sweep_value == v);
          CHECK(row.snapshot == s);
          CHECK(row.algorithm == alg);
          if (std::isnan(alpha)) CHECK(std::isnan(row.alpha));
          else CHECK(row.alpha == alpha);
        }
      }
  }

  TEST_CASE("identical configuration gives identical bytes") {
    SweepSpec sweep;
    sweep.algorithms = {Algorithm::kJpac, Algorithm::kJpacBox};
    sweep.threads = 1;
    const ScenarioConfig cfg = small_four_cell(8);
    const std::string one = csv_of(run_experiment(cfg, sweep));
    sweep.threads = 3;
    const std::string two = csv_of(run_experiment(cfg, sweep));
    CHECK(one == two);
    ScenarioConfig other = cfg;
    other.seed += 1;
    CHECK(csv_of(run_experiment(other, sweep)) != one);
  }

  TEST_CASE("summary means are recomputable from the csv") {
    SweepSpec sweep;
    sweep.algorithms = {Algorithm::kJpac, Algorithm::kJpacBox};
    const ExperimentResult r = run_experiment(small_four_cell(10), sweep);
    const auto rows = parse_csv(csv_of(r));
    std::map<std::string, std::vector<double>> su;
    for (std::size_t k = 1; k < rows.size(); ++k) {
      if (rows[k][9] != "ok") continue;
      su[rows[k][2] + "|" + rows[k][3]].push_back(std::stod(rows[k][5]));
    }
    const Json summary = Json::parse(summary_json(r));
    for (const auto& g : summary.at("groups")) {
      std::string alpha;
      if (!g.at("alpha").is_null()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", g.at("alpha").get<double>());
        alpha = buf;
      }
      const auto& values = su[g.at("algorithm").get<std::string>() + "|" + alpha];
      REQUIRE(values.size() == g.at("ok").get<std::size_t>());
      double mean = 0.0;
      for (double v : values) mean += v;
      mean /= static_cast<double>(values.size());
      CHECK(g.at("mean_su_outage").get<double>() == doctest::Approx(mean).epsilon(1e-12));
    }
  }

  TEST_CASE("large fixed ITL breaches primary protection somewhere") {
    ScenarioConfig cfg = default_config(ScenarioKind::kFourCellA);
    cfg.snapshots = 30;
    cfg.alphas = {10.0};
    SweepSpec sweep;
    sweep.algorithms = {Algorithm::kJpacBox};
    const ExperimentResult r = run_experiment(cfg, sweep);
    int breached = 0;
    for (const auto& row : r.rows)
      if (row.status == "ok" && row.metrics.pu_outage_ratio > 0.0) ++breached;
    CHECK(breached > 0);
  }

  TEST_CASE("algorithm errors become statuses") {
    ScenarioConfig cfg = small_four_cell(6);
    cfg.su_target_db = {10.0};  // far beyond what the secondary tier can reach together
    SweepSpec sweep;
    sweep.algorithms = {Algorithm::kGpPoly};
    const ExperimentResult r = run_experiment(cfg, sweep);
    REQUIRE(r.rows.size() == 6);
    int refused = 0;
    for (const auto& row : r.rows) refused += row.status == "feasibility-required";
    CHECK(refused > 0);
    const auto rows = parse_csv(csv_of(r));
    for (std::size_t k = 1; k < rows.size(); ++k)
      if (rows[k][9] != "ok") CHECK(rows[k][5].empty());
  }

  TEST_CASE("runtime column only when asked") {
    SweepSpec sweep;
    sweep.algorithms = {Algorithm::kJpac};
    const ScenarioConfig cfg = small_four_cell(2);
    auto rows = parse_csv(csv_of(run_experiment(cfg, sweep)));
    CHECK(rows[1][8].empty());
    sweep.record_runtime = true;
    rows = parse_csv(csv_of(run_experiment(cfg, sweep)));
    CHECK_FALSE(rows[1][8].empty());
  }

  TEST_CASE("names") {
    for (Algorithm a : {Algorithm::kJpac, Algorithm::kJpacBox, Algorithm::kGpPoly, Algorithm::kGpBox})
      CHECK(algorithm_from_string(to_string(a)) == a);
    CHECK(uses_alpha(Algorithm::kGpBox));
    CHECK_FALSE(uses_alpha(Algorithm::kJpac));
    CHECK(sweep_parameter_from_string("d") == SweepParameter::kBsSeparation);
    CHECK_THROWS(algorithm_from_string("ismira"));
  }
}
