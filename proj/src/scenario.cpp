#include "crn/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "crn/errors.hpp"

namespace crn {

namespace {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  int index(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  double pick(const std::vector<double>& values) {
    return values[static_cast<std::size_t>(index(static_cast<int>(values.size())))];
  }

 private:
  std::mt19937_64 rng_;
};

struct Layout {
  std::vector<Point> stations;
  std::vector<double> station_height;
  std::vector<Point> users;
  std::vector<int> serving;
};

// Users in the tier choose one of `first..first+count-1`; placement is either
// the whole area or the quadrant of the chosen station.
void place_four_cell(const ScenarioConfig& cfg, Sampler& rng, Layout& lay, int users,
                     int first_station, bool in_quadrant) {
  const double hw = cfg.area_width / 2.0, hh = cfg.area_height / 2.0;
  for (int u = 0; u < users; ++u) {
    const int s = first_station + rng.index(2);
    Point p;
    if (in_quadrant) {
      // Quadrant signs follow the corner the station occupies.
      const double sx = s == 0 || s == 2 ? -1.0 : 1.0;
      const double sy = s == 0 || s == 3 ? -1.0 : 1.0;
      p.x = sx * rng.uniform(0.0, hw);
      p.y = sy * rng.uniform(0.0, hh);
    } else {
      p.x = rng.uniform(-hw, hw);
      p.y = rng.uniform(-hh, hh);
    }
    lay.users.push_back(p);
    lay.serving.push_back(s);
  }
}

Layout layout_two_pbs(const ScenarioConfig& cfg, Sampler& rng) {
  Layout lay;
  const double cy = cfg.area_height / 2.0, cx = cfg.area_width / 2.0;
  lay.stations = {{cx - cfg.bs_separation / 2.0, cy}, {cx + cfg.bs_separation / 2.0, cy}};
  lay.station_height = {cfg.bs_height, cfg.bs_height};
  for (int u = 0; u < cfg.num_pu; ++u) {
    const Point p{rng.uniform(0.0, cfg.area_width), rng.uniform(0.0, cfg.area_height)};
    int s = rng.index(2);
    if (cfg.nearest_assignment)
      s = distance(p, lay.stations[0]) <= distance(p, lay.stations[1]) ? 0 : 1;
    lay.users.push_back(p);
    lay.serving.push_back(s);
  }
  return lay;
}

Layout layout_four_cell(const ScenarioConfig& cfg, Sampler& rng, bool in_quadrant) {
  Layout lay;
  const double h = cfg.bs_separation / 2.0;
  // PBSs on one diagonal, SBSs on the other.
  lay.stations = {{-h, -h}, {h, h}, {-h, h}, {h, -h}};
  lay.station_height.assign(4, cfg.bs_height);
  place_four_cell(cfg, rng, lay, cfg.num_pu, 0, in_quadrant);
  place_four_cell(cfg, rng, lay, cfg.num_su, 2, in_quadrant);
  return lay;
}

Layout layout_ad_hoc(const ScenarioConfig& cfg, Sampler& rng) {
  Layout lay;
  const int links = cfg.num_pu + cfg.num_su;
  lay.stations.resize(links);
  lay.station_height.assign(links, 0.0);
  for (int l = 0; l < links; ++l) {
    const Point tx{rng.uniform(0.0, cfg.area_width), rng.uniform(0.0, cfg.area_height)};
    Point rx;
    for (;;) {
      const double r = cfg.link_max_distance * std::sqrt(rng.uniform(0.0, 1.0));
      const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
      rx = {tx.x + r * std::cos(theta), tx.y + r * std::sin(theta)};
      if (rx.x >= 0.0 && rx.x <= cfg.area_width && rx.y >= 0.0 && rx.y <= cfg.area_height) break;
    }
    lay.users.push_back(tx);
    lay.stations[l] = rx;
    lay.serving.push_back(l);
  }
  return lay;
}

}  // namespace

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kTwoPbs: return "two-pbs";
    case ScenarioKind::kFourCellA: return "four-cell-a";
    case ScenarioKind::kFourCellB: return "four-cell-b";
    case ScenarioKind::kAdHoc: return "ad-hoc";
  }
  return "unknown";
}

ScenarioKind scenario_kind_from_string(const std::string& name) {
  if (name == "two-pbs") return ScenarioKind::kTwoPbs;
  if (name == "four-cell-a") return ScenarioKind::kFourCellA;
  if (name == "four-cell-b") return ScenarioKind::kFourCellB;
  if (name == "ad-hoc") return ScenarioKind::kAdHoc;
  throw ConfigError("unknown scenario kind '" + name + "'");
}

ScenarioConfig default_config(ScenarioKind kind) {
  ScenarioConfig cfg;
  cfg.kind = kind;
  switch (kind) {
    case ScenarioKind::kTwoPbs:
      cfg.area_width = 1000.0;
      cfg.area_height = 500.0;
      cfg.num_su = 0;
      cfg.pu_target_db = cfg.su_target_db = {-18.0};
      break;
    case ScenarioKind::kFourCellA:
      cfg.pu_target_db = cfg.su_target_db = {-20.0, -24.0};
      break;
    case ScenarioKind::kFourCellB:
      cfg.pu_target_db = cfg.su_target_db = {-12.0, -16.0};
      break;
    case ScenarioKind::kAdHoc:
      cfg.num_pu = cfg.num_su = 28;
      cfg.pu_target_db = cfg.su_target_db = {-16.0, -20.0};
      break;
  }
  return cfg;
}

void validate(const ScenarioConfig& cfg) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(cfg.area_width > 0.0 && cfg.area_height > 0.0, "area dimensions must be positive");
  require(cfg.bs_separation >= 0.0, "bs_separation must be nonnegative");
  require(cfg.bs_separation < std::min(cfg.area_width, cfg.area_height),
          "bs_separation must be smaller than the area");
  require(cfg.bs_height >= 0.0, "bs_height must be nonnegative");
  require(cfg.num_pu >= 0 && cfg.num_su >= 0, "user counts must be nonnegative");
  require(cfg.num_pu + cfg.num_su > 0, "scenario has no users");
  require(!cfg.pu_target_db.empty() && !cfg.su_target_db.empty(), "target SINR sets must be nonempty");
  require(cfg.noise > 0.0 && cfg.attenuation > 0.0 && cfg.p_max > 0.0, "noise, attenuation, p_max must be positive");
  require(cfg.path_loss_exponent > 0.0, "path loss exponent must be positive");
  require(cfg.link_max_distance > 0.0, "link_max_distance must be positive");
  require(cfg.min_distance > 0.0, "min_distance must be positive");
  require(cfg.snapshots > 0, "snapshots must be positive");
  require(cfg.kind != ScenarioKind::kTwoPbs || cfg.num_su == 0, "two-pbs scenario has no SBSs");
  for (double a : cfg.alphas) require(a >= 0.0 && std::isfinite(a), "alpha values must be finite and nonnegative");
}

double path_gain(const ScenarioConfig& cfg, double horizontal, double height) {
  const double d = std::max(std::hypot(horizontal, height), cfg.min_distance);
  return cfg.attenuation * std::pow(d, -cfg.path_loss_exponent);
}

NetworkInstance generate_snapshot(const ScenarioConfig& cfg, std::uint64_t seed) {
  validate(cfg);
  Sampler rng(seed);
  Layout lay;
  int num_pbs = 0, num_sbs = 0;
  switch (cfg.kind) {
    case ScenarioKind::kTwoPbs:
      lay = layout_two_pbs(cfg, rng);
      num_pbs = 2;
      break;
    case ScenarioKind::kFourCellA:
    case ScenarioKind::kFourCellB:
      lay = layout_four_cell(cfg, rng, cfg.kind == ScenarioKind::kFourCellB);
      num_pbs = num_sbs = 2;
      break;
    case ScenarioKind::kAdHoc:
      lay = layout_ad_hoc(cfg, rng);
      num_pbs = cfg.num_pu;
      num_sbs = cfg.num_su;
      break;
  }
  const int m = cfg.num_pu + cfg.num_su;
  const int b = num_pbs + num_sbs;
  NetworkInstance::Params p;
  p.num_pu = cfg.num_pu;
  p.num_su = cfg.num_su;
  p.num_pbs = num_pbs;
  p.num_sbs = num_sbs;
  p.serving = lay.serving;
  p.gain.resize(b, m);
  for (int s = 0; s < b; ++s)
    for (int u = 0; u < m; ++u)
      p.gain(s, u) = path_gain(cfg, distance(lay.stations[s], lay.users[u]), lay.station_height[s]);
  p.noise = Vector::Constant(b, cfg.noise);
  p.p_max = Vector::Constant(m, cfg.p_max);
  p.target_sinr.resize(m);
  for (int u = 0; u < m; ++u)
    p.target_sinr[u] = db_to_linear(rng.pick(u < cfg.num_pu ? cfg.pu_target_db : cfg.su_target_db));
  return NetworkInstance(std::move(p));
}

}  // namespace crn
