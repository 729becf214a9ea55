#include "crn/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "crn/errors.hpp"

namespace crn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vector vector_or_scalar(const Json& j, Eigen::Index n, const char* key) {
  if (j.is_number()) return Vector::Constant(n, j.get<double>());
  Vector v = vector_from_json(j);
  if (v.size() != n) throw ConfigError(std::string(key) + " has the wrong length");
  return v;
}

std::vector<double> double_list(const Json& j, const char* key) {
  if (j.is_number()) return {j.get<double>()};
  if (!j.is_array()) throw ConfigError(std::string(key) + " must be a number or a list");
  return j.get<std::vector<double>>();
}

// Vertices of { I >= 0, a I <= c } in two dimensions, counter-clockwise.
std::vector<std::array<double, 2>> polygon_2d(const FcirPolyhedron& f) {
  std::vector<std::array<double, 3>> lines;  // u x + v y <= w
  for (int m = 0; m < 2; ++m)
    if (f.row_active(m)) lines.push_back({f.a(m, 0), f.a(m, 1), f.c[m]});
  lines.push_back({-1.0, 0.0, 0.0});
  lines.push_back({0.0, -1.0, 0.0});
  auto inside = [&](double x, double y) {
    for (const auto& l : lines) {
      const double scale = std::max({1.0, std::abs(l[2]), std::abs(l[0] * x) + std::abs(l[1] * y)});
      if (l[0] * x + l[1] * y - l[2] > 1e-9 * scale) return false;
    }
    return true;
  };
  std::vector<std::array<double, 2>> pts;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t k = i + 1; k < lines.size(); ++k) {
      const auto& p = lines[i];
      const auto& q = lines[k];
      const double det = p[0] * q[1] - p[1] * q[0];
      if (std::abs(det) < 1e-300) continue;
      const double x = (p[2] * q[1] - p[1] * q[2]) / det;
      const double y = (p[0] * q[2] - p[2] * q[0]) / det;
      if (!inside(x, y)) continue;
      const bool dup = std::any_of(pts.begin(), pts.end(), [&](const auto& v) {
        return std::abs(v[0] - x) <= 1e-12 * std::max(1.0, std::abs(x)) &&
               std::abs(v[1] - y) <= 1e-12 * std::max(1.0, std::abs(y));
      });
      if (!dup) pts.push_back({x, y});
    }
  }
  double cx = 0.0, cy = 0.0;
  for (const auto& v : pts) {
    cx += v[0];
    cy += v[1];
  }
  cx /= static_cast<double>(std::max<std::size_t>(pts.size(), 1));
  cy /= static_cast<double>(std::max<std::size_t>(pts.size(), 1));
  std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
    return std::atan2(a[1] - cy, a[0] - cx) < std::atan2(b[1] - cy, b[0] - cx);
  });
  return pts;
}

}  // namespace

Json number_json(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double number_from_json(const Json& j) { return j.is_null() ? kInf : j.get<double>(); }

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number_json(v[i]));
  return out;
}

Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r).transpose()));
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw ConfigError("expected a numeric list");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number_from_json(j[i]);
  return v;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ConfigError("expected a list of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Vector row = vector_from_json(j[static_cast<std::size_t>(r)]);
    if (row.size() != cols) throw ConfigError("ragged matrix");
    m.row(r) = row.transpose();
  }
  return m;
}

Json network_to_json(const NetworkInstance& net) {
  return Json{{"num_pu", net.num_pu()},
              {"num_su", net.num_su()},
              {"num_pbs", net.num_pbs()},
              {"num_sbs", net.num_sbs()},
              {"serving", net.serving()},
              {"gain", matrix_json(net.gains())},
              {"noise", vector_json(net.noise())},
              {"p_max", vector_json(net.p_max())},
              {"target_sinr", vector_json(net.target_sinr())}};
}

NetworkInstance network_from_json(const Json& j) {
  try {
    NetworkInstance::Params p;
    p.num_pu = j.at("num_pu").get<int>();
    p.num_su = j.value("num_su", 0);
    p.num_pbs = j.at("num_pbs").get<int>();
    p.num_sbs = j.value("num_sbs", 0);
    const int m = p.num_pu + p.num_su;
    const int b = p.num_pbs + p.num_sbs;
    p.serving = j.at("serving").get<std::vector<int>>();
    p.gain = matrix_from_json(j.at("gain"));
    p.noise = vector_or_scalar(j.at("noise"), b, "noise");
    p.p_max = vector_or_scalar(j.at("p_max"), m, "p_max");
    if (j.contains("target_sinr")) {
      p.target_sinr = vector_or_scalar(j.at("target_sinr"), m, "target_sinr");
    } else {
      const Vector db = vector_or_scalar(j.at("target_sinr_db"), m, "target_sinr_db");
      p.target_sinr = db.unaryExpr([](double x) { return db_to_linear(x); });
    }
    return NetworkInstance(std::move(p));
  } catch (const InvalidNetwork& e) {
    throw ConfigError(std::string("invalid network: ") + e.what());
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed network document: ") + e.what());
  }
}

Json fcir_to_json(const FcirPolyhedron& fcir, const FtirBox* ftir, int boundary_samples) {
  Json out{{"dim", fcir.dim()},
           {"a", matrix_json(fcir.a)},
           {"c", vector_json(fcir.c)},
           {"phi_max", vector_json(fcir.phi_max)},
           {"noise", vector_json(fcir.noise)},
           {"axis_intercepts", vector_json(axis_intercepts(fcir))}};
  if (ftir) out["titl"] = vector_json(ftir->titl);
  if (fcir.dim() == 2) {
    Json verts = Json::array();
    for (const auto& v : polygon_2d(fcir)) verts.push_back({v[0] + 0.0, v[1] + 0.0});
    out["vertices"] = verts;
    Json lines = Json::array();
    for (int m = 0; m < 2; ++m) {
      if (!fcir.row_active(m)) continue;
      // a_m0 x + a_m1 y = c_m for x in [0, c_m / a_m0].
      const double x_end = fcir.c[m] / fcir.a(m, 0);
      Json pts = Json::array();
      for (int k = 0; k < boundary_samples; ++k) {
        const double x = x_end * k / std::max(boundary_samples - 1, 1);
        pts.push_back({x, (fcir.c[m] - fcir.a(m, 0) * x) / fcir.a(m, 1)});
      }
      lines.push_back(Json{{"row", m}, {"points", pts}});
    }
    out["boundary"] = lines;
  }
  return out;
}

FcirPolyhedron fcir_from_json(const Json& j) {
  try {
    FcirPolyhedron f;
    f.a = matrix_from_json(j.at("a"));
    f.c = vector_from_json(j.at("c"));
    f.phi_max = vector_from_json(j.at("phi_max"));
    f.noise = vector_from_json(j.at("noise"));
    if (f.a.rows() != f.c.size() || f.a.cols() != f.c.size())
      throw ConfigError("FCIR document dimensions disagree");
    return f;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed FCIR document: ") + e.what());
  }
}

Json scenario_to_json(const ScenarioConfig& cfg) {
  return Json{{"kind", to_string(cfg.kind)},
              {"area_width", cfg.area_width},
              {"area_height", cfg.area_height},
              {"bs_separation", cfg.bs_separation},
              {"bs_height", cfg.bs_height},
              {"num_pu", cfg.num_pu},
              {"num_su", cfg.num_su},
              {"pu_target_sinr_db", cfg.pu_target_db},
              {"su_target_sinr_db", cfg.su_target_db},
              {"noise", cfg.noise},
              {"attenuation", cfg.attenuation},
              {"p_max", cfg.p_max},
              {"path_loss_exponent", cfg.path_loss_exponent},
              {"link_max_distance", cfg.link_max_distance},
              {"assignment", cfg.nearest_assignment ? "nearest" : "random"},
              {"min_distance", cfg.min_distance},
              {"snapshots", cfg.snapshots},
              {"seed", cfg.seed},
              {"alphas", cfg.alphas}};
}

void apply_scenario_patch(ScenarioConfig& cfg, const Json& j) {
  static const std::set<std::string> known{
      "kind", "area_width", "area_height", "bs_separation", "bs_height", "num_pu", "num_su",
      "target_sinr_db", "pu_target_sinr_db", "su_target_sinr_db", "noise", "attenuation",
      "p_max", "path_loss_exponent", "link_max_distance", "assignment", "min_distance",
      "snapshots", "seed", "alphas", "network", "sweep", "comment"};
  if (!j.is_object()) throw ConfigError("configuration must be an object");
  try {
    for (const auto& [key, _] : j.items())
      if (!known.contains(key)) throw ConfigError("unknown configuration key '" + key + "'");
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("area_width", cfg.area_width);
    get("area_height", cfg.area_height);
    get("bs_separation", cfg.bs_separation);
    get("bs_height", cfg.bs_height);
    get("num_pu", cfg.num_pu);
    get("num_su", cfg.num_su);
    if (j.contains("target_sinr_db"))
      cfg.pu_target_db = cfg.su_target_db = double_list(j.at("target_sinr_db"), "target_sinr_db");
    if (j.contains("pu_target_sinr_db"))
      cfg.pu_target_db = double_list(j.at("pu_target_sinr_db"), "pu_target_sinr_db");
    if (j.contains("su_target_sinr_db"))
      cfg.su_target_db = double_list(j.at("su_target_sinr_db"), "su_target_sinr_db");
    get("noise", cfg.noise);
    get("attenuation", cfg.attenuation);
    get("p_max", cfg.p_max);
    get("path_loss_exponent", cfg.path_loss_exponent);
    get("link_max_distance", cfg.link_max_distance);
    if (j.contains("assignment")) {
      const auto a = j.at("assignment").get<std::string>();
      if (a != "nearest" && a != "random") throw ConfigError("assignment must be 'random' or 'nearest'");
      cfg.nearest_assignment = a == "nearest";
    }
    get("min_distance", cfg.min_distance);
    get("snapshots", cfg.snapshots);
    get("seed", cfg.seed);
    if (j.contains("alphas")) cfg.alphas = double_list(j.at("alphas"), "alphas");
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
}

ScenarioConfig scenario_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("configuration must be an object");
  ScenarioKind kind = ScenarioKind::kFourCellA;
  if (j.contains("kind")) {
    if (!j.at("kind").is_string()) throw ConfigError("kind must be a string");
    kind = scenario_kind_from_string(j.at("kind").get<std::string>());
  }
  ScenarioConfig cfg = default_config(kind);
  apply_scenario_patch(cfg, j);
  validate(cfg);
  return cfg;
}

Json jpac_to_json(const NetworkInstance& net, const JpacOutcome& out) {
  Json trace = Json::array();
  for (const auto& s : out.removal_trace)
    trace.push_back(Json{{"iteration", s.iteration},
                         {"case", static_cast<int>(s.removal_case)},
                         {"removed_su", s.removed_su},
                         {"score", number_json(s.score)}});
  const SinrVector gamma = sinr_of(net, out.p_final);
  return Json{{"admitted", out.admitted},
              {"admitted_count", out.admitted.size()},
              {"removal_trace", trace},
              {"p_final", vector_json(out.p_final)},
              {"sinr_db", vector_json(gamma.unaryExpr([](double g) { return linear_to_db(g); }))},
              {"pu_outage", out.pu_outage_ratio},
              {"su_outage", out.su_outage_ratio},
              {"tpc_phases", out.tpc_phases}};
}

Json gp_to_json(const NetworkInstance& net, const GpRun& run) {
  (void)net;
  Json trace = Json::array();
  for (double v : run.objective_trace) trace.push_back(v);
  return Json{{"throughput_nats", run.final.objective},
              {"su_powers", vector_json(run.final.p)},
              {"su_sinr", vector_json(run.final.gamma)},
              {"p_full", vector_json(run.p_full)},
              {"pu_outage", run.pu_outage_ratio},
              {"outer_iterations", run.outer_iterations},
              {"stalled", run.stalled},
              {"objective_trace", trace}};
}

}  // namespace crn
