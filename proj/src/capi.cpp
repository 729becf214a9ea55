#include "crnfir.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "crn/errors.hpp"
#include "crn/harness.hpp"
#include "crn/serialize.hpp"

struct crn_scenario {
  crn::ScenarioConfig cfg;
  crn::Json doc;
};

struct crn_network {
  crn::NetworkInstance net;
};

struct crn_fcir {
  crn::FcirPolyhedron fcir;
  crn::FtirBox ftir;
};

namespace {

thread_local std::string g_last_error;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

crn_status code_of(const std::exception& e) {
  if (dynamic_cast<const crn::ConfigError*>(&e)) return CRN_E_CONFIG;
  if (dynamic_cast<const crn::InvalidNetwork*>(&e)) return CRN_E_CONFIG;
  if (dynamic_cast<const crn::DimensionMismatch*>(&e)) return CRN_E_INVALID_ARGUMENT;
  if (dynamic_cast<const crn::InfeasibleSinr*>(&e)) return CRN_E_INFEASIBLE_SINR;
  if (dynamic_cast<const crn::PrimaryInfeasible*>(&e)) return CRN_E_PRIMARY_INFEASIBLE;
  if (dynamic_cast<const crn::FeasibilityRequired*>(&e)) return CRN_E_FEASIBILITY_REQUIRED;
  if (dynamic_cast<const crn::InfeasibleProblem*>(&e)) return CRN_E_INFEASIBLE_PROBLEM;
  if (dynamic_cast<const crn::NoCandidate*>(&e)) return CRN_E_NO_CANDIDATE;
  if (dynamic_cast<const crn::Json::exception*>(&e)) return CRN_E_CONFIG;
  if (dynamic_cast<const IoError*>(&e)) return CRN_E_IO;
  return CRN_E_INTERNAL;
}

template <class F>
crn_status guard(F&& f) {
  try {
    g_last_error.clear();
    f();
    return CRN_OK;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return code_of(e);
  } catch (...) {
    g_last_error = "unknown failure";
    return CRN_E_INTERNAL;
  }
}

crn_status invalid(const char* what) {
  g_last_error = what;
  return CRN_E_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

crn::Json parse(const char* text) {
  try {
    return crn::Json::parse(text);
  } catch (const crn::Json::parse_error& e) {
    throw crn::ConfigError(std::string("JSON parse error: ") + e.what());
  }
}

crn::Json read_json_file(const char* path) {
  std::ifstream in(path);
  if (!in) throw crn::ConfigError(std::string("cannot read '") + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str().c_str());
}

crn_scenario* make_scenario(crn::Json doc) {
  if (doc.is_object() && doc.contains("gain")) doc = crn::Json{{"network", doc}};
  auto* s = new crn_scenario{crn::scenario_from_json(doc), std::move(doc)};
  if (s->doc.contains("network")) {
    try {
      (void)crn::network_from_json(s->doc.at("network"));
    } catch (...) {
      delete s;
      throw;
    }
  }
  return s;
}

crn::SweepSpec sweep_from_json(const crn::Json& j) {
  crn::SweepSpec spec;
  if (!j.is_object()) throw crn::ConfigError("sweep must be an object");
  for (const auto& [key, _] : j.items())
    if (key != "parameter" && key != "values" && key != "algorithms" && key != "threads" &&
        key != "record_runtime")
      throw crn::ConfigError("unknown sweep key '" + key + "'");
  if (j.contains("parameter"))
    spec.parameter = crn::sweep_parameter_from_string(j.at("parameter").get<std::string>());
  if (j.contains("values")) spec.values = j.at("values").get<std::vector<double>>();
  if (j.contains("algorithms")) {
    spec.algorithms.clear();
    for (const auto& a : j.at("algorithms"))
      spec.algorithms.push_back(crn::algorithm_from_string(a.get<std::string>()));
  }
  if (j.contains("threads")) spec.threads = j.at("threads").get<int>();
  if (j.contains("record_runtime")) spec.record_runtime = j.at("record_runtime").get<bool>();
  return spec;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw IoError("cannot write '" + path.string() + "'");
}

}  // namespace

extern "C" {

const char* crn_version(void) { return "0.1.0"; }

const char* crn_last_error(void) { return g_last_error.c_str(); }

void crn_string_free(char* s) { std::free(s); }

crn_status crn_scenario_from_file(const char* path, crn_scenario** out) {
  if (!path || !out) return invalid("null argument");
  return guard([&] { *out = make_scenario(read_json_file(path)); });
}

crn_status crn_scenario_from_string(const char* json, crn_scenario** out) {
  if (!json || !out) return invalid("null argument");
  return guard([&] { *out = make_scenario(parse(json)); });
}

crn_status crn_scenario_patch(crn_scenario* scn, const char* json) {
  if (!scn || !json) return invalid("null argument");
  return guard([&] {
    const crn::Json patch = parse(json);
    crn::ScenarioConfig cfg = scn->cfg;
    crn::apply_scenario_patch(cfg, patch);
    crn::validate(cfg);
    scn->cfg = cfg;
    for (const auto& [key, value] : patch.items()) scn->doc[key] = value;
  });
}

crn_status crn_scenario_to_json(const crn_scenario* scn, char** out) {
  if (!scn || !out) return invalid("null argument");
  return guard([&] { *out = dup_string(crn::scenario_to_json(scn->cfg).dump(2)); });
}

void crn_scenario_free(crn_scenario* scn) { delete scn; }

crn_status crn_network_from_scenario(const crn_scenario* scn, uint64_t snapshot,
                                     crn_network** out) {
  if (!scn || !out) return invalid("null argument");
  return guard([&] {
    if (scn->doc.contains("network"))
      *out = new crn_network{crn::network_from_json(scn->doc.at("network"))};
    else
      *out = new crn_network{crn::generate_snapshot(scn->cfg, scn->cfg.seed + snapshot)};
  });
}

crn_status crn_network_from_json(const char* json, crn_network** out) {
  if (!json || !out) return invalid("null argument");
  return guard([&] { *out = new crn_network{crn::network_from_json(parse(json))}; });
}

crn_status crn_network_to_json(const crn_network* net, char** out) {
  if (!net || !out) return invalid("null argument");
  return guard([&] { *out = dup_string(crn::network_to_json(net->net).dump(2)); });
}

crn_status crn_network_dims(const crn_network* net, int* num_pbs, int* num_sbs, int* num_pu,
                            int* num_su) {
  if (!net) return invalid("null argument");
  if (num_pbs) *num_pbs = net->net.num_pbs();
  if (num_sbs) *num_sbs = net->net.num_sbs();
  if (num_pu) *num_pu = net->net.num_pu();
  if (num_su) *num_su = net->net.num_su();
  return CRN_OK;
}

void crn_network_free(crn_network* net) { delete net; }

crn_status crn_fcir_build(const crn_network* net, crn_fcir** out) {
  if (!net || !out) return invalid("null argument");
  return guard([&] {
    const auto& n = net->net;
    *out = new crn_fcir{crn::build_fcir(n), crn::build_ftir(n, n.target_sinr().head(n.num_pu()))};
  });
}

crn_status crn_fcir_contains(const crn_fcir* fcir, const double* interference, size_t n,
                             int* inside) {
  if (!fcir || !interference || !inside) return invalid("null argument");
  if (n != static_cast<size_t>(fcir->fcir.dim())) return invalid("interference length mismatch");
  return guard([&] {
    const crn::Vector v = Eigen::Map<const crn::Vector>(interference, static_cast<Eigen::Index>(n));
    *inside = crn::fcir_contains(fcir->fcir, v) ? 1 : 0;
  });
}

crn_status crn_fcir_baseline_itl(const crn_fcir* fcir, double alpha, double* itl, size_t n) {
  if (!fcir || !itl) return invalid("null argument");
  if (n != static_cast<size_t>(fcir->fcir.dim())) return invalid("output length mismatch");
  return guard([&] {
    const crn::Vector v = crn::baseline_itl(fcir->fcir, alpha);
    for (size_t k = 0; k < n; ++k) itl[k] = v[static_cast<Eigen::Index>(k)];
  });
}

crn_status crn_fcir_to_json(const crn_fcir* fcir, int boundary_samples, char** out) {
  if (!fcir || !out) return invalid("null argument");
  if (boundary_samples < 2) return invalid("boundary_samples must be at least 2");
  return guard([&] {
    *out = dup_string(crn::fcir_to_json(fcir->fcir, &fcir->ftir, boundary_samples).dump(2));
  });
}

void crn_fcir_free(crn_fcir* fcir) { delete fcir; }

crn_status crn_jpac_run(const crn_network* net, const char* algorithm, double alpha,
                        char** out_json) {
  if (!net || !algorithm || !out_json) return invalid("null argument");
  return guard([&] {
    const crn::Algorithm alg = crn::algorithm_from_string(algorithm);
    if (alg != crn::Algorithm::kJpac && alg != crn::Algorithm::kJpacBox)
      throw crn::ConfigError("expected jpac or jpac-box");
    const auto& n = net->net;
    crn::JpacOutcome result = alg == crn::Algorithm::kJpac
                                  ? crn::run_jpac(n)
                                  : crn::run_jpac_box(n, crn::baseline_itl(crn::build_fcir(n), alpha));
    crn::Json doc = crn::jpac_to_json(n, result);
    doc["algorithm"] = algorithm;
    if (alg == crn::Algorithm::kJpacBox) doc["alpha"] = alpha;
    *out_json = dup_string(doc.dump(2));
  });
}

crn_status crn_throughput_run(const crn_network* net, const char* algorithm, double alpha,
                              char** out_json) {
  if (!net || !algorithm || !out_json) return invalid("null argument");
  return guard([&] {
    const crn::Algorithm alg = crn::algorithm_from_string(algorithm);
    if (alg != crn::Algorithm::kGpPoly && alg != crn::Algorithm::kGpBox)
      throw crn::ConfigError("expected gp-poly or gp-box");
    const auto& n = net->net;
    const crn::FcirPolyhedron fcir = crn::build_fcir(n);
    const crn::Protection protection =
        alg == crn::Algorithm::kGpPoly ? crn::Protection{fcir}
                                       : crn::Protection{crn::BoxItl{crn::baseline_itl(fcir, alpha)}};
    crn::Json doc = crn::gp_to_json(n, crn::run_algorithm2(n, protection));
    doc["algorithm"] = algorithm;
    if (alg == crn::Algorithm::kGpBox) doc["alpha"] = alpha;
    *out_json = dup_string(doc.dump(2));
  });
}

crn_status crn_experiment_run(const crn_scenario* scn, const char* sweep_json,
                              const char* out_dir) {
  if (!scn || !out_dir) return invalid("null argument");
  return guard([&] {
    crn::Json sweep = scn->doc.contains("sweep") ? scn->doc.at("sweep") : crn::Json::object();
    if (sweep_json) {
      const crn::Json overlay = parse(sweep_json);
      for (const auto& [key, value] : overlay.items()) sweep[key] = value;
    }
    const crn::SweepSpec spec = sweep_from_json(sweep);
    const crn::ExperimentResult result = crn::run_experiment(scn->cfg, spec);

    const std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
    std::ostringstream csv, traces, gp;
    crn::write_csv(result, csv);
    crn::write_removal_traces(result, traces);
    crn::write_objective_traces(result, gp);
    write_file(dir / "results.csv", csv.str());
    write_file(dir / "traces.csv", traces.str());
    write_file(dir / "gp_traces.csv", gp.str());
    write_file(dir / "summary.json", crn::summary_json(result));
  });
}

}  // extern "C"
