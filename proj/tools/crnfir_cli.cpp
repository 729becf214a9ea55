#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "crnfir.h"
#include "range_spec.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

struct CliFailure {
  int code;
  std::string message;
};

int exit_code_for(crn_status s) {
  return s == CRN_E_CONFIG || s == CRN_E_INVALID_ARGUMENT ? kExitConfig : kExitRuntime;
}

void check(crn_status s) {
  if (s != CRN_OK) throw CliFailure{exit_code_for(s), crn_last_error()};
}

struct ScenarioDeleter {
  void operator()(crn_scenario* p) const { crn_scenario_free(p); }
};
struct NetworkDeleter {
  void operator()(crn_network* p) const { crn_network_free(p); }
};
struct FcirDeleter {
  void operator()(crn_fcir* p) const { crn_fcir_free(p); }
};
struct StringDeleter {
  void operator()(char* p) const { crn_string_free(p); }
};
using ScenarioPtr = std::unique_ptr<crn_scenario, ScenarioDeleter>;
using NetworkPtr = std::unique_ptr<crn_network, NetworkDeleter>;
using FcirPtr = std::unique_ptr<crn_fcir, FcirDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string list_json(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + num(v[i]);
  return out + "]";
}

std::vector<double> values_of(const std::vector<std::string>& tokens, const char* flag) {
  std::string joined;
  for (const auto& t : tokens) joined += (joined.empty() ? "" : " ") + t;
  try {
    return crnfir_cli::parse_range(joined);
  } catch (const std::exception& e) {
    throw CliFailure{kExitConfig, std::string(flag) + ": " + e.what()};
  }
}

struct Options {
  std::string config;
  std::string out;
  std::optional<unsigned long long> seed;
  std::optional<int> snapshots;
  std::vector<std::string> alpha;
  std::vector<std::string> d;
  std::vector<std::string> su_range;
  std::vector<std::string> algorithms;
  std::string sweep;
  int threads = 0;
  bool timing = false;
  unsigned long long snapshot = 0;
  int samples = 64;
};

ScenarioPtr load_scenario(const Options& o) {
  crn_scenario* raw = nullptr;
  check(crn_scenario_from_file(o.config.c_str(), &raw));
  ScenarioPtr scn(raw);
  std::string patch;
  auto add = [&](const std::string& kv) { patch += (patch.empty() ? "" : ",") + kv; };
  if (o.seed) add("\"seed\":" + std::to_string(*o.seed));
  if (o.snapshots) add("\"snapshots\":" + std::to_string(*o.snapshots));
  if (!o.alpha.empty()) add("\"alphas\":" + list_json(values_of(o.alpha, "--alpha")));
  if (!o.d.empty()) {
    const auto d = values_of(o.d, "--d");
    if (d.size() == 1) add("\"bs_separation\":" + num(d[0]));
  }
  if (!o.su_range.empty()) {
    const auto su = values_of(o.su_range, "--su-range");
    if (su.size() == 1) add("\"num_su\":" + num(su[0]));
  }
  if (!patch.empty()) check(crn_scenario_patch(scn.get(), ("{" + patch + "}").c_str()));
  return scn;
}

NetworkPtr load_network(const crn_scenario* scn, unsigned long long snapshot) {
  crn_network* raw = nullptr;
  check(crn_network_from_scenario(scn, snapshot, &raw));
  return NetworkPtr(raw);
}

void emit(const std::string& text, const Options& o, const char* file) {
  std::cout << text << '\n';
  if (o.out.empty()) return;
  const std::string path = o.out + "/" + file;
  std::ofstream out(path, std::ios::binary);
  out << text << '\n';
  if (!out) throw CliFailure{kExitRuntime, "cannot write '" + path + "'"};
}

std::string single_algorithm(const Options& o, const char* fallback) {
  if (o.algorithms.empty()) return fallback;
  if (o.algorithms.size() > 1) throw CliFailure{kExitConfig, "--algorithm takes one value here"};
  return o.algorithms[0];
}

double single_alpha(const Options& o) {
  if (o.alpha.empty()) return 1.0;
  const auto a = values_of(o.alpha, "--alpha");
  if (a.size() != 1) throw CliFailure{kExitConfig, "--alpha takes one value here"};
  return a[0];
}

void run_fcir(const Options& o) {
  ScenarioPtr scn = load_scenario(o);
  NetworkPtr net = load_network(scn.get(), o.snapshot);
  crn_fcir* raw = nullptr;
  check(crn_fcir_build(net.get(), &raw));
  FcirPtr fcir(raw);
  char* text = nullptr;
  check(crn_fcir_to_json(fcir.get(), o.samples, &text));
  emit(StringPtr(text).get(), o, "fcir.json");
}

void run_single(const Options& o, bool jpac) {
  ScenarioPtr scn = load_scenario(o);
  NetworkPtr net = load_network(scn.get(), o.snapshot);
  const std::string alg = single_algorithm(o, jpac ? "jpac" : "gp-poly");
  char* text = nullptr;
  check(jpac ? crn_jpac_run(net.get(), alg.c_str(), single_alpha(o), &text)
             : crn_throughput_run(net.get(), alg.c_str(), single_alpha(o), &text));
  emit(StringPtr(text).get(), o, jpac ? "jpac.json" : "throughput.json");
}

void run_sweep(const Options& o) {
  if (o.out.empty()) throw CliFailure{kExitConfig, "sweep requires --out"};
  ScenarioPtr scn = load_scenario(o);
  std::string param = o.sweep;
  std::vector<double> values;
  const auto d = o.d.empty() ? std::vector<double>{} : values_of(o.d, "--d");
  const auto su = o.su_range.empty() ? std::vector<double>{} : values_of(o.su_range, "--su-range");
  if (d.size() > 1 && su.size() > 1)
    throw CliFailure{kExitConfig, "--d and --su-range cannot both be ranges"};
  if (param.empty()) {
    if (d.size() > 1) param = "d";
    if (su.size() > 1) param = "su";
  }
  if (param == "d") values = d;
  if (param == "su") values = su;
  if (param == "alpha") values = values_of(o.alpha, "--alpha");

  std::string sweep = "{";
  if (!param.empty()) {
    sweep += "\"parameter\":\"" + param + "\"";
    if (!values.empty()) sweep += ",\"values\":" + list_json(values);
  } else {
    sweep += "\"parameter\":\"none\"";
  }
  if (!o.algorithms.empty()) {
    sweep += ",\"algorithms\":[";
    for (std::size_t i = 0; i < o.algorithms.size(); ++i)
      sweep += (i ? ",\"" : "\"") + o.algorithms[i] + "\"";
    sweep += "]";
  }
  if (o.threads > 0) sweep += ",\"threads\":" + std::to_string(o.threads);
  if (o.timing) sweep += ",\"record_runtime\":true";
  sweep += "}";
  check(crn_experiment_run(scn.get(), sweep.c_str(), o.out.c_str()));
  std::cout << "wrote " << o.out << "/results.csv\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feasible interference regions and admission/power control for underlay CRNs"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Scenario or network JSON")->required();
    sub->add_option("--out", o.out, "Output directory");
    sub->add_option("--seed", o.seed, "Master seed override");
    sub->add_option("--alpha", o.alpha, "Alpha value, list, or 'a..b step s'")->expected(1, 3);
    sub->add_option("--d", o.d, "BS separation (m), list or range")->expected(1, 3);
    sub->add_option("--su-range", o.su_range, "SU count, list or range")->expected(1, 3);
  };
  auto* fcir = app.add_subcommand("fcir", "Print the FCIR document of one snapshot");
  common(fcir);
  fcir->add_option("--snapshot", o.snapshot, "Snapshot index");
  fcir->add_option("--samples", o.samples, "Boundary samples per face")->check(CLI::Range(2, 100000));

  auto* jpac = app.add_subcommand("jpac", "Run admission control on one snapshot");
  common(jpac);
  jpac->add_option("--snapshot", o.snapshot, "Snapshot index");
  jpac->add_option("--algorithm", o.algorithms, "jpac | jpac-box")->expected(1);

  auto* gp = app.add_subcommand("throughput", "Run throughput maximisation on one snapshot");
  common(gp);
  gp->add_option("--snapshot", o.snapshot, "Snapshot index");
  gp->add_option("--algorithm", o.algorithms, "gp-poly | gp-box")->expected(1);

  auto* sweep = app.add_subcommand("sweep", "Monte Carlo experiment to CSV");
  common(sweep);
  sweep->add_option("--snapshots", o.snapshots, "Snapshots per sweep point");
  sweep->add_option("--algorithm", o.algorithms, "jpac, jpac-box, gp-poly, gp-box")
      ->delimiter(',')
      ->expected(1, 4);
  sweep->add_option("--sweep", o.sweep, "Swept parameter")
      ->check(CLI::IsMember({"none", "su", "d", "alpha"}));
  sweep->add_option("--threads", o.threads, "Worker threads (0: all cores)");
  sweep->add_flag("--timing", o.timing, "Fill the runtime_ms column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (fcir->parsed()) run_fcir(o);
    if (jpac->parsed()) run_single(o, true);
    if (gp->parsed()) run_single(o, false);
    if (sweep->parsed()) run_sweep(o);
  } catch (const CliFailure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  }
  return 0;
}
