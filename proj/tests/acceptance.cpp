// Acceptance report: one PASS/FAIL line per primary criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "crn/errors.hpp"
#include "crn/harness.hpp"
#include "crn/jpac.hpp"
#include "crn/throughput_gp.hpp"
#include "crn/tpc.hpp"
#include "support/oracles.hpp"
#include "support/random_instances.hpp"

using namespace crn;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<ScenarioKind> kKinds{ScenarioKind::kTwoPbs, ScenarioKind::kFourCellA,
                                       ScenarioKind::kFourCellB, ScenarioKind::kAdHoc};

std::optional<FcirPolyhedron> try_fcir(const NetworkInstance& net) {
  try {
    return build_fcir(net);
  } catch (const PrimaryInfeasible&) {
    return std::nullopt;
  }
}

Verdict fcir_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int instances = 0, points = 0, disagree = 0, boundary = 0, inside = 0;
  while (instances < 500) {
    testing::RandomShape shape;
    shape.num_pbs = 1 + instances % 3;
    shape.num_sbs = 0;
    shape.max_pu_per_cell = 6 / shape.num_pbs;
    shape.cross_scale = 0.3;
    shape.max_target = 1.0;
    const NetworkInstance net = testing::random_network(rng, shape);
    const auto f = try_fcir(net);
    if (!f) continue;
    ++instances;
    const Vector reach = axis_intercepts(*f);
    for (int k = 0; k < 20; ++k) {
      Vector i(f->dim());
      for (int n = 0; n < f->dim(); ++n) i[n] = 1.3 * u(rng) * reach[n];
      const Vector p = testing::direct_pu_powers(net, i);
      const double worst = (p.cwiseQuotient(net.p_max().head(net.num_pu()))).maxCoeff();
      const bool powers_ok = (p.array() >= 0.0).all() && worst <= 1.0;
      const bool member = fcir_contains(*f, i);
      ++points;
      inside += member;
      if (member != powers_ok) {
        if (std::abs(worst - 1.0) <= 1e-9) ++boundary;
        else ++disagree;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {disagree == 0 && secs < 10.0,
          fmt("%d instances, %d points (%d inside), %d disagreements, %d within 1e-9 of the boundary, %.2f s",
              instances, points, inside, disagree, boundary, secs)};
}

Verdict closed_forms() {
  double worst = 0.0;
  for (double gamma : {0.05, 0.5, 3.0})
    for (double h : {1e-7, 0.3}) {
      NetworkInstance::Params p;
      p.num_pu = 1;
      p.num_pbs = 1;
      p.serving = {0};
      p.gain = Matrix::Constant(1, 1, h);
      p.noise = Vector::Constant(1, h * 1e-3);
      p.p_max = Vector::Constant(1, 0.1);
      p.target_sinr = Vector::Constant(1, gamma);
      const NetworkInstance net(std::move(p));
      const FcirPolyhedron f = build_fcir(net);
      const double expect = 0.1 * h / gamma - h * 1e-3;
      worst = std::max(worst, std::abs(axis_intercepts(f)[0] - expect) / expect);
    }
  NetworkInstance::Params p;
  p.num_pu = 2;
  p.num_pbs = 2;
  p.serving = {0, 1};
  p.gain = Matrix(2, 2);
  p.gain << 1.0, 0.5, 0.5, 1.0;
  p.noise = Vector::Constant(2, 0.1);
  p.p_max = Vector::Constant(2, 1.0);
  p.target_sinr = Vector::Constant(2, 0.5);
  const FcirPolyhedron t2 = build_fcir(NetworkInstance(std::move(p)));
  Matrix a(2, 2);
  a << 1.6, 0.4, 0.4, 1.6;
  const double ea = (t2.a - a).cwiseAbs().maxCoeff();
  const double ec = (t2.c - Vector::Constant(2, 2.8)).cwiseAbs().maxCoeff();
  const double ei = (baseline_itl(t2, 1.0) - Vector::Constant(2, 1.75)).cwiseAbs().maxCoeff();
  return {worst <= 1e-12 && ea <= 1e-12 && ec <= 1e-12 && ei <= 1e-12,
          fmt("single-cell rel err %.1e; T2 |A err| %.1e, |C err| %.1e, |corner err| %.1e", worst, ea,
              ec, ei)};
}

Verdict tpc() {
  std::mt19937_64 rng(1003);
  int done = 0, failures = 0, max_iter = 0;
  double worst_target = 0.0, worst_power = 0.0;
  std::uint64_t seed = 0;
  auto check = [&](const NetworkInstance& net) {
    const PowerVector exact = powers_from_sinr(net, net.target_sinr());
    const TpcResult r = run_tpc(net, std::vector<bool>(net.num_users(), true));
    const SinrVector g = sinr_of(net, r.p_stationary);
    double t = 0.0, pw = 0.0;
    for (int i = 0; i < net.num_users(); ++i) {
      t = std::max(t, std::abs(g[i] - net.target_sinr()[i]) / net.target_sinr()[i]);
      pw = std::max(pw, std::abs(r.p_stationary[i] - exact[i]) / exact[i]);
    }
    worst_target = std::max(worst_target, t);
    worst_power = std::max(worst_power, pw);
    max_iter = std::max(max_iter, r.iterations);
    if (!r.converged || r.iterations > 10000 || t > 1e-6 || pw > 1e-7) ++failures;
    ++done;
  };
  while (done < 100) {
    testing::RandomShape shape;
    shape.num_su = 4;
    shape.cross_scale = 0.3;
    shape.max_target = 1.0;
    const NetworkInstance net = testing::random_network(rng, shape);
    if (is_sinr_feasible(net, net.target_sinr())) check(net);
  }
  ScenarioConfig cfg = default_config(ScenarioKind::kFourCellA);
  cfg.num_pu = 4;
  cfg.num_su = 4;
  while (done < 200) {
    const NetworkInstance net = generate_snapshot(cfg, 5000 + seed++);
    if (is_sinr_feasible(net, net.target_sinr())) check(net);
  }
  return {failures == 0,
          fmt("%d instances (100 abstract, 100 four-cell), worst target err %.1e, worst power err %.1e, "
              "max %d iterations, %d failures",
              done, worst_target, worst_power, max_iter, failures)};
}

ScenarioConfig desk_config(ScenarioKind kind, int su) {
  ScenarioConfig cfg = default_config(kind);
  if (kind == ScenarioKind::kTwoPbs) return cfg;
  cfg.num_su = su;
  if (kind == ScenarioKind::kAdHoc) cfg.num_pu = su;
  return cfg;
}

Verdict jpac_guarantee() {
  std::ostringstream detail;
  bool pass = true;
  int total_gap = 0, total_runs = 0;
  for (ScenarioKind kind : kKinds) {
    const ScenarioConfig cfg = desk_config(kind, 8);
    int runs = 0, skipped = 0, pu_breach = 0, su_miss = 0, over_oracle = 0, gap = 0, removed = 0;
    for (int s = 0; s < 200; ++s) {
      const NetworkInstance net = generate_snapshot(cfg, cfg.seed + s);
      if (!try_fcir(net)) {
        ++skipped;
        continue;
      }
      const JpacOutcome out = run_jpac(net);
      ++runs;
      if (out.pu_outage_ratio != 0.0) ++pu_breach;
      const SinrVector g = sinr_of(net, out.p_final);
      for (int i : out.admitted) su_miss += !meets_target(g[i], net.target_sinr()[i]);
      const int best = testing::exhaustive_admission(net);
      const int got = static_cast<int>(out.admitted.size());
      over_oracle += got > best;
      gap += best - got;
      removed += static_cast<int>(out.removal_trace.size());
    }
    pass &= pu_breach == 0 && su_miss == 0 && over_oracle == 0;
    total_gap += gap;
    total_runs += runs;
    detail << to_string(kind) << ": " << runs << " runs (" << skipped << " PU-infeasible skipped), "
           << pu_breach << " PU breaches, " << su_miss << " admitted SUs off target, " << over_oracle
           << " above oracle, mean gap " << fmt("%.3f", runs ? double(gap) / runs : 0.0) << ", "
           << removed << " removals; ";
  }
  const double mean_gap = total_runs ? double(total_gap) / total_runs : 0.0;
  pass &= mean_gap <= 1.0 && total_runs > 0;
  detail << fmt("overall mean gap %.3f SU", mean_gap);
  return {pass, detail.str()};
}

Verdict box_vs_polyhedron() {
  std::ostringstream detail;
  bool any_box_breach = false, jpac_clean = true, su_direction = true;
  for (ScenarioKind kind : kKinds) {
    const ScenarioConfig cfg = default_config(kind);
    int runs = 0;
    double jpac_pu = 0, jpac_su = 0, small_su = 0, pu1 = 0, pu10 = 0;
    for (int s = 0; s < 200; ++s) {
      const NetworkInstance net = generate_snapshot(cfg, cfg.seed + s);
      const auto f = try_fcir(net);
      if (!f) continue;
      ++runs;
      const JpacOutcome poly = run_jpac(net);
      jpac_pu += poly.pu_outage_ratio;
      jpac_su += poly.su_outage_ratio;
      const double a0 = max_inscribed_alpha(*f) * (1 - 1e-9);
      const Vector inscribed = baseline_itl(*f, std::isfinite(a0) ? a0 : 1.0);
      if (!box_inside_fcir(*f, inscribed)) su_direction = false;
      small_su += run_jpac_box(net, inscribed).su_outage_ratio;
      pu1 += run_jpac_box(net, baseline_itl(*f, 1.0)).pu_outage_ratio;
      pu10 += run_jpac_box(net, baseline_itl(*f, 10.0)).pu_outage_ratio;
    }
    const double n = std::max(runs, 1);
    jpac_clean &= jpac_pu == 0.0;
    any_box_breach |= pu1 > 0.0 || pu10 > 0.0;
    su_direction &= jpac_su / n <= small_su / n + 1e-12;
    detail << to_string(kind) << fmt(" (%d): PU outage jpac %.4f, box a=1 %.4f, a=10 %.4f; SU outage jpac %.4f vs inscribed box %.4f; ",
                                     runs, jpac_pu / n, pu1 / n, pu10 / n, jpac_su / n, small_su / n);
  }
  return {any_box_breach && jpac_clean && su_direction, detail.str()};
}

Verdict successive_gp() {
  int runs = 0, decreases = 0, protection = 0, poly_below_box = 0, refused = 0;
  ScenarioConfig cfg = default_config(ScenarioKind::kFourCellA);
  cfg.num_su = 4;
  GpOptions converged;
  converged.tol = 1e-10;
  converged.max_outer = 200;
  for (std::uint64_t s = 0; runs < 50 && s < 2000; ++s) {
    const NetworkInstance net = generate_snapshot(cfg, 7000 + s);
    const auto f = try_fcir(net);
    if (!f) continue;
    GpRun poly, box;
    try {
      poly = run_algorithm2(net, *f, converged);
      box = run_algorithm2(net, BoxItl{baseline_itl(*f, max_inscribed_alpha(*f) * (1 - 1e-9))},
                           converged);
    } catch (const FeasibilityRequired&) {
      ++refused;
      continue;
    }
    ++runs;
    for (std::size_t k = 1; k < poly.objective_trace.size(); ++k)
      decreases += poly.objective_trace[k] < poly.objective_trace[k - 1];
    for (std::size_t k = 1; k < box.objective_trace.size(); ++k)
      decreases += box.objective_trace[k] < box.objective_trace[k - 1];
    const Vector i = cognitive_interference(net, poly.p_full);
    const Vector pu = testing::direct_pu_powers(net, i);
    bool ok = poly.pu_outage_ratio == 0.0;
    for (int j = 0; j < net.num_pu(); ++j) ok &= pu[j] <= net.p_max()[j] * (1 + 1e-9);
    protection += !ok;
    poly_below_box += poly.final.objective < box.final.objective * (1 - 1e-9);
  }

  int grid_runs = 0, grid_miss = 0;
  double worst_rel = 0.0;
  ScenarioConfig two = default_config(ScenarioKind::kFourCellA);
  two.num_pu = 6;
  two.num_su = 2;
  for (std::uint64_t s = 0; grid_runs < 50 && s < 2000; ++s) {
    const NetworkInstance net = generate_snapshot(two, 9000 + s);
    const auto f = try_fcir(net);
    if (!f) continue;
    GpRun run;
    try {
      run = run_algorithm2(net, *f);
    } catch (const FeasibilityRequired&) {
      continue;
    }
    const double grid = testing::grid_optimum(net);
    if (grid <= 0.0) continue;
    ++grid_runs;
    const double rel = std::abs(run.final.objective - grid) / grid;
    worst_rel = std::max(worst_rel, rel);
    grid_miss += rel > 1e-2;
  }
  return {runs == 50 && decreases == 0 && protection == 0 && poly_below_box == 0 && grid_runs == 50 &&
              grid_miss == 0,
          fmt("%d runs (%d refused as infeasible), %d objective decreases, %d protection failures, "
              "%d snapshots with polyhedron below inscribed box; 2-SU grid: %d instances, %d off by "
              "more than 1e-2, worst rel gap %.2e",
              runs, refused, decreases, protection, poly_below_box, grid_runs, grid_miss, worst_rel)};
}

Verdict determinism() {
  ScenarioConfig cfg = default_config(ScenarioKind::kFourCellA);
  cfg.snapshots = 40;
  SweepSpec sweep;
  sweep.parameter = SweepParameter::kSuCount;
  sweep.values = {5, 10};
  sweep.algorithms = {Algorithm::kJpac, Algorithm::kJpacBox};
  auto csv = [&](int threads) {
    sweep.threads = threads;
    std::ostringstream out;
    write_csv(run_experiment(cfg, sweep), out);
    return out.str();
  };
  const std::string a = csv(1), b = csv(1), c = csv(4);
  return {a == b && a == c, fmt("%zu-byte CSV; repeat identical: %s; 4 threads identical: %s", a.size(),
                                a == b ? "yes" : "no", a == c ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"FCIR equivalence", fcir_equivalence},
      {"Closed-form fixtures", closed_forms},
      {"TPC convergence", tpc},
      {"JPAC guarantee", jpac_guarantee},
      {"Box vs polyhedron", box_vs_polyhedron},
      {"Successive GP", successive_gp},
      {"Determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("%s  %s: %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
