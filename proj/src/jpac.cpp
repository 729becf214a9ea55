#include "crn/jpac.hpp"

#include <algorithm>
#include <stdexcept>
#include <limits>

#include "crn/errors.hpp"
#include "crn/outage.hpp"

namespace crn {

namespace {

std::vector<int> unsupported_active(const NetworkInstance& net, const PowerVector& p,
                                    const std::vector<int>& active_sus) {
  const SinrVector gamma = sinr_of(net, p);
  std::vector<int> out;
  for (int i : active_sus)
    if (!meets_target(gamma[i], net.target_sinr()[i])) out.push_back(i);
  return out;
}

int strongest_toward(const NetworkInstance& net, const PowerVector& p,
                     const std::vector<int>& active_sus, int station) {
  int best = -1;
  double best_val = -1.0;
  for (int i : active_sus) {
    const double v = p[i] * net.gain(station, i);
    if (v > best_val || (v == best_val && i < best)) {
      best_val = v;
      best = i;
    }
  }
  return best;
}

std::vector<bool> users_mask(const NetworkInstance& net, const std::vector<int>& active_sus) {
  std::vector<bool> mask(net.num_users(), false);
  for (int i = 0; i < net.num_pu(); ++i) mask[i] = true;
  for (int i : active_sus) mask[i] = true;
  return mask;
}

void finish(const NetworkInstance& net, JpacOutcome& out, const std::vector<int>& active,
            const PowerVector& p) {
  out.admitted = active;
  out.p_final = p;
  out.pu_outage_ratio = outage_ratio(net, p, Tier::kPrimary);
  out.su_outage_ratio = outage_ratio(net, p, Tier::kSecondary);
}

void remove_su(std::vector<int>& active, PowerVector& p, int su) {
  active.erase(std::find(active.begin(), active.end(), su));
  p[su] = 0.0;
}

}  // namespace

int select_removal_case1(const NetworkInstance& net, const PowerVector& p_stationary,
                         const std::vector<int>& active_sus) {
  if (active_sus.empty()) throw NoCandidate("no active SU");
  const auto unsupported = unsupported_active(net, p_stationary, active_sus);
  std::vector<int> count(net.num_sbs(), 0);
  for (int i : unsupported) ++count[net.serving(i) - net.num_pbs()];
  // max_element returns the first maximum, i.e. the lowest SBS index.
  const int sbs = net.num_pbs() +
                  static_cast<int>(std::max_element(count.begin(), count.end()) - count.begin());
  return strongest_toward(net, p_stationary, active_sus, sbs);
}

int select_removal_case2(const NetworkInstance& net, const FcirPolyhedron& fcir,
                         const PowerVector& p_stationary, const std::vector<int>& active_sus,
                         double* best_score) {
  if (active_sus.empty()) throw NoCandidate("no active SU");
  const Vector current = cognitive_interference(net, p_stationary, active_sus);
  const auto report = infeasibility_report(fcir, current);
  int best = -1;
  double best_val = std::numeric_limits<double>::infinity();
  Vector reduced(fcir.dim());
  for (int i : active_sus) {
    for (int m = 0; m < fcir.dim(); ++m) reduced[m] = current[m] - p_stationary[i] * net.gain(m, i);
    double total = 0.0;
    for (int m : report.violated) total += face_distance(fcir, m, reduced);
    if (total < best_val || (total == best_val && i < best)) {
      best_val = total;
      best = i;
    }
  }
  if (best_score) *best_score = best_val;
  return best;
}

JpacOutcome run_jpac(const NetworkInstance& net, const JpacOptions& opts) {
  const FcirPolyhedron fcir = build_fcir(net);
  JpacOutcome out;
  std::vector<int> active = net.su_indices();
  PowerVector p = PowerVector::Zero(net.num_users());
  for (int iteration = 1;; ++iteration) {
    const TpcResult tpc = run_tpc(net, users_mask(net, active), p, opts.tpc);
    p = tpc.p_stationary;
    ++out.tpc_phases;
    if (active.empty()) break;
    const Vector interference = cognitive_interference(net, p, active);
    RemovalStep step;
    step.iteration = iteration;
    if (fcir_contains(fcir, interference)) {
      if (unsupported_active(net, p, active).empty()) break;
      step.removal_case = RemovalCase::kIntraTier;
      step.removed_su = select_removal_case1(net, p, active);
      step.score = std::numeric_limits<double>::quiet_NaN();
    } else {
      step.removal_case = RemovalCase::kPrimaryViolation;
      step.removed_su = select_removal_case2(net, fcir, p, active, &step.score);
    }
    out.removal_trace.push_back(step);
    remove_su(active, p, step.removed_su);
  }
  finish(net, out, active, p);
  // Exit certificate: interference inside the region, every active user at target.
  if (!fcir_contains(fcir, cognitive_interference(net, p, active)) || out.pu_outage_ratio != 0.0 ||
      !unsupported_active(net, p, active).empty())
    throw std::logic_error("admission control exit certificate violated");
  return out;
}

JpacOutcome run_jpac_box(const NetworkInstance& net, const Vector& itl, const JpacOptions& opts) {
  if (itl.size() != net.num_pbs()) throw DimensionMismatch("ITL vector length");
  build_fcir(net);  // PU-only feasibility precondition
  JpacOutcome out;
  std::vector<int> active = net.su_indices();
  PowerVector p = PowerVector::Zero(net.num_users());
  for (int iteration = 1;; ++iteration) {
    const TpcResult tpc = run_tpc(net, users_mask(net, active), p, opts.tpc);
    p = tpc.p_stationary;
    ++out.tpc_phases;
    if (active.empty()) break;
    const Vector interference = cognitive_interference(net, p, active);
    int worst_pbs = -1;
    double worst_excess = 0.0;
    for (int m = 0; m < net.num_pbs(); ++m) {
      const double excess = interference[m] - itl[m];
      if (excess > 0.0 && excess > worst_excess) {
        worst_excess = excess;
        worst_pbs = m;
      }
    }
    RemovalStep step;
    step.iteration = iteration;
    if (worst_pbs < 0) {
      if (unsupported_active(net, p, active).empty()) break;
      step.removal_case = RemovalCase::kIntraTier;
      step.removed_su = select_removal_case1(net, p, active);
      step.score = std::numeric_limits<double>::quiet_NaN();
    } else {
      step.removal_case = RemovalCase::kPrimaryViolation;
      step.removed_su = strongest_toward(net, p, active, worst_pbs);
      step.score = worst_excess;
    }
    out.removal_trace.push_back(step);
    remove_su(active, p, step.removed_su);
  }
  finish(net, out, active, p);
  return out;
}

}  // namespace crn
