#pragma once

#include <vector>

#include "crn/fir_geometry.hpp"
#include "crn/tpc.hpp"

namespace crn {

enum class RemovalCase { kIntraTier = 1, kPrimaryViolation = 2 };

struct RemovalStep {
  int iteration = 0;
  int removed_su = -1;  // user index
  RemovalCase removal_case = RemovalCase::kIntraTier;
  // Case 2: aggregate signed distance over violated faces after removal.
  // Box variant: excess interference at the most violated PBS. NaN otherwise.
  double score = 0.0;
};

struct JpacOutcome {
  std::vector<int> admitted;  // SU user indices, ascending
  std::vector<RemovalStep> removal_trace;
  PowerVector p_final;
  double pu_outage_ratio = 0.0;
  double su_outage_ratio = 0.0;
  int tpc_phases = 0;
};

struct JpacOptions {
  TpcOptions tpc;
};

// Case 1: among active SUs, the strongest interferer toward the SBS holding the
// most unsupported active SUs. Ties resolve to the lowest index.
int select_removal_case1(const NetworkInstance& net, const PowerVector& p_stationary,
                         const std::vector<int>& active_sus);

// Case 2: the SU whose removal minimizes the summed signed distance to the
// currently violated FCIR faces.
int select_removal_case2(const NetworkInstance& net, const FcirPolyhedron& fcir,
                         const PowerVector& p_stationary, const std::vector<int>& active_sus,
                         double* best_score = nullptr);

JpacOutcome run_jpac(const NetworkInstance& net, const JpacOptions& opts = {});

// Fixed-ITL baseline: same loop, but primary protection is judged against the
// box I_m <= itl_m instead of the polyhedron.
JpacOutcome run_jpac_box(const NetworkInstance& net, const Vector& itl,
                         const JpacOptions& opts = {});

}  // namespace crn
