#pragma once

#include <variant>
#include <vector>

#include "crn/barrier_solver.hpp"
#include "crn/fir_geometry.hpp"

namespace crn {

// Fixed per-PBS interference limits replacing the polyhedron.
struct BoxItl {
  Vector itl;
};

using Protection = std::variant<FcirPolyhedron, BoxItl>;

// PU-to-SU interference as an affine function of SU powers. PUs hold their
// targets, so their powers follow the cognitive interference through the
// Phi-linear system; each SU's receiver then sees base + per_su * p_su.
struct PrimaryCoupling {
  Vector base;    // indexed by SU (0..num_su-1)
  Matrix per_su;  // num_su x num_su
};

// Successive-GP subproblem in log variables z = [log p_su, log gamma_su].
struct GpProblem {
  std::vector<int> sus;  // user indices
  PrimaryCoupling coupling;
  ConvexProgram program;  // objective left zero; filled per outer step
  int num_su() const { return static_cast<int>(sus.size()); }
};

struct GpIterate {
  Vector p;        // SU powers (W)
  Vector gamma;    // SU SINRs at p under the coupled model
  Vector lambda;   // gamma / (gamma + 1) at the expansion point
  double c = 0.0;  // prod (1 + gamma) / gamma^lambda
  double objective = 0.0;  // sum log(1 + gamma), nats
  bool stalled = false;
  double gap = 0.0;
};

struct GpOptions {
  double tol = 1e-6;
  int max_outer = 50;
  BarrierOptions barrier;
};

struct GpRun {
  GpIterate final;
  std::vector<double> objective_trace;  // one entry per accepted iterate
  PowerVector p_full;                   // PU powers from the coupled model + SU powers
  double pu_outage_ratio = 0.0;
  int outer_iterations = 0;
  bool stalled = false;
};

// component k = sum over PUs j of p_j h_{b_k j}, for SU k.
Vector pu_to_su_interference(const NetworkInstance& net, const PowerVector& pu_powers);

PrimaryCoupling primary_coupling(const NetworkInstance& net);

// SU SINRs under the coupled model at SU power vector p_su.
Vector coupled_su_sinr(const NetworkInstance& net, const PrimaryCoupling& coupling,
                       const Vector& p_su);

struct Condensation {
  Vector lambda;
  double c = 0.0;
  double log_c = 0.0;
};

// lambda_i = gamma_i / (gamma_i + 1), c = prod (1 + gamma_i) / gamma_i^lambda_i.
Condensation condense(const Vector& gamma);

GpProblem make_gp_problem(const NetworkInstance& net, const Protection& protection);

// Maximizes c * prod gamma^lambda over the GP constraint set from a strictly
// feasible log-space start.
GpIterate solve_inner(const NetworkInstance& net, const GpProblem& problem,
                      const Condensation& cond, const Vector& z_start,
                      const BarrierOptions& opts = {}, Vector* z_out = nullptr);

GpRun run_algorithm2(const NetworkInstance& net, const Protection& protection,
                     const GpOptions& opts = {});

}  // namespace crn
