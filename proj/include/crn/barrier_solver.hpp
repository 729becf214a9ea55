#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "crn/types.hpp"

namespace crn {

// Convex program in log-sum-exp form:
//   minimize  objective . z
//   s.t.      log sum_t exp(a_t . z + b_t) <= 0   for every constraint
// A single-term constraint is an affine inequality.
struct LseTerm {
  std::vector<std::pair<int, double>> coef;  // sparse a_t
  double offset = 0.0;                       // b_t
};

struct LseConstraint {
  std::vector<LseTerm> terms;
};

struct ConvexProgram {
  int num_vars = 0;
  Vector objective;
  std::vector<LseConstraint> constraints;
};

struct BarrierOptions {
  double gap_tol = 1e-10;  // stop once (#constraints)/t falls below this
  int max_newton = 500;
  double t0 = 1.0;
  double mu = 10.0;
};

struct BarrierResult {
  Vector z;
  double objective = 0.0;
  double gap = 0.0;
  int newton_steps = 0;
  bool stalled = false;
};

// Value and gradient of a single constraint at z.
double lse_value(const LseConstraint& c, const Vector& z, Vector* grad = nullptr,
                 Matrix* hess = nullptr);

// Log-barrier path following with damped Newton centering. `start` must be
// strictly feasible.
BarrierResult solve_barrier(const ConvexProgram& prog, const Vector& start,
                            const BarrierOptions& opts = {});

// Phase I: minimize s subject to f_k(z) <= s. Returns a point with every
// f_k(z) < -margin, or nullopt when the minimum is not below -margin.
std::optional<Vector> find_strictly_feasible(const ConvexProgram& prog, const Vector& guess,
                                             double margin = 1e-6,
                                             const BarrierOptions& opts = {});

}  // namespace crn
