#include "crn/barrier_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace crn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log(-f_k(z)) per constraint; empty when z is not strictly feasible.
std::vector<double> slack_logs(const ConvexProgram& prog, const Vector& z) {
  std::vector<double> out;
  out.reserve(prog.constraints.size());
  for (const auto& c : prog.constraints) {
    const double f = lse_value(c, z);
    if (!(f < 0.0)) return {};
    out.push_back(std::log(-f));
  }
  return out;
}

// Change in t * c.z - sum log(-f_k) between two points, summed term by term
// so large t does not swamp the barrier part.
double merit_change(const ConvexProgram& prog, double t, const Vector& dz,
                    const std::vector<double>& from, const std::vector<double>& to) {
  double barrier = 0.0;
  for (std::size_t k = 0; k < from.size(); ++k) barrier -= to[k] - from[k];
  return t * prog.objective.dot(dz) + barrier;
}

struct NewtonSystem {
  Vector grad;
  Matrix hess;
};

NewtonSystem assemble(const ConvexProgram& prog, double t, const Vector& z) {
  const int n = prog.num_vars;
  NewtonSystem sys{t * prog.objective, Matrix::Zero(n, n)};
  Vector g(n);
  Matrix h(n, n);
  for (const auto& c : prog.constraints) {
    const double f = lse_value(c, z, &g, &h);
    const double inv = -1.0 / f;
    sys.grad += inv * g;
    sys.hess += inv * h + (inv * inv) * g * g.transpose();
  }
  return sys;
}

// Centers at fixed t. Returns false when the Newton budget runs out.
bool center(const ConvexProgram& prog, double t, Vector& z, int& steps, int max_steps) {
  const int n = prog.num_vars;
  std::vector<double> logs = slack_logs(prog, z);
  while (steps < max_steps) {
    NewtonSystem sys = assemble(prog, t, z);
    const double scale = std::max(1.0, sys.hess.diagonal().cwiseAbs().maxCoeff());
    Eigen::LDLT<Matrix> ldlt(sys.hess);
    Vector dz = ldlt.solve(-sys.grad);
    if (ldlt.info() != Eigen::Success || !dz.allFinite() || sys.grad.dot(dz) >= 0.0) {
      Matrix reg = sys.hess + 1e-10 * scale * Matrix::Identity(n, n);
      dz = reg.ldlt().solve(-sys.grad);
    }
    ++steps;
    const double decrement = -sys.grad.dot(dz);
    if (!(decrement > 1e-12)) return true;
    double s = 1.0;
    bool moved = false;
    for (int k = 0; k < 60; ++k, s *= 0.5) {
      const Vector step = s * dz;
      std::vector<double> trial_logs = slack_logs(prog, z + step);
      if (trial_logs.empty()) continue;
      if (merit_change(prog, t, step, logs, trial_logs) <= -0.25 * s * decrement) {
        z += step;
        logs = std::move(trial_logs);
        moved = true;
        break;
      }
    }
    if (!moved) return true;  // no further progress at machine precision
    if (s * dz.cwiseAbs().maxCoeff() <= 1e-13 * (1.0 + z.cwiseAbs().maxCoeff())) return true;
  }
  return false;
}

}  // namespace

double lse_value(const LseConstraint& c, const Vector& z, Vector* grad, Matrix* hess) {
  double top = -kInf;
  std::vector<double> exps(c.terms.size());
  for (std::size_t k = 0; k < c.terms.size(); ++k) {
    double v = c.terms[k].offset;
    for (const auto& [idx, a] : c.terms[k].coef) v += a * z[idx];
    exps[k] = v;
    top = std::max(top, v);
  }
  double sum = 0.0;
  for (double& e : exps) {
    e = std::exp(e - top);
    sum += e;
  }
  if (grad) {
    grad->setZero(z.size());
    for (std::size_t k = 0; k < c.terms.size(); ++k) {
      const double w = exps[k] / sum;
      for (const auto& [idx, a] : c.terms[k].coef) (*grad)[idx] += w * a;
    }
    if (hess) {
      // sum_t w_t a_t a_t^T - g g^T
      hess->setZero(z.size(), z.size());
      for (std::size_t k = 0; k < c.terms.size(); ++k) {
        const double w = exps[k] / sum;
        for (const auto& [i, ai] : c.terms[k].coef)
          for (const auto& [j, aj] : c.terms[k].coef) (*hess)(i, j) += w * ai * aj;
      }
      *hess -= (*grad) * grad->transpose();
    }
  }
  return top + std::log(sum);
}

BarrierResult solve_barrier(const ConvexProgram& prog, const Vector& start,
                            const BarrierOptions& opts) {
  BarrierResult res;
  res.z = start;
  const double m = static_cast<double>(prog.constraints.size());
  double t = opts.t0;
  for (;;) {
    if (!center(prog, t, res.z, res.newton_steps, opts.max_newton)) {
      res.stalled = true;
      break;
    }
    if (m / t < opts.gap_tol) break;
    t *= opts.mu;
  }
  res.gap = m / t;
  res.objective = prog.objective.dot(res.z);
  return res;
}

std::optional<Vector> find_strictly_feasible(const ConvexProgram& prog, const Vector& guess,
                                             double margin, const BarrierOptions& opts) {
  const int n = prog.num_vars;
  double worst = -kInf;
  for (const auto& c : prog.constraints) worst = std::max(worst, lse_value(c, guess));
  if (worst < -margin) return guess;

  // Augmented variable s sits at index n; every term gets a -1 on s.
  ConvexProgram aug;
  aug.num_vars = n + 1;
  aug.objective = Vector::Zero(n + 1);
  aug.objective[n] = 1.0;
  aug.constraints = prog.constraints;
  for (auto& c : aug.constraints)
    for (auto& term : c.terms) term.coef.emplace_back(n, -1.0);
  // Keeps the phase-I problem bounded below.
  LseConstraint floor;
  floor.terms.push_back({{{n, -1.0}}, -1.0});
  aug.constraints.push_back(floor);

  Vector z(n + 1);
  z.head(n) = guess;
  z[n] = worst + 1.0;
  double t = opts.t0;
  int steps = 0;
  const double m = static_cast<double>(aug.constraints.size());
  for (;;) {
    const bool ok = center(aug, t, z, steps, opts.max_newton);
    if (z[n] < -margin) return Vector(z.head(n));
    if (!ok || m / t < opts.gap_tol) break;
    t *= opts.mu;
  }
  return std::nullopt;
}

}  // namespace crn
