#include "crn/throughput_gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "crn/errors.hpp"
#include "crn/outage.hpp"
#include "crn/tpc.hpp"

namespace crn {

namespace {

// Overshoot allowed on a PU power before it counts as unprotected.
constexpr double kCapSlack = 1e-9;

LseTerm term(std::vector<std::pair<int, double>> coef, double offset) {
  return LseTerm{std::move(coef), offset};
}

// Rows w_m . p_su <= 1 describing the primary protection region.
Matrix protection_rows(const NetworkInstance& net, const Protection& protection,
                       const std::vector<int>& sus) {
  const int n = static_cast<int>(sus.size());
  const int b = net.num_pbs();
  std::vector<Vector> rows;
  if (const auto* fcir = std::get_if<FcirPolyhedron>(&protection)) {
    for (int m = 0; m < b; ++m) {
      if (!fcir->row_active(m)) continue;
      if (!(fcir->c[m] > 0.0)) throw InfeasibleProblem("FCIR face leaves no room for SUs");
      Vector w(n);
      for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int q = 0; q < b; ++q) acc += fcir->a(m, q) * net.gain(q, sus[k]);
        w[k] = acc / fcir->c[m];
      }
      rows.push_back(w);
    }
  } else {
    const auto& itl = std::get<BoxItl>(protection).itl;
    if (itl.size() != b) throw DimensionMismatch("ITL vector length");
    for (int m = 0; m < b; ++m) {
      if (!std::isfinite(itl[m])) continue;
      if (!(itl[m] > 0.0)) throw InfeasibleProblem("zero ITL leaves no room for SUs");
      Vector w(n);
      for (int k = 0; k < n; ++k) w[k] = net.gain(m, sus[k]) / itl[m];
      rows.push_back(w);
    }
  }
  Matrix out(static_cast<Eigen::Index>(rows.size()), n);
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(r) = rows[r].transpose();
  return out;
}

}  // namespace

Vector pu_to_su_interference(const NetworkInstance& net, const PowerVector& pu_powers) {
  if (pu_powers.size() != net.num_pu()) throw DimensionMismatch("PU power vector length");
  Vector out = Vector::Zero(net.num_su());
  for (int k = 0; k < net.num_su(); ++k) {
    const int b = net.serving(net.num_pu() + k);
    for (int j = 0; j < net.num_pu(); ++j) out[k] += pu_powers[j] * net.gain(b, j);
  }
  return out;
}

PrimaryCoupling primary_coupling(const NetworkInstance& net) {
  const FcirPolyhedron fcir = build_fcir(net);
  const int np = net.num_pu(), ns = net.num_su(), b = net.num_pbs();
  // PU j power = share_j / h_jj * [A (N + I_sp)]_{b_j}, I_sp = G p_su.
  Matrix g(b, ns);
  for (int m = 0; m < b; ++m)
    for (int k = 0; k < ns; ++k) g(m, k) = net.gain(m, np + k);
  const Vector phi0 = fcir.a * fcir.noise;
  const Matrix phi_per_su = fcir.a * g;
  Vector pu_base(np);
  Matrix pu_per_su(np, ns);
  for (int j = 0; j < np; ++j) {
    const double gamma = net.target_sinr()[j];
    const double k = gamma / (gamma + 1.0) / net.own_gain(j);
    pu_base[j] = k * phi0[net.serving(j)];
    pu_per_su.row(j) = k * phi_per_su.row(net.serving(j));
  }
  PrimaryCoupling out;
  out.base = pu_to_su_interference(net, pu_base);
  out.per_su.resize(ns, ns);
  for (int k = 0; k < ns; ++k) {
    const int r = net.serving(np + k);
    for (int q = 0; q < ns; ++q) {
      double acc = 0.0;
      for (int j = 0; j < np; ++j) acc += net.gain(r, j) * pu_per_su(j, q);
      out.per_su(k, q) = acc;
    }
  }
  return out;
}

Vector coupled_su_sinr(const NetworkInstance& net, const PrimaryCoupling& coupling,
                       const Vector& p_su) {
  const int np = net.num_pu(), ns = net.num_su();
  if (p_su.size() != ns) throw DimensionMismatch("SU power vector length");
  const Vector from_pus = coupling.base + coupling.per_su * p_su;
  Vector gamma(ns);
  for (int k = 0; k < ns; ++k) {
    const int i = np + k;
    const int r = net.serving(i);
    double interference = from_pus[k] + net.noise(r);
    for (int q = 0; q < ns; ++q)
      if (q != k) interference += net.gain(r, np + q) * p_su[q];
    gamma[k] = net.own_gain(i) * p_su[k] / interference;
  }
  return gamma;
}

Condensation condense(const Vector& gamma) {
  Condensation out;
  out.lambda.resize(gamma.size());
  for (Eigen::Index i = 0; i < gamma.size(); ++i) {
    if (!(gamma[i] > 0.0) || !std::isfinite(gamma[i]))
      throw DegenerateGamma("expansion point needs strictly positive SINRs");
    out.lambda[i] = gamma[i] / (gamma[i] + 1.0);
    out.log_c += std::log1p(gamma[i]) - out.lambda[i] * std::log(gamma[i]);
  }
  out.c = std::exp(out.log_c);
  return out;
}

GpProblem make_gp_problem(const NetworkInstance& net, const Protection& protection) {
  GpProblem prob;
  prob.sus = net.su_indices();
  prob.coupling = primary_coupling(net);
  const int n = prob.num_su();
  const int np = net.num_pu();
  auto x = [](int k) { return k; };
  auto y = [n](int k) { return n + k; };
  ConvexProgram& prog = prob.program;
  prog.num_vars = 2 * n;
  prog.objective = Vector::Zero(2 * n);

  const Matrix rows = protection_rows(net, protection, prob.sus);
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    LseConstraint c;
    for (int k = 0; k < n; ++k) c.terms.push_back(term({{x(k), 1.0}}, std::log(rows(r, k))));
    prog.constraints.push_back(std::move(c));
  }
  for (int k = 0; k < n; ++k) {
    const int i = prob.sus[k];
    prog.constraints.push_back({{term({{x(k), 1.0}}, -std::log(net.p_max()[i]))}});
    prog.constraints.push_back({{term({{y(k), -1.0}}, std::log(net.target_sinr()[i]))}});
  }
  // gamma_k (sum_j coef_j p_j + const) / (h_kk p_k) <= 1 with the PU term
  // folded in; the j = k coefficient yields a pure gamma_k monomial.
  for (int k = 0; k < n; ++k) {
    const int i = prob.sus[k];
    const int r = net.serving(i);
    const double own = net.own_gain(i);
    LseConstraint c;
    for (int q = 0; q < n; ++q) {
      double coef = prob.coupling.per_su(k, q);
      if (q != k) coef += net.gain(r, np + q);
      if (coef <= 0.0) continue;
      if (q == k) c.terms.push_back(term({{y(k), 1.0}}, std::log(coef / own)));
      else c.terms.push_back(term({{y(k), 1.0}, {x(q), 1.0}, {x(k), -1.0}}, std::log(coef / own)));
    }
    const double fixed = prob.coupling.base[k] + net.noise(r);
    c.terms.push_back(term({{y(k), 1.0}, {x(k), -1.0}}, std::log(fixed / own)));
    prog.constraints.push_back(std::move(c));
  }
  return prob;
}

GpIterate solve_inner(const NetworkInstance& net, const GpProblem& problem,
                      const Condensation& cond, const Vector& z_start,
                      const BarrierOptions& opts, Vector* z_out) {
  const int n = problem.num_su();
  if (cond.lambda.size() != n) throw DimensionMismatch("lambda length");
  ConvexProgram prog = problem.program;
  prog.objective.setZero(2 * n);
  // maximize log c + lambda . log gamma
  for (int k = 0; k < n; ++k) prog.objective[n + k] = -cond.lambda[k];
  const BarrierResult res = solve_barrier(prog, z_start, opts);
  GpIterate it;
  it.p = res.z.head(n).array().exp();
  it.gamma = coupled_su_sinr(net, problem.coupling, it.p);
  it.lambda = cond.lambda;
  it.c = cond.c;
  it.objective = it.gamma.array().log1p().sum();
  it.stalled = res.stalled;
  it.gap = res.gap;
  if (z_out) *z_out = res.z;
  return it;
}

GpRun run_algorithm2(const NetworkInstance& net, const Protection& protection,
                     const GpOptions& opts) {
  if (!is_sinr_feasible(net, net.target_sinr()))
    throw FeasibilityRequired("PUs and SUs cannot all reach their targets");
  const GpProblem problem = make_gp_problem(net, protection);
  const int n = problem.num_su();
  const int np = net.num_pu();

  GpRun run;
  if (n == 0) {
    const TpcResult tpc = run_tpc(net, std::vector<bool>(net.num_users(), true));
    run.p_full = tpc.p_stationary;
    run.final.p = Vector::Zero(0);
    run.final.gamma = Vector::Zero(0);
    run.objective_trace.push_back(0.0);
    return run;
  }

  // Start from the target-tracking fixed point, nudged into the interior.
  const TpcResult tpc = run_tpc(net, std::vector<bool>(net.num_users(), true));
  Vector z0(2 * n);
  for (int k = 0; k < n; ++k) {
    z0[k] = std::log(tpc.p_stationary[problem.sus[k]]);
    z0[n + k] = std::log(net.target_sinr()[problem.sus[k]]);
  }
  const auto interior = find_strictly_feasible(problem.program, z0, 1e-9, opts.barrier);
  if (!interior) throw InfeasibleProblem("GP constraint set has no strict interior");

  Vector z = *interior;
  GpIterate current;
  current.p = z.head(n).array().exp();
  current.gamma = coupled_su_sinr(net, problem.coupling, current.p);
  current.objective = current.gamma.array().log1p().sum();
  run.objective_trace.push_back(current.objective);

  for (int outer = 1; outer <= opts.max_outer; ++outer) {
    const Condensation cond = condense(current.gamma);
    current.lambda = cond.lambda;
    current.c = cond.c;
    Vector z_next;
    GpIterate next = solve_inner(net, problem, cond, z, opts.barrier, &z_next);
    run.outer_iterations = outer;
    run.stalled = run.stalled || next.stalled;
    // The tangent bound makes the true objective nondecreasing up to the
    // inner solver's duality gap; never step to a worse point.
    if (!(next.objective >= current.objective)) break;
    const double gain = next.objective - current.objective;
    current = std::move(next);
    z = std::move(z_next);
    run.objective_trace.push_back(current.objective);
    if (gain < opts.tol) break;
  }
  const Condensation cond = condense(current.gamma);
  current.lambda = cond.lambda;
  current.c = cond.c;
  run.final = current;

  // Coupled operating point: PUs at the powers that hold their targets.
  run.p_full = PowerVector::Zero(net.num_users());
  for (int k = 0; k < n; ++k) run.p_full[problem.sus[k]] = current.p[k];
  const Vector i_sp = cognitive_interference(net, run.p_full);
  const PowerVector pu = pu_powers_from_interference(net, net.target_sinr().head(np), i_sp);
  int unprotected = 0;
  for (int j = 0; j < np; ++j) {
    run.p_full[j] = pu[j];
    if (pu[j] > net.p_max()[j] * (1.0 + kCapSlack) || pu[j] < 0.0) ++unprotected;
  }
  run.pu_outage_ratio = np == 0 ? 0.0 : static_cast<double>(unprotected) / np;
  return run;
}

}  // namespace crn
