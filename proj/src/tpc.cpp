#include "crn/tpc.hpp"

#include <algorithm>
#include <optional>

#include "crn/errors.hpp"

namespace crn {

namespace {

void check_inputs(const NetworkInstance& net, const PowerVector& p, const std::vector<bool>& active) {
  if (p.size() != net.num_users()) throw DimensionMismatch("power vector length");
  if (static_cast<int>(active.size()) != net.num_users())
    throw DimensionMismatch("active mask length");
}

// Exact stationary point for a fixed capped set: uncapped active users sit at
// their targets, capped ones at p_max. Returns nullopt if that assignment is
// not a fixed point of tpc_step.
std::optional<PowerVector> stationary_for_caps(const NetworkInstance& net,
                                               const std::vector<bool>& active,
                                               const std::vector<bool>& capped) {
  const int m = net.num_users();
  std::vector<int> free_users;
  PowerVector p = PowerVector::Zero(m);
  for (int i = 0; i < m; ++i) {
    if (!active[i]) continue;
    if (capped[i]) p[i] = net.p_max()[i];
    else free_users.push_back(i);
  }
  const int n = static_cast<int>(free_users.size());
  if (n > 0) {
    // (I - F) x = u with the capped users folded into u.
    Matrix a = Matrix::Identity(n, n);
    Vector u(n);
    for (int r = 0; r < n; ++r) {
      const int i = free_users[r];
      const int b = net.serving(i);
      const double k = net.target_sinr()[i] / net.own_gain(i);
      double fixed = net.noise(b);
      for (int j = 0; j < m; ++j)
        if (j != i && capped[j] && active[j]) fixed += net.gain(b, j) * p[j];
      u[r] = k * fixed;
      for (int c = 0; c < n; ++c)
        if (c != r) a(r, c) = -k * net.gain(b, free_users[c]);
    }
    const Vector x = a.partialPivLu().solve(u);
    for (int r = 0; r < n; ++r) {
      const int i = free_users[r];
      if (!(x[r] >= 0.0) || x[r] > net.p_max()[i]) return std::nullopt;
      p[i] = x[r];
    }
  }
  // Capped users must demand at least p_max at this point.
  const PowerVector next = tpc_step(net, p, active);
  for (int i = 0; i < m; ++i) {
    if (!active[i]) continue;
    const double scale = std::max(p[i], net.p_max()[i] * 1e-15);
    if (std::abs(next[i] - p[i]) > 1e-9 * scale) return std::nullopt;
  }
  return p;
}

std::vector<bool> supported_users(const NetworkInstance& net, const PowerVector& p,
                                  const std::vector<bool>& active) {
  const SinrVector gamma = sinr_of(net, p);
  std::vector<bool> out(net.num_users(), false);
  for (int i = 0; i < net.num_users(); ++i)
    out[i] = active[i] && meets_target(gamma[i], net.target_sinr()[i]);
  return out;
}

}  // namespace

std::vector<bool> active_mask(const NetworkInstance& net, std::span<const int> users) {
  std::vector<bool> mask(net.num_users(), false);
  for (int i : users) {
    if (i < 0 || i >= net.num_users()) throw DimensionMismatch("user index out of range");
    mask[i] = true;
  }
  return mask;
}

PowerVector tpc_step(const NetworkInstance& net, const PowerVector& p,
                     const std::vector<bool>& active) {
  check_inputs(net, p, active);
  const Vector received = net.gains() * p;
  PowerVector next = PowerVector::Zero(net.num_users());
  for (int i = 0; i < net.num_users(); ++i) {
    if (!active[i]) continue;
    const int b = net.serving(i);
    const double own = net.own_gain(i);
    const double interference = std::max(received[b] - own * p[i], 0.0);
    const double required = net.target_sinr()[i] * (interference + net.noise(b)) / own;
    next[i] = std::min(net.p_max()[i], required);
  }
  return next;
}

TpcResult run_tpc(const NetworkInstance& net, const std::vector<bool>& active,
                  const PowerVector& p0, const TpcOptions& opts) {
  check_inputs(net, p0, active);
  if (!(opts.tol > 0.0)) throw DimensionMismatch("tol must be positive");
  TpcResult res;
  PowerVector p = p0;
  for (int i = 0; i < net.num_users(); ++i) {
    if (!active[i]) p[i] = 0.0;
    else p[i] = std::clamp(p[i], 0.0, net.p_max()[i]);
  }
  std::vector<bool> capped(net.num_users(), false);
  std::vector<bool> last_attempt;
  for (int it = 1; it <= opts.max_iter; ++it) {
    PowerVector next = tpc_step(net, p, active);
    double worst = 0.0;
    for (int i = 0; i < net.num_users(); ++i) {
      if (!active[i]) continue;
      const double scale = std::max(next[i], net.p_max()[i] * 1e-15);
      worst = std::max(worst, std::abs(next[i] - p[i]) / scale);
      capped[i] = next[i] >= net.p_max()[i];
    }
    p = std::move(next);
    res.iterations = it;
    if (worst < opts.tol) {
      res.converged = true;
      break;
    }
    if (opts.polish && (it % 32 == 0) && capped != last_attempt) {
      last_attempt = capped;
      if (auto exact = stationary_for_caps(net, active, capped)) {
        p = std::move(*exact);
        res.converged = true;
        break;
      }
    }
  }
  if (opts.polish && res.converged) {
    if (auto exact = stationary_for_caps(net, active, capped)) p = std::move(*exact);
  }
  res.p_stationary = std::move(p);
  res.supported = supported_users(net, res.p_stationary, active);
  return res;
}

TpcResult run_tpc(const NetworkInstance& net, const std::vector<bool>& active,
                  const TpcOptions& opts) {
  return run_tpc(net, active, PowerVector::Zero(net.num_users()), opts);
}

}  // namespace crn
