#pragma once

#include <span>
#include <vector>

#include "crn/network.hpp"

namespace crn {

struct TpcOptions {
  // Stop when every active power changes by less than tol relative to itself.
  double tol = 1e-9;
  int max_iter = 100000;
  // Once the capped set settles, solve for the exact stationary point of the
  // same map and accept it if it is self-consistent.
  bool polish = true;
};

struct TpcResult {
  PowerVector p_stationary;
  int iterations = 0;
  bool converged = false;
  std::vector<bool> supported;  // per user; inactive users are false
};

// Active-user mask from an explicit list of user indices.
std::vector<bool> active_mask(const NetworkInstance& net, std::span<const int> users);

// One synchronous constrained target-tracking update:
// p_i <- min(p_max_i, target_i * (interference_i + noise) / h_{b_i i}).
PowerVector tpc_step(const NetworkInstance& net, const PowerVector& p,
                     const std::vector<bool>& active);

TpcResult run_tpc(const NetworkInstance& net, const std::vector<bool>& active,
                  const PowerVector& p0, const TpcOptions& opts = {});
TpcResult run_tpc(const NetworkInstance& net, const std::vector<bool>& active,
                  const TpcOptions& opts = {});

}  // namespace crn
