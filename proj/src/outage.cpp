#include "crn/outage.hpp"

namespace crn {

double outage_ratio(const NetworkInstance& net, const PowerVector& p, Tier tier) {
  const int first = tier == Tier::kPrimary ? 0 : net.num_pu();
  const int count = tier == Tier::kPrimary ? net.num_pu() : net.num_su();
  if (count == 0) return 0.0;
  const SinrVector gamma = sinr_of(net, p);
  int failed = 0;
  for (int i = first; i < first + count; ++i)
    if (!meets_target(gamma[i], net.target_sinr()[i])) ++failed;
  return static_cast<double>(failed) / count;
}

}  // namespace crn
