#pragma once

#include "crn/network.hpp"

namespace crn {

enum class Tier { kPrimary, kSecondary };

// Fraction of the tier's users below target; 0 for an empty tier.
double outage_ratio(const NetworkInstance& net, const PowerVector& p, Tier tier);

}  // namespace crn
