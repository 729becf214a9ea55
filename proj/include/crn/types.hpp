#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

namespace crn {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Per-user transmit powers in watts.
using PowerVector = Vector;
// Per-user SINRs, linear scale.
using SinrVector = Vector;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

}  // namespace crn
