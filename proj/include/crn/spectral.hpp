#pragma once

#include "crn/types.hpp"

namespace crn {

// Collatz-Wielandt bracket on the Perron root of a nonnegative square matrix,
// refined by power iteration on (F + I).
struct SpectralEstimate {
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  int iterations = 0;
};

SpectralEstimate spectral_radius(const Matrix& nonnegative, double tol = 1e-10,
                                 int max_iter = 10000);

// True when rho(F) < 1 - margin, decided by the M-matrix pivot test.
bool spectral_radius_below_one(const Matrix& nonnegative, double margin = 1e-9);

}  // namespace crn
