#include "crn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace crn {

namespace {

// Collatz-Wielandt bounds: min over the support of (Fx)_i/x_i <= rho(F) for
// any nonnegative x != 0, and rho(F) <= max_i (Fx)_i/x_i when x > 0.
void collatz_bounds(const Vector& x, const Vector& fx, double& lo, double& hi) {
  lo = std::numeric_limits<double>::infinity();
  hi = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0) {
      const double r = fx[i] / x[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    } else {
      hi = std::numeric_limits<double>::infinity();
    }
  }
  if (!std::isfinite(lo)) lo = 0.0;
}

}  // namespace

SpectralEstimate spectral_radius(const Matrix& f, double tol, int max_iter) {
  SpectralEstimate out;
  const Eigen::Index n = f.rows();
  if (n == 0) return out;
  if (n == 1) {
    out.estimate = out.lower = out.upper = std::abs(f(0, 0));
    return out;
  }
  // (F + I) has a positive diagonal, so positive iterates stay positive and
  // the shifted Perron root dominates every other eigenvalue in modulus.
  Vector x = Vector::Ones(n) / std::sqrt(static_cast<double>(n));
  double lo = 0.0, hi = std::numeric_limits<double>::infinity();
  double prev = -1.0;
  for (int it = 1; it <= max_iter; ++it) {
    Vector fx = f * x;
    double l = 0.0, h = 0.0;
    collatz_bounds(x, fx, l, h);
    lo = std::max(lo, l);
    hi = std::min(hi, h);
    Vector y = fx + x;
    const double norm = y.norm();
    const double est = norm / x.norm() - 1.0;
    out.iterations = it;
    x = y / norm;
    if (hi - lo <= tol * std::max(1.0, hi) ||
        (prev >= 0.0 && std::abs(est - prev) <= tol * std::max(1.0, est))) {
      out.estimate = std::clamp(est, lo, hi);
      break;
    }
    prev = est;
    out.estimate = std::clamp(est, lo, hi);
  }
  out.lower = lo;
  out.upper = hi;
  return out;
}

bool spectral_radius_below_one(const Matrix& f, double margin) {
  const Eigen::Index n = f.rows();
  if (n == 0) return true;
  // rho(F) < s  iff  I - F/s is a nonsingular M-matrix  iff  Gaussian
  // elimination without pivoting meets only positive pivots.
  Matrix g = -f / (1.0 - margin);
  g.diagonal().array() += 1.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double pivot = g(k, k);
    if (!(pivot > 0.0)) return false;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double factor = g(i, k) / pivot;
      if (factor == 0.0) continue;
      g.row(i).tail(n - k) -= factor * g.row(k).tail(n - k);
    }
  }
  return true;
}

}  // namespace crn
