#pragma once

#include <vector>

#include "crn/network.hpp"

namespace crn {

// Slack allowed on halfspace membership tests, relative to the magnitudes involved.
inline constexpr double kMembershipTolerance = 1e-12;

// Box of tolerable total interference (own-cell users excluded) per PBS.
// Empty cells carry +inf; a negative limit means the cell cannot be
// protected even without outside interference.
struct FtirBox {
  Vector titl;
};

// Feasible cognitive-interference region { I >= 0 : a * I <= c }.
// Rows of empty cells have c = +inf and are inactive.
struct FcirPolyhedron {
  Matrix a;
  Vector c;
  Vector phi_max;
  Vector noise;

  int dim() const { return static_cast<int>(c.size()); }
  bool row_active(int m) const { return std::isfinite(c[m]); }
};

struct InfeasibilityReport {
  Vector s_inf;
  Vector dist;
  std::vector<int> violated;
};

// H(gamma_p) over the PBSs. gamma_p is indexed by PU (length num_pu).
Matrix build_h_matrix(const NetworkInstance& net, const SinrVector& gamma_p);

FcirPolyhedron build_fcir(const NetworkInstance& net, const SinrVector& gamma_p);
FcirPolyhedron build_fcir(const NetworkInstance& net);  // at PU targets

FtirBox build_ftir(const NetworkInstance& net, const SinrVector& gamma_p);

// PU powers that hold gamma_p exactly under cognitive interference i_sp.
// Result is indexed by PU.
PowerVector pu_powers_from_interference(const NetworkInstance& net,
                                        const SinrVector& gamma_p, const Vector& i_sp);

bool fcir_contains(const FcirPolyhedron& fcir, const Vector& i_sp);

InfeasibilityReport infeasibility_report(const FcirPolyhedron& fcir, const Vector& i_sp);

// Signed distance of i_sp to the face a_m . I = c_m.
double face_distance(const FcirPolyhedron& fcir, int m, const Vector& i_sp);

// Fixed ITL box alpha * min_n c_n / a_nm.
Vector baseline_itl(const FcirPolyhedron& fcir, double alpha);

// a * corner <= c; a >= 0 makes corner membership equivalent to containment.
bool box_inside_fcir(const FcirPolyhedron& fcir, const Vector& itl);

// Largest alpha for which baseline_itl(fcir, alpha) stays inside the region.
double max_inscribed_alpha(const FcirPolyhedron& fcir);

// Axis intercepts min_n c_n / a_nm (the alpha = 1 baseline corner).
Vector axis_intercepts(const FcirPolyhedron& fcir);

}  // namespace crn
