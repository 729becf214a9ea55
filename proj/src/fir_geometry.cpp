#include "crn/fir_geometry.hpp"

#include <algorithm>
#include <limits>

#include "crn/errors.hpp"
#include "crn/spectral.hpp"

namespace crn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_gamma_p(const NetworkInstance& net, const SinrVector& gamma_p) {
  if (gamma_p.size() != net.num_pu()) throw DimensionMismatch("gamma_p length must equal num_pu");
  for (int i = 0; i < net.num_pu(); ++i)
    if (!(gamma_p[i] >= 0.0) || !std::isfinite(gamma_p[i]))
      throw DimensionMismatch("gamma_p entries must be finite and nonnegative");
}

double share(double gamma) { return gamma / (gamma + 1.0); }

// Phi_max_m = min over PUs of cell m of p_max h (gamma + 1) / gamma.
Vector phi_max(const NetworkInstance& net, const SinrVector& gamma_p) {
  Vector out = Vector::Constant(net.num_pbs(), kInf);
  for (int i = 0; i < net.num_pu(); ++i) {
    const int m = net.serving(i);
    if (gamma_p[i] <= 0.0) continue;
    out[m] = std::min(out[m], net.p_max()[i] * net.gain(m, i) * (gamma_p[i] + 1.0) / gamma_p[i]);
  }
  return out;
}

Eigen::PartialPivLU<Matrix> factor_primary(const NetworkInstance& net, const SinrVector& gamma_p) {
  const Matrix h = build_h_matrix(net, gamma_p);
  if (!spectral_radius_below_one(h))
    throw PrimaryInfeasible("spectral radius of H(gamma_p) >= 1");
  const int b = net.num_pbs();
  return (Matrix::Identity(b, b) - h).partialPivLu();
}

}  // namespace

Matrix build_h_matrix(const NetworkInstance& net, const SinrVector& gamma_p) {
  check_gamma_p(net, gamma_p);
  const int b = net.num_pbs();
  Matrix h = Matrix::Zero(b, b);
  for (int i = 0; i < net.num_pu(); ++i) {
    const int n = net.serving(i);
    const double s = share(gamma_p[i]);
    for (int m = 0; m < b; ++m)
      h(m, n) += (m == n) ? s : net.gain(m, i) / net.gain(n, i) * s;
  }
  return h;
}

FcirPolyhedron build_fcir(const NetworkInstance& net, const SinrVector& gamma_p) {
  const auto lu = factor_primary(net, gamma_p);
  const int b = net.num_pbs();
  FcirPolyhedron out;
  out.a = lu.solve(Matrix::Identity(b, b));
  out.noise = net.noise().head(b);
  out.phi_max = phi_max(net, gamma_p);
  const Vector base = out.a * out.noise;
  out.c.resize(b);
  for (int m = 0; m < b; ++m) {
    out.c[m] = std::isfinite(out.phi_max[m]) ? out.phi_max[m] - base[m] : kInf;
    if (out.c[m] < 0.0)
      throw PrimaryInfeasible("PU-only system cannot protect cell " + std::to_string(m));
  }
  return out;
}

FcirPolyhedron build_fcir(const NetworkInstance& net) {
  return build_fcir(net, net.target_sinr().head(net.num_pu()));
}

FtirBox build_ftir(const NetworkInstance& net, const SinrVector& gamma_p) {
  check_gamma_p(net, gamma_p);
  const int b = net.num_pbs();
  const Vector pm = phi_max(net, gamma_p);
  Vector load = Vector::Zero(b);
  for (int i = 0; i < net.num_pu(); ++i) load[net.serving(i)] += share(gamma_p[i]);
  FtirBox box;
  box.titl.resize(b);
  for (int m = 0; m < b; ++m)
    box.titl[m] = std::isfinite(pm[m]) ? pm[m] * (1.0 - load[m]) - net.noise(m) : kInf;
  return box;
}

PowerVector pu_powers_from_interference(const NetworkInstance& net, const SinrVector& gamma_p,
                                        const Vector& i_sp) {
  check_gamma_p(net, gamma_p);
  if (i_sp.size() != net.num_pbs()) throw DimensionMismatch("interference vector length");
  const auto lu = factor_primary(net, gamma_p);
  const Vector phi = lu.solve(net.noise().head(net.num_pbs()) + i_sp);
  PowerVector p(net.num_pu());
  for (int i = 0; i < net.num_pu(); ++i) {
    const int m = net.serving(i);
    p[i] = share(gamma_p[i]) * phi[m] / net.gain(m, i);
  }
  return p;
}

bool fcir_contains(const FcirPolyhedron& fcir, const Vector& i_sp) {
  if (i_sp.size() != fcir.dim()) throw DimensionMismatch("interference vector length");
  double reach = 0.0;
  for (int m = 0; m < fcir.dim(); ++m)
    if (fcir.row_active(m)) reach = std::max(reach, std::abs(fcir.c[m]));
  if ((i_sp.array() < -kMembershipTolerance * reach).any()) return false;
  for (int m = 0; m < fcir.dim(); ++m) {
    if (!fcir.row_active(m)) continue;
    const double lhs = fcir.a.row(m).dot(i_sp);
    const double scale = std::max(std::abs(fcir.c[m]), fcir.a.row(m).cwiseAbs().dot(i_sp.cwiseAbs()));
    if (lhs - fcir.c[m] > kMembershipTolerance * scale) return false;
  }
  return true;
}

double face_distance(const FcirPolyhedron& fcir, int m, const Vector& i_sp) {
  if (!fcir.row_active(m)) return -kInf;
  return (fcir.a.row(m).dot(i_sp) - fcir.c[m]) / fcir.a.row(m).norm();
}

InfeasibilityReport infeasibility_report(const FcirPolyhedron& fcir, const Vector& i_sp) {
  if (i_sp.size() != fcir.dim()) throw DimensionMismatch("interference vector length");
  InfeasibilityReport r;
  r.s_inf = fcir.a * i_sp - fcir.c;
  r.dist.resize(fcir.dim());
  for (int m = 0; m < fcir.dim(); ++m) {
    r.dist[m] = face_distance(fcir, m, i_sp);
    if (r.s_inf[m] > 0.0) r.violated.push_back(m);
  }
  return r;
}

Vector axis_intercepts(const FcirPolyhedron& fcir) {
  const int b = fcir.dim();
  Vector out = Vector::Constant(b, kInf);
  for (int m = 0; m < b; ++m)
    for (int n = 0; n < b; ++n)
      if (fcir.row_active(n) && fcir.a(n, m) > 0.0)
        out[m] = std::min(out[m], fcir.c[n] / fcir.a(n, m));
  return out;
}

Vector baseline_itl(const FcirPolyhedron& fcir, double alpha) {
  if (!(alpha >= 0.0)) throw DimensionMismatch("alpha must be nonnegative");
  if (alpha == 0.0) return Vector::Zero(fcir.dim());
  return alpha * axis_intercepts(fcir);
}

bool box_inside_fcir(const FcirPolyhedron& fcir, const Vector& itl) {
  if (itl.size() != fcir.dim()) throw DimensionMismatch("ITL vector length");
  for (int m = 0; m < fcir.dim(); ++m) {
    if (!fcir.row_active(m)) continue;
    double lhs = 0.0;
    for (int n = 0; n < fcir.dim(); ++n) {
      if (itl[n] == 0.0 || fcir.a(m, n) == 0.0) continue;
      lhs += fcir.a(m, n) * itl[n];
    }
    if (!(lhs - fcir.c[m] <= kMembershipTolerance * std::max(std::abs(fcir.c[m]), lhs))) return false;
  }
  return true;
}

double max_inscribed_alpha(const FcirPolyhedron& fcir) {
  const Vector corner = axis_intercepts(fcir);
  double alpha = kInf;
  for (int m = 0; m < fcir.dim(); ++m) {
    if (!fcir.row_active(m)) continue;
    double lhs = 0.0;
    for (int n = 0; n < fcir.dim(); ++n)
      if (std::isfinite(corner[n])) lhs += fcir.a(m, n) * corner[n];
    if (lhs > 0.0) alpha = std::min(alpha, fcir.c[m] / lhs);
  }
  return alpha;
}

}  // namespace crn
