#include "crn/network.hpp"

#include <algorithm>
#include <string>

#include "crn/errors.hpp"
#include "crn/spectral.hpp"

namespace crn {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidNetwork(what);
}

}  // namespace

NetworkInstance::NetworkInstance(Params params) : p_(std::move(params)) {
  const int m = num_users();
  const int b = num_stations();
  require(p_.num_pu >= 0 && p_.num_su >= 0, "negative user count");
  require(p_.num_pbs >= 0 && p_.num_sbs >= 0, "negative station count");
  require(static_cast<int>(p_.serving.size()) == m, "serving vector length");
  require(p_.gain.rows() == b && p_.gain.cols() == m, "gain matrix shape");
  require(p_.noise.size() == b, "noise vector length");
  require(p_.p_max.size() == m, "p_max vector length");
  require(p_.target_sinr.size() == m, "target_sinr vector length");
  for (int i = 0; i < m; ++i) {
    const int s = p_.serving[i];
    if (is_pu(i)) {
      require(s >= 0 && s < p_.num_pbs,
              "PU " + std::to_string(i) + " must be served by a PBS");
    } else {
      require(s >= p_.num_pbs && s < b,
              "SU " + std::to_string(i) + " must be served by an SBS");
    }
    require(std::isfinite(p_.p_max[i]) && p_.p_max[i] > 0.0, "p_max must be positive");
    require(std::isfinite(p_.target_sinr[i]) && p_.target_sinr[i] > 0.0,
            "target SINR must be positive");
  }
  for (int k = 0; k < b; ++k)
    require(std::isfinite(p_.noise[k]) && p_.noise[k] > 0.0, "noise must be positive");
  for (Eigen::Index r = 0; r < p_.gain.rows(); ++r) {
    for (Eigen::Index c = 0; c < p_.gain.cols(); ++c) {
      double& g = p_.gain(r, c);
      require(std::isfinite(g) && g > 0.0, "gains must be positive");
      g = std::max(g, kMinGain);
    }
  }
}

std::vector<int> NetworkInstance::pu_indices() const {
  std::vector<int> out(p_.num_pu);
  for (int i = 0; i < p_.num_pu; ++i) out[i] = i;
  return out;
}

std::vector<int> NetworkInstance::su_indices() const {
  std::vector<int> out(p_.num_su);
  for (int i = 0; i < p_.num_su; ++i) out[i] = p_.num_pu + i;
  return out;
}

std::vector<int> NetworkInstance::users_of(int station) const {
  std::vector<int> out;
  for (int i = 0; i < num_users(); ++i)
    if (p_.serving[i] == station) out.push_back(i);
  return out;
}

NetworkInstance NetworkInstance::with_users(std::span<const int> users) const {
  std::vector<int> sorted(users.begin(), users.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Params q;
  q.num_pbs = p_.num_pbs;
  q.num_sbs = p_.num_sbs;
  const int n = static_cast<int>(sorted.size());
  q.gain.resize(num_stations(), n);
  q.p_max.resize(n);
  q.target_sinr.resize(n);
  q.noise = p_.noise;
  for (int k = 0; k < n; ++k) {
    const int i = sorted[k];
    if (i < 0 || i >= num_users()) throw DimensionMismatch("user index out of range");
    if (is_pu(i)) ++q.num_pu; else ++q.num_su;
    q.serving.push_back(p_.serving[i]);
    q.gain.col(k) = p_.gain.col(i);
    q.p_max[k] = p_.p_max[i];
    q.target_sinr[k] = p_.target_sinr[i];
  }
  return NetworkInstance(std::move(q));
}

SinrVector sinr_of(const NetworkInstance& net, const PowerVector& p) {
  const int m = net.num_users();
  if (p.size() != m) throw DimensionMismatch("power vector length");
  // Received power of every user at every station.
  const Vector received = net.gains() * p;
  SinrVector gamma(m);
  for (int i = 0; i < m; ++i) {
    const int b = net.serving(i);
    const double signal = net.gain(b, i) * p[i];
    const double interference = received[b] - signal;
    gamma[i] = signal / (std::max(interference, 0.0) + net.noise(b));
  }
  return gamma;
}

Matrix sinr_coupling_matrix(const NetworkInstance& net, const SinrVector& gamma) {
  const int m = net.num_users();
  if (gamma.size() != m) throw DimensionMismatch("SINR vector length");
  Matrix f(m, m);
  for (int i = 0; i < m; ++i) {
    const int b = net.serving(i);
    const double own = net.own_gain(i);
    for (int j = 0; j < m; ++j)
      f(i, j) = (i == j) ? 0.0 : gamma[i] * net.gain(b, j) / own;
  }
  return f;
}

PowerVector powers_from_sinr(const NetworkInstance& net, const SinrVector& gamma) {
  const int m = net.num_users();
  const Matrix f = sinr_coupling_matrix(net, gamma);
  for (int i = 0; i < m; ++i)
    if (!(gamma[i] >= 0.0) || !std::isfinite(gamma[i]))
      throw InfeasibleSinr("SINR entries must be finite and nonnegative");
  if (!spectral_radius_below_one(f)) throw InfeasibleSinr("spectral radius of F(gamma) >= 1");
  Vector u(m);
  for (int i = 0; i < m; ++i) u[i] = gamma[i] * net.noise(net.serving(i)) / net.own_gain(i);
  const Matrix a = Matrix::Identity(m, m) - f;
  PowerVector p = a.partialPivLu().solve(u);
  for (int i = 0; i < m; ++i)
    if (!(p[i] >= 0.0) || !std::isfinite(p[i]))
      throw InfeasibleSinr("negative power in solution");
  return p;
}

bool is_sinr_feasible(const NetworkInstance& net, const SinrVector& gamma) {
  try {
    const PowerVector p = powers_from_sinr(net, gamma);
    return (p.array() <= net.p_max().array()).all();
  } catch (const InfeasibleSinr&) {
    return false;
  }
}

Vector cognitive_interference(const NetworkInstance& net, const PowerVector& p,
                              std::span<const int> active_sus) {
  if (p.size() != net.num_users()) throw DimensionMismatch("power vector length");
  Vector out = Vector::Zero(net.num_pbs());
  for (int i : active_sus) {
    if (!net.is_su(i) || i >= net.num_users())
      throw DimensionMismatch("active set must list SU indices");
    for (int m = 0; m < net.num_pbs(); ++m) out[m] += p[i] * net.gain(m, i);
  }
  return out;
}

Vector cognitive_interference(const NetworkInstance& net, const PowerVector& p) {
  const auto sus = net.su_indices();
  return cognitive_interference(net, p, sus);
}

Vector total_interference(const NetworkInstance& net, const PowerVector& p) {
  if (p.size() != net.num_users()) throw DimensionMismatch("power vector length");
  Vector out = Vector::Zero(net.num_pbs());
  for (int m = 0; m < net.num_pbs(); ++m)
    for (int i = 0; i < net.num_users(); ++i)
      if (net.serving(i) != m) out[m] += p[i] * net.gain(m, i);
  return out;
}

bool meets_target(double achieved, double target) {
  return achieved >= target * (1.0 - kSupportTolerance);
}

}  // namespace crn
