#pragma once

#include <span>
#include <vector>

#include "crn/types.hpp"

namespace crn {

// Gains are clamped from below so that far-field d^-4 values never underflow
// into a division by zero.
inline constexpr double kMinGain = 1e-30;

// Relative slack used when deciding whether a user meets its target.
inline constexpr double kSupportTolerance = 1e-6;

// Immutable snapshot of a two-tier uplink network.
//
// Users 0..num_pu-1 are PUs, the remaining num_su users are SUs. Receiving
// stations 0..num_pbs-1 are PBSs, the remaining num_sbs are SBSs. gain(m, i)
// is the linear path gain from user i to station m.
class NetworkInstance {
 public:
  struct Params {
    int num_pu = 0;
    int num_su = 0;
    int num_pbs = 0;
    int num_sbs = 0;
    std::vector<int> serving;
    Matrix gain;  // (num_pbs + num_sbs) x (num_pu + num_su)
    Vector noise;
    Vector p_max;
    Vector target_sinr;
  };

  explicit NetworkInstance(Params params);

  int num_pu() const { return p_.num_pu; }
  int num_su() const { return p_.num_su; }
  int num_pbs() const { return p_.num_pbs; }
  int num_sbs() const { return p_.num_sbs; }
  int num_users() const { return p_.num_pu + p_.num_su; }
  int num_stations() const { return p_.num_pbs + p_.num_sbs; }

  bool is_pu(int user) const { return user < p_.num_pu; }
  bool is_su(int user) const { return user >= p_.num_pu; }

  int serving(int user) const { return p_.serving[user]; }
  const std::vector<int>& serving() const { return p_.serving; }
  double gain(int station, int user) const { return p_.gain(station, user); }
  const Matrix& gains() const { return p_.gain; }
  // Gain of user i toward its own receiving station.
  double own_gain(int user) const { return p_.gain(p_.serving[user], user); }
  double noise(int station) const { return p_.noise[station]; }
  const Vector& noise() const { return p_.noise; }
  const Vector& p_max() const { return p_.p_max; }
  const Vector& target_sinr() const { return p_.target_sinr; }
  const Params& params() const { return p_; }

  std::vector<int> pu_indices() const;
  std::vector<int> su_indices() const;
  std::vector<int> users_of(int station) const;

  // Copy of this network keeping only the listed users (in ascending order).
  // Station set is unchanged; counts of PUs and SUs are recomputed.
  NetworkInstance with_users(std::span<const int> users) const;

 private:
  Params p_;
};

SinrVector sinr_of(const NetworkInstance& net, const PowerVector& p);

// F(gamma) with F_ij = gamma_i h_{b_i j} / h_{b_i i} off the diagonal.
Matrix sinr_coupling_matrix(const NetworkInstance& net, const SinrVector& gamma);

// Solves p = (I - F(gamma))^{-1} U(gamma). Throws InfeasibleSinr when the
// spectral radius of F is not below one or any resulting power is negative.
PowerVector powers_from_sinr(const NetworkInstance& net, const SinrVector& gamma);

bool is_sinr_feasible(const NetworkInstance& net, const SinrVector& gamma);

// Interference at each PBS caused by the listed SUs.
Vector cognitive_interference(const NetworkInstance& net, const PowerVector& p,
                              std::span<const int> active_sus);
Vector cognitive_interference(const NetworkInstance& net, const PowerVector& p);

// Interference at each PBS from every user it does not serve.
Vector total_interference(const NetworkInstance& net, const PowerVector& p);

// achieved >= target * (1 - kSupportTolerance)
bool meets_target(double achieved, double target);

}  // namespace crn
