#pragma once

#include <array>
#include <span>
#include <vector>

#include "cfslice/channel.hpp"

namespace cfslice {

struct Association {
  MatU8 a;                // K x M binary
  std::vector<int> load;  // per-AP associated-UE count
  int emergency_count = 0;  // UEs force-assigned past the tau_p capacity

  int K() const { return a.rows(); }
  int M() const { return a.cols(); }
  void recount_load();
};

struct Allocation {
  std::vector<double> b;                      // Hz per UE
  std::array<double, kNumSlices> residual{};  // unused slice bandwidth
};

Allocation make_allocation(std::vector<double> b, const std::vector<UeProfile>& profiles,
                           const std::array<double, kNumSlices>& B_slice);

struct EvalReport {
  std::vector<double> sinr;   // linear
  std::vector<double> se;     // bits/s/Hz
  std::vector<double> rate;   // bits/s
  std::vector<double> delay;  // seconds, URLLC only (NaN for eMBB, +inf if unstable)
  std::vector<double> b_min;  // Hz, +inf when unallocatable
  std::vector<std::uint8_t> qos_ok;
  double weighted_sum_rate = 0.0;
  std::array<double, kNumSlices> success_rate{};  // NaN for an empty slice
};

// Q(x) for the standard normal tail and its inverse. inverse_q satisfies
// |Q(result) - theta| <= 1e-12 * theta.
double gaussian_q(double x);
double inverse_q(double theta);

// Closed-form uplink SINR over a serving subset (the N^2-scaled form).
double sinr_subset(int k, std::span<const int> serving, const ChannelState& st,
                   double rho_d, int N);

// Same quantity written against the association matrix (the N-scaled form);
// both forms agree to rounding because they differ by a common factor N.
double sinr_matrix(int k, const Association& assoc, const ChannelState& st,
                   double rho_d, int N);

// eMBB: (1 - tau_p/tau_c) log2(1+sinr).
// URLLC: prelog * [log2(1+sinr) - sqrt(V/L) Q^-1(theta)/ln2] with channel
// dispersion V = 1 - (1+sinr)^-2, clamped at zero.
double spectral_efficiency(double sinr, const UeProfile& prof, const SystemConfig& cfg);

// Bandwidth that makes the UE's QoS constraint tight; +inf when se == 0.
double min_bandwidth(double se, const UeProfile& prof);

// M/M/1 sojourn time 1/(rate/L - lambda); +inf when the queue is unstable.
// Throws when called for an eMBB profile.
double packet_delay(double rate_bps, const UeProfile& prof);

// Constraint replay with 1e-9 relative slack on the boundary.
bool qos_satisfied(double rate_bps, const UeProfile& prof);

struct UeQuality {
  std::vector<double> sinr;
  std::vector<double> se;
  std::vector<double> b_min;
};

// Per-UE SINR/SE/b_min under a fixed association. compute_quality runs the
// UE loop in parallel; compute_quality_reference is the serial twin kept for
// testing and must produce bit-identical output.
UeQuality compute_quality(const ChannelState& st, const Association& assoc,
                          const std::vector<UeProfile>& profiles,
                          const SystemConfig& cfg);
UeQuality compute_quality_reference(const ChannelState& st, const Association& assoc,
                                    const std::vector<UeProfile>& profiles,
                                    const SystemConfig& cfg);

EvalReport evaluate(const ChannelState& st, const Association& assoc,
                    const std::vector<double>& b,
                    const std::vector<UeProfile>& profiles, const SystemConfig& cfg);
EvalReport evaluate_reference(const ChannelState& st, const Association& assoc,
                              const std::vector<double>& b,
                              const std::vector<UeProfile>& profiles,
                              const SystemConfig& cfg);

struct FeasibilityReport {
  bool feasible = false;
  std::array<double, kNumSlices> demand{};  // sum of b_min per slice
  std::array<bool, kNumSlices> slice_feasible{};
  std::vector<double> b_min;
};

// Per-slice minimum-bandwidth feasibility: demand <= budget and no UE with
// an infinite demand.
FeasibilityReport feasibility(const ChannelState& st, const Association& assoc,
                              const std::vector<UeProfile>& profiles,
                              const std::array<double, kNumSlices>& B_slice,
                              const SystemConfig& cfg);

double weighted_sum_rate(const std::vector<double>& b, const std::vector<double>& se,
                         const std::vector<UeProfile>& profiles);

}  // namespace cfslice
