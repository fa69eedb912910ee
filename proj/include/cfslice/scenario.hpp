#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cfslice/rng.hpp"

namespace cfslice {

enum class Slice : int { embb = 0, urllc = 1 };
inline constexpr int kNumSlices = 2;

inline int slice_index(Slice s) { return static_cast<int>(s); }

// Three-slope propagation constants. Defaults give the classic 140.7 dB
// fixed term at 1 km (1.9 GHz carrier, 15 m AP and 1.65 m UE heights).
struct PathLossParams {
  double d0_m = 10.0;
  double d1_m = 50.0;
  double f_mhz = 1900.0;
  double h_ap_m = 15.0;
  double h_ue_m = 1.65;
  // UE-AP distances are clamped to this floor before the path-loss lookup.
  double min_dist_m = 10.0;
};

struct PowerParams {
  // Fractional open-loop data power control exponent; 0 means full power.
  double kappa = 0.0;
};

struct AssocParams {
  // Serving-set size for the strongest-beta associator (<=0 means all APs
  // with spare capacity).
  int n_serving = 1;
  // Optional cap on APs acquired per UE by the proposed associator
  // (0 = uncapped, the literal algorithm).
  int max_aps_per_ue = 0;
};

struct SystemConfig {
  double area_side_m = 1000.0;
  int M = 100;  // APs
  int N = 4;    // antennas per AP
  int K = 40;   // UEs
  int tau_p = 10;
  int tau_c = 200;
  // Pilot/data transmit powers in mW; the normalized SNRs used by the
  // channel formulas divide these by the reference noise power below.
  double rho_p = 100.0;
  double rho_d = 100.0;
  double noise_power_dbm = -92.0;
  double sigma_sh_db = 8.0;
  double B_total_hz = 80e6;
  std::array<double, kNumSlices> B_slice_hz{40e6, 40e6};
  double theta = 1e-5;  // decoding error probability
  double epsilon_ao = 1e-3;
  int i_max = 15;
  std::uint64_t seed = 1;

  PathLossParams pathloss;
  PowerParams power;
  AssocParams assoc;

  double noise_power_mw() const;
  double rho_p_norm() const { return rho_p / noise_power_mw(); }
  double rho_d_norm() const { return rho_d / noise_power_mw(); }

  // Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

struct UeProfile {
  Slice slice = Slice::embb;
  double w = 1.0;
  // URLLC traffic
  double L_bytes = 0.0;
  double lambda_pps = 0.0;
  double D_max_s = 0.0;
  // eMBB traffic
  double R_min_bps = 0.0;
  bool premium = false;

  double packet_bits() const { return 8.0 * L_bytes; }
};

struct SliceMix {
  double embb = 0.4;
  double urllc = 0.6;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct TrafficRanges {
  Interval urllc_L_bytes{20.0, 120.0};
  Interval urllc_lambda_pps{5.0, 25.0};
  Interval urllc_D_max_s{0.5e-3, 2.5e-3};
  Interval urllc_w{2.0, 4.0};
  double premium_fraction = 0.3;
  Interval premium_R_min_bps{5e6, 10e6};
  double premium_w = 1.5;
  Interval standard_R_min_bps{1e6, 3e6};
  double standard_w = 1.0;
};

using Coord = std::array<double, 2>;

struct Scenario {
  SystemConfig config;
  std::vector<Coord> ap_pos;
  std::vector<Coord> ue_pos;
  std::vector<UeProfile> profiles;

  int slice_count(Slice s) const;
};

// Torus distance: per-axis delta folded to min(|d|, side-|d|), then the
// Euclidean norm. Bounded by side/sqrt(2).
double wrap_distance(const Coord& p1, const Coord& p2, double area_side);

Scenario generate_scenario(const SystemConfig& config, const SliceMix& mix,
                           const TrafficRanges& ranges);

}  // namespace cfslice
