#pragma once

#include <functional>
#include <vector>

#include "cfslice/matrix.hpp"
#include "cfslice/scenario.hpp"

namespace cfslice {

struct LargeScale {
  MatD beta;       // linear power gain, K x M
  MatD pl_db;      // path loss in dB (negative gain)
  MatD shadow_db;  // sigma_sh * z realization, zero on the short slopes
};

struct PilotPlan {
  std::vector<int> pilot_id;   // in [0, tau_p)
  std::vector<double> eta_p;   // pilot power coefficient in (0,1]

  // |psi_k^H psi_j|^2 for orthogonal unit-norm pilots: 1 iff shared pilot.
  bool same_pilot(int k, int j) const { return pilot_id[k] == pilot_id[j]; }
  double cross(int k, int j) const { return same_pilot(k, j) ? 1.0 : 0.0; }
};

struct ChannelState {
  LargeScale ls;
  PilotPlan pilots;
  MatD c;      // MMSE scaling coefficient
  MatD gamma;  // mean-square of the channel estimate
  std::vector<double> eta_d;  // data power coefficient in (0,1]

  int K() const { return ls.beta.rows(); }
  int M() const { return ls.beta.cols(); }
};

// Piecewise path loss in dB: constant floor up to d0, 20 log10 d up to d1,
// 35 log10 d beyond, continuous at both breakpoints.
double path_loss_three_slope(double d_m, const PathLossParams& p);

// beta = 10^(PL/10) * 10^(sigma_sh z / 10), z ~ N(0,1) i.i.d. per (UE, AP).
// Shadowing applies only beyond d1; distances are clamped to min_dist_m.
LargeScale draw_large_scale(const Scenario& sc);

using PilotPowerPolicy = std::function<double(int ue)>;

// Uniform i.i.d. pilot indices; eta_p from the policy (default full power).
PilotPlan assign_pilots(int K, int tau_p, Rng& rng,
                        const PilotPowerPolicy& policy = {});

struct EstimationQuality {
  MatD c;
  MatD gamma;
};

// c_{k,m} = sqrt(tau_p rho_p) beta_{k,m} sqrt(eta_k^p)
//           / (tau_p rho_p sum_j beta_{j,m} eta_j^p |psi_k^H psi_j|^2 + 1)
// gamma_{k,m} = sqrt(tau_p rho_p eta_k^p) beta_{k,m} c_{k,m}
EstimationQuality estimation_quality(const LargeScale& ls, const PilotPlan& pilots,
                                     double rho_p, int tau_p);

// Fractional open-loop power control on the strongest large-scale gain;
// kappa = 0 gives full power for everyone.
std::vector<double> data_power_coefficients(const LargeScale& ls, double kappa);

// Full pipeline: geometry -> beta -> pilots -> (c, gamma) -> eta_d.
ChannelState build_channel_state(const Scenario& sc);

}  // namespace cfslice
