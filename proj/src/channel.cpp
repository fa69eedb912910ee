#include "cfslice/channel.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cfslice {

namespace {

// COST231-Hata style fixed term; 140.7 dB for the default constants.
double fixed_term_db(const PathLossParams& p) {
  const double lf = std::log10(p.f_mhz);
  return 46.3 + 33.9 * lf - 13.82 * std::log10(p.h_ap_m) -
         (1.1 * lf - 0.7) * p.h_ue_m + (1.56 * lf - 0.8);
}

}  // namespace

double path_loss_three_slope(double d_m, const PathLossParams& p) {
  if (!(d_m > 0)) throw std::invalid_argument("path loss requires d > 0");
  const double big_l = fixed_term_db(p);
  const double d_km = d_m / 1000.0;
  const double d0_km = p.d0_m / 1000.0;
  const double d1_km = p.d1_m / 1000.0;
  if (d_m > p.d1_m) return -big_l - 35.0 * std::log10(d_km);
  if (d_m > p.d0_m)
    return -big_l - 15.0 * std::log10(d1_km) - 20.0 * std::log10(d_km);
  return -big_l - 15.0 * std::log10(d1_km) - 20.0 * std::log10(d0_km);
}

LargeScale draw_large_scale(const Scenario& sc) {
  const auto& cfg = sc.config;
  const int K = cfg.K, M = cfg.M;
  LargeScale ls;
  ls.beta = MatD(K, M);
  ls.pl_db = MatD(K, M);
  ls.shadow_db = MatD(K, M);

  // z draws happen in a fixed (k,m) order so the realization is independent
  // of geometry; they are only applied on the far slope.
  Rng shadow(derive_seed(cfg.seed, kStreamShadowing));
  MatD z(K, M);
  for (int k = 0; k < K; ++k)
    for (int m = 0; m < M; ++m) z(k, m) = shadow.normal();

#pragma omp parallel for schedule(static)
  for (int k = 0; k < K; ++k) {
    for (int m = 0; m < M; ++m) {
      double d = wrap_distance(sc.ue_pos[k], sc.ap_pos[m], cfg.area_side_m);
      d = std::max(d, cfg.pathloss.min_dist_m);
      const double pl = path_loss_three_slope(d, cfg.pathloss);
      const double sh = (d > cfg.pathloss.d1_m) ? cfg.sigma_sh_db * z(k, m) : 0.0;
      ls.pl_db(k, m) = pl;
      ls.shadow_db(k, m) = sh;
      ls.beta(k, m) = std::pow(10.0, (pl + sh) / 10.0);
    }
  }
  return ls;
}

PilotPlan assign_pilots(int K, int tau_p, Rng& rng, const PilotPowerPolicy& policy) {
  if (tau_p < 1) throw std::invalid_argument("tau_p must be >= 1");
  PilotPlan plan;
  plan.pilot_id.resize(K);
  plan.eta_p.resize(K);
  for (int k = 0; k < K; ++k) {
    plan.pilot_id[k] = rng.uniform_int(tau_p);
    plan.eta_p[k] = policy ? policy(k) : 1.0;
    if (!(plan.eta_p[k] > 0) || plan.eta_p[k] > 1.0)
      throw std::invalid_argument("pilot power coefficient must lie in (0,1]");
  }
  return plan;
}

EstimationQuality estimation_quality(const LargeScale& ls, const PilotPlan& pilots,
                                     double rho_p, int tau_p) {
  const int K = ls.beta.rows(), M = ls.beta.cols();
  EstimationQuality q{MatD(K, M), MatD(K, M)};
  const double tp_rp = tau_p * rho_p;
  const double sqrt_tp_rp = std::sqrt(tp_rp);

#pragma omp parallel for schedule(static)
  for (int k = 0; k < K; ++k) {
    for (int m = 0; m < M; ++m) {
      double contamination = 0.0;  // co-pilot UEs, self included
      for (int j = 0; j < K; ++j)
        if (pilots.same_pilot(k, j)) contamination += ls.beta(j, m) * pilots.eta_p[j];
      const double denom = tp_rp * contamination + 1.0;  // >= 1 always
      const double c = sqrt_tp_rp * ls.beta(k, m) * std::sqrt(pilots.eta_p[k]) / denom;
      q.c(k, m) = c;
      q.gamma(k, m) = sqrt_tp_rp * std::sqrt(pilots.eta_p[k]) * ls.beta(k, m) * c;
    }
  }
  return q;
}

std::vector<double> data_power_coefficients(const LargeScale& ls, double kappa) {
  const int K = ls.beta.rows(), M = ls.beta.cols();
  std::vector<double> eta(K, 1.0);
  if (kappa == 0.0) return eta;
  double top = 0.0;
  for (int k = 0; k < K; ++k) {
    double bmax = 0.0;
    for (int m = 0; m < M; ++m) bmax = std::max(bmax, ls.beta(k, m));
    eta[k] = std::pow(bmax, -kappa);
    top = std::max(top, eta[k]);
  }
  for (double& e : eta) e = std::min(1.0, e / top);
  return eta;
}

ChannelState build_channel_state(const Scenario& sc) {
  ChannelState st;
  st.ls = draw_large_scale(sc);
  Rng pilot_rng(derive_seed(sc.config.seed, kStreamPilots));
  st.pilots = assign_pilots(sc.config.K, sc.config.tau_p, pilot_rng);
  auto q = estimation_quality(st.ls, st.pilots, sc.config.rho_p_norm(), sc.config.tau_p);
  st.c = std::move(q.c);
  st.gamma = std::move(q.gamma);
  st.eta_d = data_power_coefficients(st.ls, sc.config.power.kappa);
  return st;
}

}  // namespace cfslice
