#include "cfslice/scenario.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cfslice {

double SystemConfig::noise_power_mw() const {
  return std::pow(10.0, noise_power_dbm / 10.0);
}

void SystemConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
  if (M < 1 || N < 1 || K < 1) fail("M, N, K must all be >= 1");
  if (tau_p < 1) fail("tau_p must be >= 1");
  if (tau_p >= tau_c) fail("tau_p must be < tau_c");
  if (!(area_side_m > 0)) fail("area_side_m must be positive");
  if (!(rho_p > 0) || !(rho_d > 0)) fail("rho_p and rho_d must be positive");
  if (!(sigma_sh_db >= 0)) fail("sigma_sh_db must be non-negative");
  if (!(theta > 0) || !(theta < 1)) fail("theta must lie in (0,1)");
  if (!(B_total_hz > 0)) fail("B_total_hz must be positive");
  double b_sum = 0;
  for (double b : B_slice_hz) {
    if (!(b >= 0)) fail("slice budgets must be non-negative");
    b_sum += b;
  }
  if (b_sum > B_total_hz * (1.0 + 1e-12)) fail("sum of slice budgets exceeds B_total_hz");
  if (!(epsilon_ao > 0)) fail("epsilon_ao must be positive");
  if (i_max < 1) fail("i_max must be >= 1");
  if (!(pathloss.d0_m > 0) || !(pathloss.d1_m > pathloss.d0_m))
    fail("path-loss breakpoints need 0 < d0 < d1");
  if (power.kappa < 0) fail("kappa must be non-negative");
}

int Scenario::slice_count(Slice s) const {
  int n = 0;
  for (const auto& p : profiles)
    if (p.slice == s) ++n;
  return n;
}

double wrap_distance(const Coord& p1, const Coord& p2, double area_side) {
  double acc = 0.0;
  for (int axis = 0; axis < 2; ++axis) {
    double d = std::fabs(p1[axis] - p2[axis]);
    d = std::min(d, area_side - d);
    acc += d * d;
  }
  return std::sqrt(acc);
}

namespace {

double draw_interval(Rng& rng, const Interval& iv) {
  if (iv.hi < iv.lo) throw std::invalid_argument("empty traffic interval");
  return rng.uniform(iv.lo, iv.hi);
}

}  // namespace

Scenario generate_scenario(const SystemConfig& config, const SliceMix& mix,
                           const TrafficRanges& ranges) {
  config.validate();
  if (mix.embb < 0 || mix.urllc < 0 || std::fabs(mix.embb + mix.urllc - 1.0) > 1e-9)
    throw std::invalid_argument("slice mix fractions must be non-negative and sum to 1");
  if (ranges.premium_fraction < 0 || ranges.premium_fraction > 1)
    throw std::invalid_argument("premium_fraction must lie in [0,1]");

  Scenario sc;
  sc.config = config;

  Rng place(derive_seed(config.seed, kStreamPlacement));
  sc.ap_pos.resize(config.M);
  for (auto& p : sc.ap_pos) p = {place.uniform(0.0, config.area_side_m),
                                 place.uniform(0.0, config.area_side_m)};
  sc.ue_pos.resize(config.K);
  for (auto& p : sc.ue_pos) p = {place.uniform(0.0, config.area_side_m),
                                 place.uniform(0.0, config.area_side_m)};

  Rng traffic(derive_seed(config.seed, kStreamTraffic));
  sc.profiles.resize(config.K);
  for (auto& prof : sc.profiles) {
    if (traffic.uniform() < mix.embb) {
      prof.slice = Slice::embb;
      prof.premium = traffic.uniform() < ranges.premium_fraction;
      if (prof.premium) {
        prof.R_min_bps = draw_interval(traffic, ranges.premium_R_min_bps);
        prof.w = ranges.premium_w;
      } else {
        prof.R_min_bps = draw_interval(traffic, ranges.standard_R_min_bps);
        prof.w = ranges.standard_w;
      }
    } else {
      prof.slice = Slice::urllc;
      prof.L_bytes = draw_interval(traffic, ranges.urllc_L_bytes);
      prof.lambda_pps = draw_interval(traffic, ranges.urllc_lambda_pps);
      prof.D_max_s = draw_interval(traffic, ranges.urllc_D_max_s);
      prof.w = draw_interval(traffic, ranges.urllc_w);
    }
  }
  return sc;
}

}  // namespace cfslice
