#include "validate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cfslice/alloc.hpp"
#include "cfslice/assoc.hpp"
#include "cfslice/optimizer.hpp"
#include "cfslice/perf.hpp"

namespace cfslice::validate {

namespace {

// Synthetic channel with physically consistent gamma (via the estimator) but
// arbitrary scale; enough to exercise the SINR algebra.
ChannelState synth_channel(Rng& rng, int K, int M, int tau_p) {
  ChannelState st;
  st.ls.beta = MatD(K, M);
  st.ls.pl_db = MatD(K, M);
  st.ls.shadow_db = MatD(K, M);
  for (int k = 0; k < K; ++k)
    for (int m = 0; m < M; ++m)
      st.ls.beta(k, m) = std::pow(10.0, rng.uniform(-12.0, -6.0));
  st.pilots.pilot_id.resize(K);
  st.pilots.eta_p.resize(K);
  for (int k = 0; k < K; ++k) {
    st.pilots.pilot_id[k] = rng.uniform_int(tau_p);
    st.pilots.eta_p[k] = rng.uniform(0.2, 1.0);
  }
  const double rho_p = std::pow(10.0, rng.uniform(8.0, 12.0));
  auto q = estimation_quality(st.ls, st.pilots, rho_p, tau_p);
  st.c = std::move(q.c);
  st.gamma = std::move(q.gamma);
  st.eta_d.resize(K);
  for (int k = 0; k < K; ++k) st.eta_d[k] = rng.uniform(0.2, 1.0);
  return st;
}

SuiteResult suite_sinr_equiv(const Options& opt) {
  SuiteResult res{"sinr_equiv", true, ""};
  Rng rng(derive_seed(opt.seed, 0xE1));
  double worst = 0.0;
  for (int inst = 0; inst < 1000 && res.passed; ++inst) {
    const int K = 1 + rng.uniform_int(10);
    const int M = 1 + rng.uniform_int(10);
    const int tau_p = 1 + rng.uniform_int(4);
    const ChannelState st = synth_channel(rng, K, M, tau_p);
    const double rho_d = std::pow(10.0, rng.uniform(8.0, 12.0));
    const int N = 1 << rng.uniform_int(4);

    Association assoc;
    assoc.a = MatU8(K, M, 0);
    std::vector<int> serving;
    for (int k = 0; k < K; ++k) {
      serving.clear();
      for (int m = 0; m < M; ++m)
        if (rng.uniform() < 0.5) serving.push_back(m);
      if (serving.empty()) serving.push_back(rng.uniform_int(M));
      for (int m : serving) assoc.a(k, m) = 1;
      assoc.recount_load();

      const double s3 = sinr_subset(k, serving, st, rho_d, N);
      double s4 = sinr_matrix(k, assoc, st, rho_d, N);
      if (opt.perturb_sinr) s4 *= 1.0 + 1e-9;
      const double rel = std::fabs(s3 - s4) / s3;
      worst = std::max(worst, rel);
      if (rel > 1e-12) {
        res.passed = false;
        std::ostringstream ss;
        ss << "instance " << inst << " ue " << k << " relative gap " << rel;
        res.detail = ss.str();
      }
    }
  }
  if (res.passed) {
    std::ostringstream ss;
    ss << "1000 instances, worst relative gap " << worst;
    res.detail = ss.str();
  }
  return res;
}

// Exhaustive composition of the residual over the UEs on a fixed grid,
// independent of the closed-form allocator.
double grid_search_objective(const std::vector<double>& value,
                             const std::vector<double>& b_min, double budget,
                             double step) {
  const int n = static_cast<int>(value.size());
  double base = 0.0, spent = 0.0;
  for (int k = 0; k < n; ++k) {
    base += value[k] * b_min[k];
    spent += b_min[k];
  }
  const int steps = static_cast<int>(std::floor((budget - spent) / step + 1e-9));
  double best = -std::numeric_limits<double>::infinity();
  // Recursive enumeration of how many grid steps each UE receives.
  std::vector<int> take(n, 0);
  auto rec = [&](auto&& self, int k, int left, double acc) -> void {
    if (k == n - 1) {
      best = std::max(best, acc + value[k] * left * step);
      return;
    }
    for (int t = 0; t <= left; ++t) self(self, k + 1, left - t, acc + value[k] * t * step);
  };
  rec(rec, 0, steps, 0.0);
  return base + best;
}

SuiteResult suite_lp_oracle(const Options& opt) {
  SuiteResult res{"lp_oracle", true, ""};
  Rng rng(derive_seed(opt.seed, 0xE2));
  const double step = 0.05e6;
  for (int inst = 0; inst < 100 && res.passed; ++inst) {
    const int n = 3 + rng.uniform_int(4);
    const Slice s = inst % 2 == 0 ? Slice::embb : Slice::urllc;
    AllocInput in;
    in.B_slice = {0.0, 0.0};
    std::vector<double> value(n);
    double demand = 0.0;
    for (int k = 0; k < n; ++k) {
      in.w.push_back(rng.uniform(1.0, 4.0));
      in.se.push_back(rng.uniform(0.5, 8.0));
      in.b_min.push_back(rng.uniform(0.2e6, 2.0e6));
      in.slice.push_back(s);
      value[k] = in.w[k] * in.se[k];
      demand += in.b_min[k];
    }
    in.B_slice[slice_index(s)] = demand + rng.uniform(0.0, 1.0e6);

    const AllocOutcome lp = allocate_lp_exact(in);
    if (!lp.feasible) {
      res.passed = false;
      res.detail = "constructed-feasible instance reported infeasible";
      break;
    }
    double lp_obj = 0.0;
    for (int k = 0; k < n; ++k) lp_obj += value[k] * lp.b[k];
    const double grid_obj =
        grid_search_objective(value, in.b_min, in.B_slice[slice_index(s)], step);
    const double max_value = *std::max_element(value.begin(), value.end());
    if (lp_obj < grid_obj * (1 - 1e-9) ||
        lp_obj - grid_obj > step * max_value * (1 + 1e-9)) {
      res.passed = false;
      std::ostringstream ss;
      ss << "instance " << inst << " lp " << lp_obj << " vs grid " << grid_obj;
      res.detail = ss.str();
      break;
    }
    const AllocOutcome prop = allocate_proposed(in);
    double prop_obj = 0.0;
    for (int k = 0; k < n; ++k) prop_obj += value[k] * prop.b[k];
    if (prop_obj > lp_obj * (1 + 1e-9)) {
      res.passed = false;
      res.detail = "proposed allocation beat the exact optimum";
      break;
    }
  }
  if (res.passed) res.detail = "100 instances, grid step 0.05 MHz";
  return res;
}

SuiteResult suite_assoc_oracle(const Options& opt) {
  SuiteResult res{"assoc_oracle", true, ""};
  Rng rng(derive_seed(opt.seed, 0xE3));
  SystemConfig cfg;
  cfg.N = 2;
  double worst_ratio = 1.0;
  for (int inst = 0; inst < 50 && res.passed; ++inst) {
    // Overflow-free family: K <= tau_p keeps the emergency branch idle, so
    // the heuristic's output stays inside the oracle's feasible set.
    const int tau_p = 1 + inst % 2;
    const int K = tau_p;
    const int M = 2 + rng.uniform_int(tau_p == 1 ? 7 : 5);
    cfg.K = K;
    cfg.M = M;
    cfg.tau_p = tau_p;
    cfg.tau_c = 200;
    const ChannelState st = synth_channel(rng, K, M, tau_p);

    std::vector<UeProfile> profiles(K);
    AssocInput in;
    in.beta = st.ls.beta;
    in.tau_p = tau_p;
    for (int k = 0; k < K; ++k) {
      profiles[k].slice = Slice::embb;
      profiles[k].w = rng.uniform(1.0, 4.0);
      profiles[k].R_min_bps = 1e6;
      in.w.push_back(profiles[k].w);
      in.b.push_back(rng.uniform(0.0, 5.0e6));
    }
    const double rho_d = cfg.rho_d_norm();
    auto objective = [&](const Association& a) {
      double acc = 0.0;
      for (int k = 0; k < K; ++k) {
        const double se =
            spectral_efficiency(sinr_matrix(k, a, st, rho_d, cfg.N), profiles[k], cfg);
        acc += profiles[k].w * in.b[k] * se;
      }
      return acc;
    };

    const Association prop = associate_proposed(in);
    const Association oracle = associate_bruteforce(in, objective);
    for (int m = 0; m < M; ++m)
      if (prop.load[m] > tau_p) {
        res.passed = false;
        res.detail = "capacity violated without emergency flag";
      }
    const double po = objective(prop), oo = objective(oracle);
    if (po > oo * (1 + 1e-12)) {
      res.passed = false;
      std::ostringstream ss;
      ss << "instance " << inst << " heuristic " << po << " above oracle " << oo;
      res.detail = ss.str();
    }
    if (oo > 0) worst_ratio = std::min(worst_ratio, po / oo);
  }
  if (res.passed) {
    std::ostringstream ss;
    ss << "50 instances, worst heuristic/oracle ratio " << worst_ratio;
    res.detail = ss.str();
  }
  return res;
}

SuiteResult suite_qos_roundtrip(const Options& opt) {
  SuiteResult res{"qos_roundtrip", true, ""};
  Rng rng(derive_seed(opt.seed, 0xE4));
  for (int inst = 0; inst < 100 && res.passed; ++inst) {
    UeProfile u;
    u.slice = Slice::urllc;
    u.L_bytes = rng.uniform(20.0, 120.0);
    u.lambda_pps = rng.uniform(5.0, 25.0);
    u.D_max_s = rng.uniform(0.5e-3, 2.5e-3);
    const double se = rng.uniform(0.5, 8.0);
    const double b_min = min_bandwidth(se, u);
    const double delay = packet_delay(b_min * se, u);
    if (std::fabs(delay - u.D_max_s) / u.D_max_s > 1e-9) {
      res.passed = false;
      res.detail = "URLLC delay at b_min missed D_max";
      break;
    }
    if (!qos_satisfied(b_min * se, u) || qos_satisfied(b_min * se * (1 - 1e-6), u)) {
      res.passed = false;
      res.detail = "URLLC QoS boundary misclassified";
      break;
    }
    UeProfile e;
    e.slice = Slice::embb;
    e.R_min_bps = rng.uniform(1e6, 10e6);
    const double se_e = rng.uniform(0.5, 8.0);
    const double rate = min_bandwidth(se_e, e) * se_e;
    if (std::fabs(rate - e.R_min_bps) / e.R_min_bps > 1e-9 || !qos_satisfied(rate, e)) {
      res.passed = false;
      res.detail = "eMBB rate at b_min missed R_min";
      break;
    }
  }
  if (res.passed) res.detail = "100 instances, QoS tight at b_min within 1e-9";
  return res;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"sinr_equiv", "lp_oracle", "assoc_oracle", "qos_roundtrip"};
}

std::vector<SuiteResult> run_suites(const Options& opt) {
  std::vector<SuiteResult> out;
  const auto want = [&](const std::string& n) { return opt.suite.empty() || opt.suite == n; };
  if (want("sinr_equiv")) out.push_back(suite_sinr_equiv(opt));
  if (want("lp_oracle")) out.push_back(suite_lp_oracle(opt));
  if (want("assoc_oracle")) out.push_back(suite_assoc_oracle(opt));
  if (want("qos_roundtrip")) out.push_back(suite_qos_roundtrip(opt));
  return out;
}

}  // namespace cfslice::validate
