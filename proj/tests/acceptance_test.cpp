// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Criteria 5-7 share one desk-scale Monte-Carlo experiment.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "cfslice/harness.hpp"
#include "cfslice/json_io.hpp"
#include "oracles.hpp"

using namespace cfslice;
using namespace cfslice::testing;

namespace {

int g_failures = 0;

void report(int criterion, bool passed, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", passed ? "PASS" : "FAIL", criterion,
              detail.c_str());
  std::fflush(stdout);
  if (!passed) ++g_failures;
}

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// ---------------------------------------------------------------- criterion 1

void criterion_1_sinr_equivalence() {
  const double t0 = now_s();
  Rng rng(101);
  double worst = 0.0;
  int checked = 0;
  for (int inst = 0; inst < 1000; ++inst) {
    const int K = 1 + rng.uniform_int(10), M = 1 + rng.uniform_int(10);
    const ChannelState st = synth_channel(rng, K, M, 1 + rng.uniform_int(4));
    const double rho_d = std::pow(10.0, rng.uniform(8, 12));
    const int N = 1 << rng.uniform_int(4);
    Association assoc;
    assoc.a = MatU8(K, M, 0);
    for (int k = 0; k < K; ++k) {
      std::vector<int> serving;
      for (int m = 0; m < M; ++m)
        if (rng.uniform() < 0.5) serving.push_back(m);
      if (serving.empty()) serving.push_back(rng.uniform_int(M));
      for (int m : serving) assoc.a(k, m) = 1;
      const double s3 = sinr_subset(k, serving, st, rho_d, N);
      const double s4 = sinr_matrix(k, assoc, st, rho_d, N);
      worst = std::max(worst, std::fabs(s3 - s4) / s3);
      ++checked;
    }
  }
  const double dt = now_s() - t0;
  std::ostringstream ss;
  ss << "subset-form vs matrix-form SINR on 1000 instances (" << checked
     << " UE rows), worst relative gap " << worst << ", " << dt << " s";
  report(1, worst <= 1e-12 && dt < 5.0, ss.str());
}

// ---------------------------------------------------------------- criterion 2

void criterion_2_lp_optimality() {
  const double t0 = now_s();
  Rng rng(102);
  const double step = 0.05e6;
  bool ok = true;
  double worst_gap = 0.0;
  std::string fail_detail;
  for (int inst = 0; inst < 500 && ok; ++inst) {
    const int n = 3 + rng.uniform_int(4);
    const Slice s = inst % 2 ? Slice::urllc : Slice::embb;
    AllocInput in;
    in.B_slice = {0.0, 0.0};
    std::vector<double> value;
    double demand = 0.0, max_value = 0.0;
    for (int k = 0; k < n; ++k) {
      in.w.push_back(rng.uniform(1.0, 4.0));
      in.se.push_back(rng.uniform(0.5, 8.0));
      in.b_min.push_back(rng.uniform(0.2e6, 2.0e6));
      in.slice.push_back(s);
      value.push_back(in.w[k] * in.se[k]);
      demand += in.b_min[k];
      max_value = std::max(max_value, value.back());
    }
    in.B_slice[slice_index(s)] = demand + rng.uniform(0.0, 1.0e6);

    const AllocOutcome lp = allocate_lp_exact(in);
    if (!lp.feasible) {
      ok = false;
      fail_detail = "feasible instance rejected";
      break;
    }
    double lp_obj = 0.0, prop_obj = 0.0;
    const AllocOutcome prop = allocate_proposed(in);
    for (int k = 0; k < n; ++k) {
      lp_obj += value[k] * lp.b[k];
      prop_obj += value[k] * prop.b[k];
    }
    const double grid = oracle_grid_allocation(value, in.b_min,
                                               in.B_slice[slice_index(s)], step);
    worst_gap = std::max(worst_gap, std::fabs(lp_obj - grid));
    if (lp_obj < grid * (1 - 1e-9) || lp_obj - grid > step * max_value * (1 + 1e-9)) {
      ok = false;
      fail_detail = "grid search disagrees with the closed form";
    }
    if (prop_obj > lp_obj * (1 + 1e-9)) {
      ok = false;
      fail_detail = "heuristic allocation exceeded the exact optimum";
    }
  }
  const double dt = now_s() - t0;
  std::ostringstream ss;
  if (ok)
    ss << "500 feasible instances, lp within one 0.05 MHz grid step (worst abs gap "
       << worst_gap << "), proposed <= lp everywhere, " << dt << " s";
  else
    ss << fail_detail;
  report(2, ok && dt < 60.0, ss.str());
}

// ---------------------------------------------------------------- criterion 3

void criterion_3_feasibility_boundary() {
  Rng rng(103);
  bool ok = true;
  std::string fail_detail;
  int built = 0;
  for (int inst = 0; inst < 200 && ok; ++inst) {
    const int K = 4 + rng.uniform_int(5), M = 3 + rng.uniform_int(4);
    const ChannelState st = synth_channel(rng, K, M, 4, /*random_eta=*/false);
    std::vector<UeProfile> profiles;
    for (int k = 0; k < K; ++k)
      profiles.push_back(k % 2 ? urllc_profile(rng.uniform(2, 4), rng.uniform(20, 120),
                                               rng.uniform(5, 25),
                                               rng.uniform(0.5e-3, 2.5e-3))
                               : embb_profile(1.0, rng.uniform(1e6, 10e6)));
    Association assoc;
    assoc.a = MatU8(K, M, 1);
    assoc.recount_load();
    SystemConfig cfg;
    cfg.K = K;
    cfg.M = M;

    const UeQuality q = compute_quality(st, assoc, profiles, cfg);
    std::array<double, 2> demand{0.0, 0.0};
    bool finite = true;
    for (int k = 0; k < K; ++k) {
      if (std::isinf(q.b_min[k])) finite = false;
      demand[slice_index(profiles[k].slice)] += q.b_min[k];
    }
    if (!finite || demand[0] <= 0 || demand[1] <= 0) continue;  // need a live boundary
    ++built;

    const auto above = feasibility(st, assoc, profiles,
                                   {demand[0] * (1 + 1e-6), demand[1] * (1 + 1e-6)}, cfg);
    const auto below = feasibility(st, assoc, profiles,
                                   {demand[0] * (1 - 1e-6), demand[1] * (1 - 1e-6)}, cfg);
    if (!above.feasible || below.feasible) {
      ok = false;
      fail_detail = "verdict did not flip at the budget boundary";
    }
    for (int k = 0; k < K && ok; ++k) {
      const double rate = q.b_min[k] * q.se[k];
      if (profiles[k].slice == Slice::urllc) {
        const double d = packet_delay(rate, profiles[k]);
        if (std::fabs(d - profiles[k].D_max_s) / profiles[k].D_max_s > 1e-9) {
          ok = false;
          fail_detail = "delay at b_min missed D_max";
        }
      } else if (std::fabs(rate - profiles[k].R_min_bps) / profiles[k].R_min_bps > 1e-9) {
        ok = false;
        fail_detail = "rate at b_min missed R_min";
      }
      if (ok && !qos_satisfied(rate, profiles[k])) {
        ok = false;
        fail_detail = "QoS flag rejected the boundary allocation";
      }
    }
  }
  std::ostringstream ss;
  if (ok)
    ss << built << " boundary instances flip exactly at B_s*(1 +- 1e-6); "
       << "QoS tight at b = b_min within 1e-9";
  else
    ss << fail_detail;
  report(3, ok && built >= 100, ss.str());
}

// ---------------------------------------------------------------- criterion 4

void criterion_4_association_oracle() {
  Rng rng(104);
  SystemConfig cfg;
  cfg.N = 2;
  bool ok = true;
  std::string fail_detail;
  double ratio_sum = 0.0;
  int ratio_n = 0, contended = 0, overflow_flagged = 0;

  for (int inst = 0; inst < 200 && ok; ++inst) {
    // 150 overflow-free instances (K <= tau_p, the heuristic's output is a
    // feasible point) carry the <=-oracle assertion; 50 contended instances
    // (K > tau_p) exercise coverage and the flagged emergency branch.
    int tau_p, K, M;
    const bool contested = inst % 4 == 3;
    if (contested) {
      tau_p = 1 + inst % 2;
      K = tau_p + 1 + rng.uniform_int(2);
      M = std::max((K + tau_p - 1) / tau_p, 2 + rng.uniform_int(3));
      if (K * M > 12) M = 12 / K;
      if (M * tau_p < K || M < 1) continue;
      ++contended;
    } else {
      tau_p = 1 + inst % 2;
      K = tau_p;
      M = 2 + rng.uniform_int(tau_p == 1 ? 9 : 4);
    }
    cfg.K = K;
    cfg.M = M;
    cfg.tau_p = tau_p;
    const ChannelState st = synth_channel(rng, K, M, tau_p);
    std::vector<UeProfile> profiles;
    AssocInput in;
    in.beta = st.ls.beta;
    in.tau_p = tau_p;
    for (int k = 0; k < K; ++k) {
      profiles.push_back(k % 2 ? urllc_profile(rng.uniform(2, 4), 80, 15, 1e-3)
                               : embb_profile(rng.uniform(1, 2), 2e6));
      in.w.push_back(profiles[k].w);
      in.b.push_back(rng.uniform(0.1e6, 5e6));
    }
    auto objective = [&](const Association& a) {
      double acc = 0.0;
      for (int k = 0; k < K; ++k)
        acc += profiles[k].w * in.b[k] *
               spectral_efficiency(sinr_matrix(k, a, st, cfg.rho_d_norm(), cfg.N),
                                   profiles[k], cfg);
      return acc;
    };

    const Association prop = associate_proposed(in);
    // (5b): full coverage always
    for (int k = 0; k < K; ++k) {
      int row = 0;
      for (int m = 0; m < M; ++m) row += prop.a(k, m);
      if (row < 1) {
        ok = false;
        fail_detail = "coverage constraint violated";
      }
    }
    // (5c): capacity, except flagged emergency overflows
    int over = 0;
    for (int m = 0; m < M; ++m) over += std::max(0, prop.load[m] - tau_p);
    if (over > 0 && prop.emergency_count == 0) {
      ok = false;
      fail_detail = "capacity violated without an emergency flag";
    }
    overflow_flagged += prop.emergency_count;

    const Association oracle = associate_bruteforce(in, objective);
    const double po = objective(prop), oo = objective(oracle);
    if (!contested && po > oo * (1 + 1e-12)) {
      ok = false;
      std::ostringstream ss;
      ss << "heuristic " << po << " above oracle " << oo << " on a feasible instance";
      fail_detail = ss.str();
    }
    if (oo > 0) {
      ratio_sum += po / oo;
      ++ratio_n;
    }
  }
  const double avg_ratio = ratio_n > 0 ? ratio_sum / ratio_n : 0.0;
  std::ostringstream ss;
  if (ok)
    ss << "200 instances (tau_p in {1,2}, K*M <= 12, " << contended
       << " contended with " << overflow_flagged
       << " flagged overflows), mean heuristic/oracle ratio " << avg_ratio;
  else
    ss << fail_detail;
  report(4, ok && avg_ratio >= 0.5, ss.str());
}

// ------------------------------------------------------- criteria 5, 6 and 7

// Desk-scale preset: paper traffic and per-UE physics at the paper's AP
// density (50 APs over 0.5 km^2), overloaded budgets so that per-slice
// feasibility fails across the sweep, and user-centric clusters of 5 APs for
// both the proposed scan (per-UE cap) and the strongest-beta benchmark
// association. The uncapped scan limit-cycles between two winner sets under
// overload; the capped variant converges the way the alternation is meant to.
SystemConfig desk_config() {
  SystemConfig cfg;
  cfg.area_side_m = 707.0;
  cfg.M = 50;
  cfg.N = 4;
  cfg.tau_p = 10;
  cfg.tau_c = 200;
  cfg.B_total_hz = 4e6;
  cfg.B_slice_hz = {2e6, 2e6};
  cfg.theta = 1e-5;
  cfg.epsilon_ao = 1e-3;
  cfg.i_max = 15;
  cfg.seed = 20250808;
  cfg.assoc.n_serving = 5;
  cfg.assoc.max_aps_per_ue = 5;
  return cfg;
}

const std::vector<int> kDeskK{10, 20, 30, 40, 50, 60};
constexpr int kDeskTrials = 100;

struct DeskData {
  // [K index][scheme][trial]
  std::vector<std::array<std::vector<double>, 3>> wsr, succ_e, succ_u, wall;
  std::vector<std::array<std::vector<int>, 3>> iters;
  int fallback_trials = 0;
  double elapsed_s = 0.0;
};

// Monotone over consecutive iterations that share an association matrix;
// that is the segment where the exact allocator's fixed-A optimality
// applies. Returns false on a decrease within such a segment.
bool fixed_assoc_monotone(const AoTrace& tr) {
  for (int i = 1; i < tr.iterations_used; ++i) {
    const auto& prev = tr.iterations[i - 1];
    const auto& cur = tr.iterations[i];
    if (cur.assoc.a == prev.assoc.a &&
        cur.objective < prev.objective * (1 - 1e-12))
      return false;
  }
  return true;
}

DeskData run_desk_experiment() {
  const double t0 = now_s();
  const SystemConfig base = desk_config();
  const int nk = static_cast<int>(kDeskK.size());
  DeskData d;
  d.wsr.resize(nk);
  d.succ_e.resize(nk);
  d.succ_u.resize(nk);
  d.wall.resize(nk);
  d.iters.resize(nk);
  for (int ki = 0; ki < nk; ++ki)
    for (int s = 0; s < 3; ++s) {
      d.wsr[ki][s].resize(kDeskTrials);
      d.succ_e[ki][s].resize(kDeskTrials);
      d.succ_u[ki][s].resize(kDeskTrials);
      d.wall[ki][s].resize(kDeskTrials);
      d.iters[ki][s].resize(kDeskTrials);
    }

  const Scheme schemes[3] = {Scheme::proposed, Scheme::hybrid, Scheme::baseline};
  const int jobs = nk * kDeskTrials;
  std::vector<int> fell(jobs, 0);

#pragma omp parallel for schedule(dynamic)
  for (int job = 0; job < jobs; ++job) {
    const int ki = job / kDeskTrials;
    const int trial = job % kDeskTrials;
    SystemConfig cfg = base;
    cfg.K = kDeskK[ki];
    cfg.seed = derive_seed(base.seed, 0x5000 + static_cast<std::uint64_t>(job));
    const Scenario sc = generate_scenario(cfg, SliceMix{}, TrafficRanges{});
    const ChannelState st = build_channel_state(sc);
    for (int s = 0; s < 3; ++s) {
      const SchemeResult res = run_scheme(sc, st, schemes[s]);
      d.wsr[ki][s][trial] = res.report.weighted_sum_rate;
      d.succ_e[ki][s][trial] = res.report.success_rate[slice_index(Slice::embb)];
      d.succ_u[ki][s][trial] = res.report.success_rate[slice_index(Slice::urllc)];
      d.wall[ki][s][trial] = res.wall_time_s;
      d.iters[ki][s][trial] = res.trace.iterations_used;
      if (schemes[s] == Scheme::hybrid) fell[job] = res.trace.fallback_used ? 1 : 0;
    }
  }
  for (int job = 0; job < jobs; ++job) d.fallback_trials += fell[job];
  d.elapsed_s = now_s() - t0;
  return d;
}

double mean_ignoring_nan(const std::vector<double>& xs) {
  double sum = 0.0;
  int n = 0;
  for (double x : xs)
    if (!std::isnan(x)) {
      sum += x;
      ++n;
    }
  return n > 0 ? sum / n : std::numeric_limits<double>::quiet_NaN();
}

double stderr_of_mean(const std::vector<double>& xs) {
  const double m = mean_ignoring_nan(xs);
  double ss = 0.0;
  int n = 0;
  for (double x : xs)
    if (!std::isnan(x)) {
      ss += (x - m) * (x - m);
      ++n;
    }
  return n > 1 ? std::sqrt(ss / (n - 1)) / std::sqrt(static_cast<double>(n)) : 0.0;
}

// Rebuilds the aggregate view of the desk experiment so the gain table comes
// from the same operation the sweep harness exposes.
SweepResult desk_sweep_result(const DeskData& d) {
  SweepResult result;
  result.seed = desk_config().seed;
  result.n_trials = kDeskTrials;
  result.K_values = kDeskK;
  result.schemes = {Scheme::proposed, Scheme::hybrid, Scheme::baseline};
  auto stats = [](const std::vector<double>& xs) {
    MetricStats st;
    st.mean = mean_ignoring_nan(xs);
    st.stderr_ = stderr_of_mean(xs);
    for (double x : xs) st.n += std::isnan(x) ? 0 : 1;
    return st;
  };
  for (std::size_t ki = 0; ki < kDeskK.size(); ++ki)
    for (int s = 0; s < 3; ++s) {
      std::map<std::string, MetricStats> cell;
      cell["weighted_sum_rate"] = stats(d.wsr[ki][s]);
      cell["success_rate_embb"] = stats(d.succ_e[ki][s]);
      cell["success_rate_urllc"] = stats(d.succ_u[ki][s]);
      cell["wall_time_s"] = stats(d.wall[ki][s]);
      std::vector<double> iters(d.iters[ki][s].begin(), d.iters[ki][s].end());
      cell["ao_iterations"] = stats(iters);
      cell["fallback_fraction"] =
          MetricStats{s == 1 ? static_cast<double>(d.fallback_trials) /
                                   (kDeskK.size() * kDeskTrials)
                             : 0.0,
                      0.0, kDeskTrials};
      result.cells[{kDeskK[ki],
                    std::string(scheme_name(result.schemes[s]))}] = std::move(cell);
    }
  return result;
}

void print_desk_tables(const DeskData& d) {
  const int nk = static_cast<int>(kDeskK.size());
  std::fprintf(stderr, "desk experiment means (proposed / hybrid / baseline):\n");
  for (int ki = 0; ki < nk; ++ki) {
    std::fprintf(stderr,
                 "  K=%2d  wsr %.4g / %.4g / %.4g   succ_e %.3f / %.3f / %.3f   "
                 "succ_u %.3f / %.3f / %.3f   iters %.2f / %.2f   wall %.2e / %.2e\n",
                 kDeskK[ki], mean_ignoring_nan(d.wsr[ki][0]),
                 mean_ignoring_nan(d.wsr[ki][1]), mean_ignoring_nan(d.wsr[ki][2]),
                 mean_ignoring_nan(d.succ_e[ki][0]), mean_ignoring_nan(d.succ_e[ki][1]),
                 mean_ignoring_nan(d.succ_e[ki][2]), mean_ignoring_nan(d.succ_u[ki][0]),
                 mean_ignoring_nan(d.succ_u[ki][1]), mean_ignoring_nan(d.succ_u[ki][2]),
                 std::accumulate(d.iters[ki][0].begin(), d.iters[ki][0].end(), 0.0) /
                     kDeskTrials,
                 std::accumulate(d.iters[ki][1].begin(), d.iters[ki][1].end(), 0.0) /
                     kDeskTrials,
                 mean_ignoring_nan(d.wall[ki][0]), mean_ignoring_nan(d.wall[ki][1]));
  }
  int histo[17] = {0};
  for (int ki = 0; ki < nk; ++ki)
    for (int t = 0; t < kDeskTrials; ++t)
      ++histo[std::min(16, d.iters[ki][0][t])];
  std::fprintf(stderr, "  proposed AO iteration histogram:");
  for (int i = 1; i <= 16; ++i)
    if (histo[i]) std::fprintf(stderr, " %d:%d", i, histo[i]);
  std::fprintf(stderr, "\n");
}

void criterion_5_desk_reproduction(const DeskData& d) {
  const int nk = static_cast<int>(kDeskK.size());
  bool ok = true;
  std::string fail_detail;

  // (a) hybrid >= proposed > baseline at every K
  std::vector<double> wsr_p(nk), wsr_h(nk), wsr_b(nk);
  for (int ki = 0; ki < nk; ++ki) {
    wsr_p[ki] = mean_ignoring_nan(d.wsr[ki][0]);
    wsr_h[ki] = mean_ignoring_nan(d.wsr[ki][1]);
    wsr_b[ki] = mean_ignoring_nan(d.wsr[ki][2]);
    if (!(wsr_h[ki] >= wsr_p[ki] && wsr_p[ki] > wsr_b[ki])) {
      ok = false;
      std::ostringstream ss;
      ss << "sum-rate ordering broken at K=" << kDeskK[ki] << " (hybrid " << wsr_h[ki]
         << ", proposed " << wsr_p[ki] << ", baseline " << wsr_b[ki] << ")";
      fail_detail = ss.str();
    }
  }

  // (b) proposed success rates strictly above baseline, both slices, every K
  for (int ki = 0; ki < nk && ok; ++ki) {
    const double pe = mean_ignoring_nan(d.succ_e[ki][0]);
    const double be = mean_ignoring_nan(d.succ_e[ki][2]);
    const double pu = mean_ignoring_nan(d.succ_u[ki][0]);
    const double bu = mean_ignoring_nan(d.succ_u[ki][2]);
    if (!(pe > be && pu > bu)) {
      ok = false;
      std::ostringstream ss;
      ss << "success-rate dominance broken at K=" << kDeskK[ki] << " (eMBB " << pe
         << " vs " << be << ", URLLC " << pu << " vs " << bu << ")";
      fail_detail = ss.str();
    }
  }

  // (c) per scheme, mean sum-rate non-increasing beyond its peak; an uptick
  // within two standard errors of the difference of two independent
  // 100-trial means does not refute the trend
  for (int s = 0; s < 3 && ok; ++s) {
    const auto& series = s == 0 ? wsr_p : (s == 1 ? wsr_h : wsr_b);
    int peak = 0;
    for (int ki = 1; ki < nk; ++ki)
      if (series[ki] > series[peak]) peak = ki;
    for (int ki = peak; ki + 1 < nk; ++ki) {
      const double se_a = stderr_of_mean(d.wsr[ki][s]);
      const double se_b = stderr_of_mean(d.wsr[ki + 1][s]);
      const double slack = 2.0 * std::sqrt(se_a * se_a + se_b * se_b);
      if (series[ki + 1] > series[ki] + slack) {
        ok = false;
        std::ostringstream ss;
        ss << "sum-rate increased past the saturation point (scheme " << s << ", K="
           << kDeskK[ki + 1] << ", uptick " << series[ki + 1] - series[ki]
           << " vs noise allowance " << slack << ")";
        fail_detail = ss.str();
      }
    }
  }

  // measured gain magnitudes, reported through the harness operation
  const GainTable gains = compare_gains(desk_sweep_result(d));
  std::fprintf(stderr, "measured gains (proposed vs benchmarks):\n%s\n",
               gain_table_to_json(gains).dump(2).c_str());

  std::ostringstream ss;
  if (ok) {
    ss << "orderings hold at every K (hybrid >= proposed > baseline; success "
          "dominance; saturation trend); max sum-rate gain vs baseline "
       << 100.0 * gains.max_over_k.wsr_gain << "%, max success gains "
       << 100.0 * gains.max_over_k.succ_embb_gain << "% (eMBB) / "
       << 100.0 * gains.max_over_k.succ_urllc_gain << "% (URLLC); fallback in "
       << d.fallback_trials << "/" << kDeskK.size() * kDeskTrials
       << " hybrid runs; " << d.elapsed_s << " s";
  } else {
    ss << fail_detail;
  }
  report(5, ok && d.elapsed_s < 600.0, ss.str());
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

void criterion_6_runtime_scaling(const DeskData& d) {
  const int nk = static_cast<int>(kDeskK.size());
  // OLS slope of log(median proposed runtime) on log(K); medians resist
  // scheduler hiccups in the per-trial wall times
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::ostringstream ratios;
  for (int ki = 0; ki < nk; ++ki) {
    const double tp = median(d.wall[ki][0]);
    const double th = median(d.wall[ki][1]);
    const double x = std::log(static_cast<double>(kDeskK[ki]));
    const double y = std::log(tp);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ratios << (ki ? ", " : "") << "K=" << kDeskK[ki] << ": " << th / tp << "x";
  }
  const double slope = (nk * sxy - sx * sy) / (nk * sxx - sx * sx);
  std::ostringstream ss;
  ss << "proposed runtime log-log slope " << slope
     << " (< 2); hybrid/proposed runtime ratios: " << ratios.str()
     << " (the paper's 97% CVX-era reduction is not reproducible with the "
        "closed-form exact allocator)";
  report(6, slope < 2.0, ss.str());
}

void criterion_7_ao_behavior(const DeskData& d) {
  const int nk = static_cast<int>(kDeskK.size());
  int within5 = 0, total = 0, over_cap = 0;
  for (int ki = 0; ki < nk; ++ki)
    for (int s = 0; s < 2; ++s)  // proposed and hybrid
      for (int t = 0; t < kDeskTrials; ++t) {
        ++total;
        if (d.iters[ki][s][t] <= 5) ++within5;
        if (d.iters[ki][s][t] > 15) ++over_cap;
      }
  const double frac5 = static_cast<double>(within5) / total;

  // The overloaded desk preset keeps the exact allocator in fallback, so the
  // monotonicity clause is exercised on a separate feasible-regime batch:
  // generous budgets, same physics. Monotonicity is asserted where it
  // provably holds, across iterations with an unchanged association.
  SystemConfig cfg = desk_config();
  cfg.K = 20;
  cfg.B_total_hz = 100e6;
  cfg.B_slice_hz = {50e6, 50e6};
  int feasible_traces = 0, nonmonotone = 0, cross_assoc_dips = 0;
  for (int t = 0; t < 100; ++t) {
    cfg.seed = derive_seed(desk_config().seed, 0x7000 + static_cast<std::uint64_t>(t));
    const Scenario sc = generate_scenario(cfg, SliceMix{}, TrafficRanges{});
    const ChannelState st = build_channel_state(sc);
    const AoTrace tr = run_ao(sc, st, "lp_exact", "strongest");
    if (tr.fallback_used) continue;
    ++feasible_traces;
    if (!fixed_assoc_monotone(tr)) ++nonmonotone;
    for (int i = 1; i < tr.iterations_used; ++i)
      if (!(tr.iterations[i].assoc.a == tr.iterations[i - 1].assoc.a) &&
          tr.iterations[i].objective < tr.iterations[i - 1].objective)
        ++cross_assoc_dips;
  }

  const bool ok = frac5 >= 0.9 && over_cap == 0 && feasible_traces > 0 &&
                  nonmonotone == 0;
  std::ostringstream ss;
  ss << 100.0 * frac5 << "% of " << total
     << " AO traces finished within 5 iterations, none exceeded I_max=15; "
     << feasible_traces << " hybrid-feasible traces monotone on fixed-association "
     << "segments (" << nonmonotone << " violations, " << cross_assoc_dips
     << " dips across the initial re-association, where exactness does not apply)";
  report(7, ok, ss.str());
}

// ---------------------------------------------------------------- criterion 8

std::string strip_wall_time(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line))
    if (line.find("wall_time_s") == std::string::npos) out += line + "\n";
  return out;
}

std::string run_cli_capture(const std::string& args, int& exit_code) {
  const std::string path = "acceptance_cli.tmp";
  const std::string cmd = std::string(CFSLICE_BIN) + " " + args + " > " + path +
                          " 2> acceptance_cli_err.tmp";
  exit_code = WEXITSTATUS(std::system(cmd.c_str()));
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_8_determinism() {
  bool ok = true;
  std::string fail_detail;

  SweepSpec spec;
  spec.K_values = {8, 12};
  spec.n_trials = 5;
  spec.base_config.M = 12;
  spec.base_config.seed = 99;
  spec.base_config.B_total_hz = 2e6;
  spec.base_config.B_slice_hz = {1e6, 1e6};
  std::ostringstream a, b;
  write_csv(run_sweep(spec), a);
  write_csv(run_sweep(spec), b);
  if (strip_wall_time(a.str()) != strip_wall_time(b.str())) {
    ok = false;
    fail_detail = "run_sweep CSV differs between identical invocations";
  }

  int code1 = 0, code2 = 0;
  const std::string args =
      "run --scheme proposed --seed 7 --set M=12 --set K=10 "
      "--set B_total_hz=2e6 --set \"B_slice_hz=[1e6,1e6]\"";
  const std::string r1 = run_cli_capture(args, code1);
  const std::string r2 = run_cli_capture(args, code2);
  if (code1 != 0 || code2 != 0) {
    ok = false;
    fail_detail = "cmd_run exited nonzero";
  } else if (strip_wall_time(r1) != strip_wall_time(r2)) {
    ok = false;
    fail_detail = "cmd_run output differs between identical invocations";
  }

  report(8, ok,
         ok ? "cmd_run and run_sweep byte-identical across repeated invocations "
              "(wall-time fields excluded)"
            : fail_detail);
}

}  // namespace

int main() {
  criterion_1_sinr_equivalence();
  criterion_2_lp_optimality();
  criterion_3_feasibility_boundary();
  criterion_4_association_oracle();
  const DeskData desk = run_desk_experiment();
  print_desk_tables(desk);
  criterion_5_desk_reproduction(desk);
  criterion_6_runtime_scaling(desk);
  criterion_7_ao_behavior(desk);
  criterion_8_determinism();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
