#include "cfslice/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cfslice {

const std::vector<std::string>& sweep_metrics() {
  static const std::vector<std::string> metrics = {
      "weighted_sum_rate", "success_rate_embb", "success_rate_urllc",
      "wall_time_s",       "ao_iterations",     "fallback_fraction"};
  return metrics;
}

void SweepSpec::validate() const {
  if (K_values.empty()) throw std::invalid_argument("sweep: K_values must be nonempty");
  if (n_trials < 1) throw std::invalid_argument("sweep: n_trials must be >= 1");
  if (schemes.empty()) throw std::invalid_argument("sweep: schemes must be nonempty");
  base_config.validate();
}

const MetricStats& SweepResult::at(int K, Scheme s, const std::string& metric) const {
  return cells.at({K, std::string(scheme_name(s))}).at(metric);
}

namespace {

std::vector<double> trial_values(const SchemeResult& res) {
  return {res.report.weighted_sum_rate,
          res.report.success_rate[slice_index(Slice::embb)],
          res.report.success_rate[slice_index(Slice::urllc)],
          res.wall_time_s,
          static_cast<double>(res.trace.iterations_used),
          res.trace.fallback_used ? 1.0 : 0.0};
}

MetricStats aggregate(const std::vector<double>& xs) {
  MetricStats st;
  double sum = 0.0;
  for (double x : xs)
    if (!std::isnan(x)) {
      sum += x;
      ++st.n;
    }
  if (st.n == 0) return st;
  st.mean = sum / st.n;
  if (st.n > 1) {
    double ss = 0.0;
    for (double x : xs)
      if (!std::isnan(x)) ss += (x - st.mean) * (x - st.mean);
    st.stderr_ = std::sqrt(ss / (st.n - 1)) / std::sqrt(static_cast<double>(st.n));
  }
  return st;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepResult result;
  result.seed = spec.base_config.seed;
  result.n_trials = spec.n_trials;
  result.K_values = spec.K_values;
  result.schemes = spec.schemes;

  const int nk = static_cast<int>(spec.K_values.size());
  const int ns = static_cast<int>(spec.schemes.size());
  const int jobs = nk * spec.n_trials;

  // Flat (K, trial, scheme, metric) value store indexed by job, so the
  // reduction below is identical for any worker count.
  std::vector<std::vector<std::vector<double>>> store(
      jobs, std::vector<std::vector<double>>(ns));

#ifdef _OPENMP
  if (spec.threads > 0) omp_set_num_threads(spec.threads);
#endif

#pragma omp parallel for schedule(dynamic)
  for (int job = 0; job < jobs; ++job) {
    const int ki = job / spec.n_trials;
    SystemConfig cfg = spec.base_config;
    cfg.K = spec.K_values[ki];
    cfg.seed = derive_seed(spec.base_config.seed,
                           0x1000 + static_cast<std::uint64_t>(job));
    const Scenario sc = generate_scenario(cfg, spec.mix, spec.traffic);
    const ChannelState st = build_channel_state(sc);
    // Paired design: every scheme sees the identical instance.
    for (int si = 0; si < ns; ++si)
      store[job][si] = trial_values(run_scheme(sc, st, spec.schemes[si]));
  }

  const auto& metrics = sweep_metrics();
  for (int ki = 0; ki < nk; ++ki) {
    for (int si = 0; si < ns; ++si) {
      std::map<std::string, MetricStats> cell;
      for (std::size_t mi = 0; mi < metrics.size(); ++mi) {
        std::vector<double> xs(spec.n_trials);
        for (int t = 0; t < spec.n_trials; ++t)
          xs[t] = store[ki * spec.n_trials + t][si][mi];
        cell[metrics[mi]] = aggregate(xs);
      }
      result.cells[{spec.K_values[ki], std::string(scheme_name(spec.schemes[si]))}] =
          std::move(cell);
    }
  }

  if (spec.keep_trials) {
    for (int ki = 0; ki < nk; ++ki)
      for (int t = 0; t < spec.n_trials; ++t)
        for (int si = 0; si < ns; ++si)
          result.trials.push_back({spec.K_values[ki], t, spec.schemes[si],
                                   store[ki * spec.n_trials + t][si]});
  }
  return result;
}

namespace {

std::string fmt_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void write_csv(const SweepResult& result, std::ostream& os) {
  os << "K,scheme,metric,mean,stderr,n_trials,seed\n";
  for (int K : result.K_values)
    for (Scheme s : result.schemes)
      for (const auto& metric : sweep_metrics()) {
        const auto& st = result.at(K, s, metric);
        os << K << ',' << scheme_name(s) << ',' << metric << ',' << fmt_double(st.mean)
           << ',' << fmt_double(st.stderr_) << ',' << st.n << ',' << result.seed
           << '\n';
      }
}

void write_trials_csv(const SweepResult& result, std::ostream& os) {
  os << "K,trial,scheme,metric,value,seed\n";
  const auto& metrics = sweep_metrics();
  for (const auto& row : result.trials)
    for (std::size_t mi = 0; mi < metrics.size(); ++mi)
      os << row.K << ',' << row.trial << ',' << scheme_name(row.scheme) << ','
         << metrics[mi] << ',' << fmt_double(row.values[mi]) << ',' << result.seed
         << '\n';
}

namespace {

double rel_gain(double a, double b) {
  if (b != 0.0) return (a - b) / b;
  return a > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

}  // namespace

GainTable compare_gains(const SweepResult& result) {
  const bool has = [&](Scheme s) {
    return std::find(result.schemes.begin(), result.schemes.end(), s) !=
           result.schemes.end();
  }(Scheme::hybrid);
  GainTable table;
  for (int K : result.K_values) {
    SchemeGains g;
    g.K = K;
    g.wsr_gain = rel_gain(result.at(K, Scheme::proposed, "weighted_sum_rate").mean,
                          result.at(K, Scheme::baseline, "weighted_sum_rate").mean);
    g.succ_embb_gain =
        rel_gain(result.at(K, Scheme::proposed, "success_rate_embb").mean,
                 result.at(K, Scheme::baseline, "success_rate_embb").mean);
    g.succ_urllc_gain =
        rel_gain(result.at(K, Scheme::proposed, "success_rate_urllc").mean,
                 result.at(K, Scheme::baseline, "success_rate_urllc").mean);
    if (has) {
      const double tp = result.at(K, Scheme::proposed, "wall_time_s").mean;
      const double th = result.at(K, Scheme::hybrid, "wall_time_s").mean;
      g.runtime_reduction = th != 0.0 ? (th - tp) / th : 0.0;
      g.succ_embb_gain_vs_hybrid =
          rel_gain(result.at(K, Scheme::proposed, "success_rate_embb").mean,
                   result.at(K, Scheme::hybrid, "success_rate_embb").mean);
      g.succ_urllc_gain_vs_hybrid =
          rel_gain(result.at(K, Scheme::proposed, "success_rate_urllc").mean,
                   result.at(K, Scheme::hybrid, "success_rate_urllc").mean);
    }
    table.per_k.push_back(g);
  }
  auto& mx = table.max_over_k;
  for (const auto& g : table.per_k) {
    mx.wsr_gain = std::max(mx.wsr_gain, g.wsr_gain);
    mx.succ_embb_gain = std::max(mx.succ_embb_gain, g.succ_embb_gain);
    mx.succ_urllc_gain = std::max(mx.succ_urllc_gain, g.succ_urllc_gain);
    mx.runtime_reduction = std::max(mx.runtime_reduction, g.runtime_reduction);
    mx.succ_embb_gain_vs_hybrid =
        std::max(mx.succ_embb_gain_vs_hybrid, g.succ_embb_gain_vs_hybrid);
    mx.succ_urllc_gain_vs_hybrid =
        std::max(mx.succ_urllc_gain_vs_hybrid, g.succ_urllc_gain_vs_hybrid);
  }
  return table;
}

}  // namespace cfslice
