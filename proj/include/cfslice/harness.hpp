#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cfslice/optimizer.hpp"

namespace cfslice {

inline constexpr int kResultsSchemaVersion = 1;

// Metric names, in the fixed emission order.
const std::vector<std::string>& sweep_metrics();

struct SweepSpec {
  std::vector<int> K_values;
  int n_trials = 100;
  std::vector<Scheme> schemes{Scheme::proposed, Scheme::hybrid, Scheme::baseline};
  SystemConfig base_config;
  SliceMix mix;
  TrafficRanges traffic;
  int threads = 0;  // 0 = library default
  bool keep_trials = false;

  void validate() const;
};

struct MetricStats {
  double mean = 0.0;
  double stderr_ = 0.0;
  int n = 0;  // samples aggregated (empty-slice trials drop out of success rates)
};

struct TrialRecord {
  int K = 0;
  int trial = 0;
  Scheme scheme = Scheme::proposed;
  // Ordered as sweep_metrics(); success rates may be NaN for an empty slice.
  std::vector<double> values;
};

struct SweepResult {
  int schema_version = kResultsSchemaVersion;
  std::uint64_t seed = 0;
  int n_trials = 0;
  std::vector<int> K_values;
  std::vector<Scheme> schemes;
  // (K, scheme, metric) -> stats, keyed by emission order below.
  std::map<std::pair<int, std::string>, std::map<std::string, MetricStats>> cells;
  std::vector<TrialRecord> trials;  // populated only with keep_trials

  const MetricStats& at(int K, Scheme s, const std::string& metric) const;
};

// Runs every scheme on the identical scenario/channel instance per (K,
// trial); trial seeds derive from the master seed, so results are
// reproducible and independent of the worker count.
SweepResult run_sweep(const SweepSpec& spec);

// CSV columns: K,scheme,metric,mean,stderr,n_trials,seed. Rows ordered by
// (K, scheme, metric); floats carry full round-trip precision. wall_time_s
// rows are the only nondeterministic content.
void write_csv(const SweepResult& result, std::ostream& os);
void write_trials_csv(const SweepResult& result, std::ostream& os);

struct SchemeGains {
  int K = 0;
  // proposed relative to baseline
  double wsr_gain = 0.0;
  double succ_embb_gain = 0.0;
  double succ_urllc_gain = 0.0;
  // proposed relative to hybrid
  double runtime_reduction = 0.0;
  double succ_embb_gain_vs_hybrid = 0.0;
  double succ_urllc_gain_vs_hybrid = 0.0;
};

struct GainTable {
  std::vector<SchemeGains> per_k;
  SchemeGains max_over_k;  // per-field maxima, matching the "up to" framing
};

// Requires proposed and baseline in the result; hybrid columns are zero when
// the hybrid scheme was not swept.
GainTable compare_gains(const SweepResult& result);

}  // namespace cfslice
