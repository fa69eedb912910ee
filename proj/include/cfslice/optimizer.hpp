#pragma once

#include <string>
#include <string_view>

#include "cfslice/alloc.hpp"
#include "cfslice/assoc.hpp"
#include "cfslice/perf.hpp"

namespace cfslice {

enum class Scheme { proposed, hybrid, baseline };

Scheme scheme_by_name(std::string_view name);
std::string_view scheme_name(Scheme s);

enum class StopReason { epsilon, i_max };

struct AoIteration {
  double objective = 0.0;  // weighted sum-rate of (assoc, b) after the step
  std::vector<double> b;
  Association assoc;
  std::vector<double> se;
  bool fallback_used = false;
};

struct AoTrace {
  std::vector<AoIteration> iterations;
  int iterations_used = 0;
  bool converged = false;
  StopReason stop_reason = StopReason::i_max;
  int best_index = 0;  // argmax objective over the trace
  bool fallback_used = false;

  const AoIteration& best() const { return iterations[best_index]; }
};

// Alternating optimization: from the strongest-AP initial association,
// alternate bandwidth allocation (fixed A) and association (fixed b) until
// the relative objective improvement drops below epsilon_ao or i_max is hit.
// Returns the full trace; callers read the best-seen iterate, which need not
// be the last one. Allocator "lp_exact" silently falls back to
// "greedy_fallback" on infeasible iterations and flags them.
AoTrace run_ao(const Scenario& sc, const ChannelState& st,
               std::string_view alloc_name, std::string_view assoc_name);

struct SchemeResult {
  EvalReport report;
  AoTrace trace;
  double wall_time_s = 0.0;
};

// proposed = AO(proposed, proposed); hybrid = AO(lp_exact+fallback,
// strongest); baseline = one strongest-association pass with round-robin
// bandwidth, no AO. Wall time covers the scheme computation only.
SchemeResult run_scheme(const Scenario& sc, const ChannelState& st, Scheme scheme);

}  // namespace cfslice
