#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "cfslice/scenario.hpp"

namespace cfslice {

struct AllocInput {
  std::vector<double> w;
  std::vector<double> se;
  std::vector<double> b_min;  // may be +inf for unallocatable UEs
  std::vector<Slice> slice;
  std::array<double, kNumSlices> B_slice{};

  int K() const { return static_cast<int>(w.size()); }
};

struct AllocOutcome {
  std::vector<double> b;
  std::vector<std::uint8_t> admitted;
  // Residual handed out after the admission pass, per slice.
  std::array<double, kNumSlices> residual_used{};
  // lp_exact clears this when some slice cannot cover its aggregate
  // minimum-bandwidth demand.
  bool feasible = true;
};

// zeta = w * se / b_min; zero for UEs that can never be served (se == 0 or
// infinite demand).
double efficiency_metric(double w, double se, double b_min);

// Three-stage greedy: URLLC admission by descending zeta, then eMBB, then
// proportional redistribution of each slice's residual over its admitted set.
AllocOutcome allocate_proposed(const AllocInput& in);

// Exact per-slice optimum of the fixed-SINR problem: everyone at b_min, the
// whole residual to the highest w*se UE. Flags infeasibility instead of
// allocating when some slice cannot cover its demand.
AllocOutcome allocate_lp_exact(const AllocInput& in);

// Fallback used when the exact allocation is infeasible: grant min(b_min,
// remaining) in descending w*se order, leftover to the first admitted UE.
AllocOutcome allocate_greedy_fallback(const AllocInput& in);

// Equal split of each slice budget over its members, ignoring demands.
AllocOutcome allocate_round_robin(const AllocInput& in);

using AllocatorFn = AllocOutcome (*)(const AllocInput&);

// Names: "proposed" | "lp_exact" | "greedy_fallback" | "round_robin".
AllocatorFn allocator_by_name(std::string_view name);

}  // namespace cfslice
