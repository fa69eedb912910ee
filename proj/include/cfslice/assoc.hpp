#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "cfslice/perf.hpp"

namespace cfslice {

struct AssocInput {
  MatD beta;
  std::vector<double> w;
  std::vector<double> b;
  int tau_p = 1;
  int max_aps_per_ue = 0;  // 0 = uncapped

  int K() const { return beta.rows(); }
  int M() const { return beta.cols(); }
};

// Priority-based assignment: UEs in descending w_k b_k, APs in descending
// association potential w_k b_k beta_{k,m}; every AP below the tau_p load
// limit encountered in the scan is taken. A UE finding no spare capacity is
// force-assigned to its top-ranked AP, pushing that AP past tau_p.
Association associate_proposed(const AssocInput& in);

// Each UE, visited in a seeded random order, takes its n_serving strongest
// APs with spare capacity (n_serving <= 0 means every available AP); if all
// are full, the single strongest AP is force-assigned. n_serving = 1 is the
// alternating-optimization initializer.
Association associate_strongest(const MatD& beta, int tau_p, int n_serving,
                                Rng& order_rng);

using AssocObjective = std::function<double(const Association&)>;

// Exhaustive maximizer over binary matrices satisfying full coverage and the
// per-AP capacity limit; ties resolved toward the lexicographically smallest
// matrix (row-major). Requires K*M <= 16.
Association associate_bruteforce(const AssocInput& in, const AssocObjective& objective);

}  // namespace cfslice
