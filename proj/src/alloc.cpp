#include "cfslice/alloc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cfslice {

namespace {

std::vector<int> slice_members(const AllocInput& in, Slice s) {
  std::vector<int> out;
  for (int k = 0; k < in.K(); ++k)
    if (in.slice[k] == s) out.push_back(k);
  return out;
}

// Descending key with ascending UE index on ties.
std::vector<int> sort_desc(std::vector<int> ues, const std::vector<double>& key) {
  std::stable_sort(ues.begin(), ues.end(), [&](int a, int b) {
    if (key[a] != key[b]) return key[a] > key[b];
    return a < b;
  });
  return ues;
}

}  // namespace

double efficiency_metric(double w, double se, double b_min) {
  if (!(b_min > 0)) throw std::invalid_argument("efficiency_metric requires b_min > 0");
  if (se <= 0.0 || std::isinf(b_min)) return 0.0;
  return w * se / b_min;
}

AllocOutcome allocate_proposed(const AllocInput& in) {
  const int K = in.K();
  AllocOutcome out;
  out.b.assign(K, 0.0);
  out.admitted.assign(K, 0);

  std::vector<double> zeta(K);
  for (int k = 0; k < K; ++k)
    zeta[k] = efficiency_metric(in.w[k], in.se[k], in.b_min[k]);

  std::array<double, kNumSlices> rem = in.B_slice;

  // Stage 1 and 2: greedy admission at b_min, URLLC first. The budget check
  // naturally rejects infinite demands.
  for (Slice s : {Slice::urllc, Slice::embb}) {
    const int si = slice_index(s);
    for (int k : sort_desc(slice_members(in, s), zeta)) {
      if (rem[si] >= in.b_min[k]) {
        out.b[k] = in.b_min[k];
        out.admitted[k] = 1;
        rem[si] -= in.b_min[k];
      }
    }
  }

  // Stage 3: residual spread over the admitted set, proportional to zeta.
  for (int si = 0; si < kNumSlices; ++si) {
    double zeta_total = 0.0;
    int admitted_count = 0;
    for (int k = 0; k < K; ++k)
      if (out.admitted[k] && slice_index(in.slice[k]) == si) {
        zeta_total += zeta[k];
        ++admitted_count;
      }
    if (rem[si] > 0.0 && admitted_count > 0) {
      for (int k = 0; k < K; ++k)
        if (out.admitted[k] && slice_index(in.slice[k]) == si)
          out.b[k] += rem[si] * zeta[k] / zeta_total;
      out.residual_used[si] = rem[si];
    }
  }
  return out;
}

AllocOutcome allocate_lp_exact(const AllocInput& in) {
  const int K = in.K();
  AllocOutcome out;
  out.b.assign(K, 0.0);
  out.admitted.assign(K, 0);

  for (int si = 0; si < kNumSlices; ++si) {
    double demand = 0.0;
    for (int k = 0; k < K; ++k)
      if (slice_index(in.slice[k]) == si) demand += in.b_min[k];
    if (demand > in.B_slice[si]) {  // covers infinite demands too
      out.feasible = false;
      out.b.assign(K, 0.0);
      out.admitted.assign(K, 0);
      out.residual_used = {};
      return out;
    }
  }

  // Feasible: b = b_min everywhere, full residual to the best w*se UE of
  // each slice (lowest index on ties); optimal because the objective is
  // linear in b with one budget constraint per slice.
  for (int si = 0; si < kNumSlices; ++si) {
    double rem = in.B_slice[si];
    int best = -1;
    for (int k = 0; k < K; ++k) {
      if (slice_index(in.slice[k]) != si) continue;
      out.b[k] = in.b_min[k];
      out.admitted[k] = 1;
      rem -= in.b_min[k];
      if (best < 0 || in.w[k] * in.se[k] > in.w[best] * in.se[best]) best = k;
    }
    if (best >= 0 && rem > 0.0) {
      out.b[best] += rem;
      out.residual_used[si] = rem;
    }
  }
  return out;
}

AllocOutcome allocate_greedy_fallback(const AllocInput& in) {
  const int K = in.K();
  AllocOutcome out;
  out.b.assign(K, 0.0);
  out.admitted.assign(K, 0);

  std::vector<double> value(K);
  for (int k = 0; k < K; ++k) value[k] = in.w[k] * in.se[k];

  for (Slice s : {Slice::embb, Slice::urllc}) {
    const int si = slice_index(s);
    double rem = in.B_slice[si];
    int first_admitted = -1;
    for (int k : sort_desc(slice_members(in, s), value)) {
      if (std::isinf(in.b_min[k]) || rem <= 0.0) continue;
      const double grant = std::min(in.b_min[k], rem);
      out.b[k] = grant;
      rem -= grant;
      if (grant >= in.b_min[k]) {
        out.admitted[k] = 1;
        if (first_admitted < 0) first_admitted = k;
      }
    }
    if (rem > 0.0 && first_admitted >= 0) {
      out.b[first_admitted] += rem;
      out.residual_used[si] = rem;
    }
  }
  return out;
}

AllocOutcome allocate_round_robin(const AllocInput& in) {
  const int K = in.K();
  AllocOutcome out;
  out.b.assign(K, 0.0);
  out.admitted.assign(K, 0);
  for (int si = 0; si < kNumSlices; ++si) {
    const auto members = slice_members(in, static_cast<Slice>(si));
    if (members.empty()) continue;
    const double share = in.B_slice[si] / static_cast<double>(members.size());
    for (int k : members) {
      out.b[k] = share;
      out.admitted[k] = share > 0.0 ? 1 : 0;
    }
  }
  return out;
}

AllocatorFn allocator_by_name(std::string_view name) {
  if (name == "proposed") return &allocate_proposed;
  if (name == "lp_exact") return &allocate_lp_exact;
  if (name == "greedy_fallback") return &allocate_greedy_fallback;
  if (name == "round_robin") return &allocate_round_robin;
  throw std::invalid_argument("unknown allocator: " + std::string(name));
}

}  // namespace cfslice
