#include "cfslice/assoc.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cfslice {

namespace {

Association empty_association(int K, int M) {
  Association a;
  a.a = MatU8(K, M, 0);
  a.load.assign(M, 0);
  return a;
}

}  // namespace

Association associate_proposed(const AssocInput& in) {
  const int K = in.K(), M = in.M();
  if (K < 1 || M < 1 || in.tau_p < 1)
    throw std::invalid_argument("associate_proposed needs K, M, tau_p >= 1");
  Association assoc = empty_association(K, M);

  // Pi_k = w_k b_k, descending; ties by ascending UE index.
  std::vector<int> ue_order(K);
  std::iota(ue_order.begin(), ue_order.end(), 0);
  std::vector<double> priority(K);
  for (int k = 0; k < K; ++k) priority[k] = in.w[k] * in.b[k];
  std::stable_sort(ue_order.begin(), ue_order.end(), [&](int a, int b) {
    if (priority[a] != priority[b]) return priority[a] > priority[b];
    return a < b;
  });

  std::vector<int> ap_order(M);
  for (int k : ue_order) {
    // Xi_{k,m} = w_k b_k beta_{k,m}, descending; ties (including the all-zero
    // row when b_k = 0) broken by descending beta, then ascending AP index.
    std::iota(ap_order.begin(), ap_order.end(), 0);
    std::stable_sort(ap_order.begin(), ap_order.end(), [&](int ma, int mb) {
      const double xa = priority[k] * in.beta(k, ma);
      const double xb = priority[k] * in.beta(k, mb);
      if (xa != xb) return xa > xb;
      if (in.beta(k, ma) != in.beta(k, mb)) return in.beta(k, ma) > in.beta(k, mb);
      return ma < mb;
    });

    int n_assigned = 0;
    for (int m : ap_order) {
      if (in.max_aps_per_ue > 0 && n_assigned >= in.max_aps_per_ue) break;
      if (assoc.load[m] < in.tau_p) {
        assoc.a(k, m) = 1;
        ++assoc.load[m];
        ++n_assigned;
      }
    }
    if (n_assigned == 0) {
      // Additional assignment: connectivity outranks the capacity limit.
      const int m_star = ap_order.front();
      assoc.a(k, m_star) = 1;
      ++assoc.load[m_star];
      ++assoc.emergency_count;
    }
  }
  return assoc;
}

Association associate_strongest(const MatD& beta, int tau_p, int n_serving,
                                Rng& order_rng) {
  const int K = beta.rows(), M = beta.cols();
  Association assoc = empty_association(K, M);
  const int want = n_serving <= 0 ? M : n_serving;

  // Seeded Fisher-Yates visit order.
  std::vector<int> ue_order(K);
  std::iota(ue_order.begin(), ue_order.end(), 0);
  for (int i = K - 1; i > 0; --i)
    std::swap(ue_order[i], ue_order[order_rng.uniform_int(i + 1)]);

  std::vector<int> ap_order(M);
  for (int k : ue_order) {
    std::iota(ap_order.begin(), ap_order.end(), 0);
    std::stable_sort(ap_order.begin(), ap_order.end(), [&](int ma, int mb) {
      if (beta(k, ma) != beta(k, mb)) return beta(k, ma) > beta(k, mb);
      return ma < mb;
    });
    int n_assigned = 0;
    for (int m : ap_order) {
      if (n_assigned >= want) break;
      if (assoc.load[m] < tau_p) {
        assoc.a(k, m) = 1;
        ++assoc.load[m];
        ++n_assigned;
      }
    }
    if (n_assigned == 0) {
      const int m_star = ap_order.front();
      assoc.a(k, m_star) = 1;
      ++assoc.load[m_star];
      ++assoc.emergency_count;
    }
  }
  return assoc;
}

Association associate_bruteforce(const AssocInput& in, const AssocObjective& objective) {
  const int K = in.K(), M = in.M();
  if (K * M > 16)
    throw std::invalid_argument("associate_bruteforce is limited to K*M <= 16");

  Association best = empty_association(K, M);
  double best_obj = -1.0;
  bool found = false;

  // a(0,0) maps to the most significant bit, so ascending integers walk the
  // matrices in row-major lexicographic order.
  const std::uint64_t count = 1ULL << (K * M);
  Association cand = empty_association(K, M);
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    bool ok = true;
    std::fill(cand.load.begin(), cand.load.end(), 0);
    for (int k = 0; k < K && ok; ++k) {
      int row = 0;
      for (int m = 0; m < M; ++m) {
        const int v = static_cast<int>((bits >> (K * M - 1 - (k * M + m))) & 1ULL);
        cand.a(k, m) = static_cast<std::uint8_t>(v);
        row += v;
        cand.load[m] += v;
        if (cand.load[m] > in.tau_p) ok = false;
      }
      if (row < 1) ok = false;  // full coverage
    }
    if (!ok) continue;
    const double obj = objective(cand);
    // Strict improvement keeps the first (lexicographically smallest) maximizer.
    if (!found || obj > best_obj) {
      best = cand;
      best_obj = obj;
      found = true;
    }
  }
  if (!found) throw std::runtime_error("no feasible association exists (K > M * tau_p)");
  return best;
}

}  // namespace cfslice
