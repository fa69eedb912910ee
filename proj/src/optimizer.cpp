#include "cfslice/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace cfslice {

Scheme scheme_by_name(std::string_view name) {
  if (name == "proposed") return Scheme::proposed;
  if (name == "hybrid") return Scheme::hybrid;
  if (name == "baseline") return Scheme::baseline;
  throw std::invalid_argument("unknown scheme: " + std::string(name));
}

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::proposed: return "proposed";
    case Scheme::hybrid: return "hybrid";
    case Scheme::baseline: return "baseline";
  }
  return "?";
}

namespace {

AllocInput make_alloc_input(const Scenario& sc, const UeQuality& q) {
  AllocInput in;
  const int K = sc.config.K;
  in.w.resize(K);
  in.se = q.se;
  in.b_min = q.b_min;
  in.slice.resize(K);
  for (int k = 0; k < K; ++k) {
    in.w[k] = sc.profiles[k].w;
    in.slice[k] = sc.profiles[k].slice;
  }
  in.B_slice = sc.config.B_slice_hz;
  return in;
}

Association run_associator(std::string_view name, const Scenario& sc,
                           const ChannelState& st, const std::vector<double>& b,
                           Rng& order_rng) {
  if (name == "proposed") {
    AssocInput in;
    in.beta = st.ls.beta;
    in.b = b;
    in.w.resize(sc.config.K);
    for (int k = 0; k < sc.config.K; ++k) in.w[k] = sc.profiles[k].w;
    in.tau_p = sc.config.tau_p;
    in.max_aps_per_ue = sc.config.assoc.max_aps_per_ue;
    return associate_proposed(in);
  }
  if (name == "strongest")
    return associate_strongest(st.ls.beta, sc.config.tau_p, sc.config.assoc.n_serving,
                               order_rng);
  if (name == "bruteforce") {
    AssocInput in;
    in.beta = st.ls.beta;
    in.b = b;
    in.w.resize(sc.config.K);
    for (int k = 0; k < sc.config.K; ++k) in.w[k] = sc.profiles[k].w;
    in.tau_p = sc.config.tau_p;
    auto objective = [&](const Association& a) {
      const UeQuality q = compute_quality_reference(st, a, sc.profiles, sc.config);
      return weighted_sum_rate(b, q.se, sc.profiles);
    };
    return associate_bruteforce(in, objective);
  }
  throw std::invalid_argument("unknown associator: " + std::string(name));
}

}  // namespace

AoTrace run_ao(const Scenario& sc, const ChannelState& st,
               std::string_view alloc_name, std::string_view assoc_name) {
  const auto& cfg = sc.config;
  AllocatorFn alloc = allocator_by_name(alloc_name);
  const bool lp_mode = alloc_name == "lp_exact";

  // The initializer connects each UE to its strongest AP; a separate stream
  // keeps the visit order identical across schemes on the same scenario.
  Rng init_rng(derive_seed(cfg.seed, kStreamAssocOrder));
  Association assoc = associate_strongest(st.ls.beta, cfg.tau_p, 1, init_rng);

  AoTrace trace;
  double f_prev = 0.0;
  for (int i = 1; i <= cfg.i_max; ++i) {
    // (i) bandwidth with fixed association
    const UeQuality q = compute_quality(st, assoc, sc.profiles, cfg);
    const AllocInput alloc_in = make_alloc_input(sc, q);
    AllocOutcome out = alloc(alloc_in);
    bool fallback = false;
    if (lp_mode && !out.feasible) {
      out = allocate_greedy_fallback(alloc_in);
      fallback = true;
    }

    // (ii) association with fixed bandwidth
    Rng order_rng(derive_seed(cfg.seed, kStreamAssocOrder));
    assoc = run_associator(assoc_name, sc, st, out.b, order_rng);

    const UeQuality q_new = compute_quality(st, assoc, sc.profiles, cfg);
    AoIteration it;
    it.objective = weighted_sum_rate(out.b, q_new.se, sc.profiles);
    it.b = std::move(out.b);
    it.assoc = assoc;
    it.se = q_new.se;
    it.fallback_used = fallback;
    trace.iterations.push_back(std::move(it));
    trace.fallback_used = trace.fallback_used || fallback;

    const double f = trace.iterations.back().objective;
    if (std::fabs(f - f_prev) / std::max(f_prev, 1.0) < cfg.epsilon_ao) {
      trace.converged = true;
      trace.stop_reason = StopReason::epsilon;
      break;
    }
    trace.stop_reason = StopReason::i_max;
    f_prev = f;
  }
  trace.iterations_used = static_cast<int>(trace.iterations.size());
  trace.best_index = 0;
  for (int i = 1; i < trace.iterations_used; ++i)
    if (trace.iterations[i].objective > trace.iterations[trace.best_index].objective)
      trace.best_index = i;
  return trace;
}

SchemeResult run_scheme(const Scenario& sc, const ChannelState& st, Scheme scheme) {
  SchemeResult res;
  const auto t0 = std::chrono::steady_clock::now();
  switch (scheme) {
    case Scheme::proposed:
      res.trace = run_ao(sc, st, "proposed", "proposed");
      break;
    case Scheme::hybrid:
      res.trace = run_ao(sc, st, "lp_exact", "strongest");
      break;
    case Scheme::baseline: {
      // Single pass, no alternating loop.
      Rng order_rng(derive_seed(sc.config.seed, kStreamAssocOrder));
      Association assoc = associate_strongest(st.ls.beta, sc.config.tau_p,
                                              sc.config.assoc.n_serving, order_rng);
      const UeQuality q = compute_quality(st, assoc, sc.profiles, sc.config);
      AllocOutcome out = allocate_round_robin(make_alloc_input(sc, q));
      AoIteration it;
      it.objective = weighted_sum_rate(out.b, q.se, sc.profiles);
      it.b = std::move(out.b);
      it.assoc = std::move(assoc);
      it.se = q.se;
      res.trace.iterations.push_back(std::move(it));
      res.trace.iterations_used = 1;
      res.trace.converged = true;
      res.trace.stop_reason = StopReason::epsilon;
      res.trace.best_index = 0;
      break;
    }
  }
  const auto& best = res.trace.best();
  res.report = evaluate(st, best.assoc, best.b, sc.profiles, sc.config);
  res.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace cfslice
