#include "cfslice/perf.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cfslice {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kQosRelTol = 1e-9;
constexpr double kLn2 = 0.6931471805599453;
}  // namespace

void Association::recount_load() {
  load.assign(M(), 0);
  for (int k = 0; k < K(); ++k)
    for (int m = 0; m < M(); ++m) load[m] += a(k, m);
}

Allocation make_allocation(std::vector<double> b, const std::vector<UeProfile>& profiles,
                           const std::array<double, kNumSlices>& B_slice) {
  Allocation alloc;
  alloc.residual = B_slice;
  for (std::size_t k = 0; k < b.size(); ++k)
    alloc.residual[slice_index(profiles[k].slice)] -= b[k];
  for (double& r : alloc.residual) r = std::max(0.0, r);
  alloc.b = std::move(b);
  return alloc;
}

double gaussian_q(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double inverse_q(double theta) {
  if (!(theta > 0.0) || !(theta < 1.0))
    throw std::invalid_argument("inverse_q requires theta in (0,1)");
  // Bisection bracket, then Newton polish; Q is strictly decreasing.
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (gaussian_q(mid) > theta)
      lo = mid;
    else
      hi = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 4; ++i) {
    const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    if (pdf <= 0.0) break;
    x += (gaussian_q(x) - theta) / pdf;  // dQ/dx = -pdf
  }
  return x;
}

namespace {

// Shared core of both SINR forms: accumulates the three denominator terms
// over the serving set encoded as one row of membership flags.
struct SinrTerms {
  double gamma_sum = 0.0;       // sum_m gamma_{k,m}
  double beamform_unc = 0.0;    // sum_k' eta_d sum_m gamma_{k,m} beta_{k',m}
  double contamination = 0.0;   // co-pilot squared coherent term
};

template <typename Member>
SinrTerms accumulate_terms(int k, Member in_set, const ChannelState& st) {
  const int K = st.K(), M = st.M();
  SinrTerms t;
  for (int m = 0; m < M; ++m)
    if (in_set(m)) t.gamma_sum += st.gamma(k, m);
  for (int kp = 0; kp < K; ++kp) {
    double dot = 0.0;
    for (int m = 0; m < M; ++m)
      if (in_set(m)) dot += st.gamma(k, m) * st.ls.beta(kp, m);
    t.beamform_unc += st.eta_d[kp] * dot;
    if (kp != k && st.pilots.same_pilot(k, kp)) {
      double coh = 0.0;
      const double pr = std::sqrt(st.pilots.eta_p[kp] / st.pilots.eta_p[k]);
      for (int m = 0; m < M; ++m)
        if (in_set(m))
          coh += st.gamma(k, m) * pr * st.ls.beta(kp, m) / st.ls.beta(k, m);
      t.contamination += st.eta_d[kp] * coh * coh;
    }
  }
  return t;
}

}  // namespace

double sinr_subset(int k, std::span<const int> serving, const ChannelState& st,
                   double rho_d, int N) {
  if (serving.empty()) throw std::invalid_argument("sinr_subset: empty serving set");
  std::vector<std::uint8_t> member(st.M(), 0);
  for (int m : serving) member[m] = 1;
  const auto t = accumulate_terms(k, [&](int m) { return member[m] != 0; }, st);
  const double n = static_cast<double>(N);
  const double num = n * n * rho_d * st.eta_d[k] * t.gamma_sum * t.gamma_sum;
  const double den =
      n * rho_d * t.beamform_unc + n * n * rho_d * t.contamination + n * t.gamma_sum;
  return num / den;
}

double sinr_matrix(int k, const Association& assoc, const ChannelState& st,
                   double rho_d, int N) {
  bool any = false;
  for (int m = 0; m < assoc.M() && !any; ++m) any = assoc.a(k, m) != 0;
  if (!any) throw std::invalid_argument("sinr_matrix: empty association row");
  const auto t = accumulate_terms(k, [&](int m) { return assoc.a(k, m) != 0; }, st);
  const double n = static_cast<double>(N);
  const double num = n * rho_d * st.eta_d[k] * t.gamma_sum * t.gamma_sum;
  const double den = rho_d * t.beamform_unc + n * rho_d * t.contamination + t.gamma_sum;
  return num / den;
}

double spectral_efficiency(double sinr, const UeProfile& prof, const SystemConfig& cfg) {
  const double prelog = 1.0 - static_cast<double>(cfg.tau_p) / cfg.tau_c;
  const double cap = std::log2(1.0 + sinr);
  if (prof.slice == Slice::embb) return prelog * cap;
  const double one_plus = 1.0 + sinr;
  const double dispersion = 1.0 - 1.0 / (one_plus * one_plus);
  const double penalty =
      std::sqrt(dispersion / prof.packet_bits()) * inverse_q(cfg.theta) / kLn2;
  return prelog * std::max(0.0, cap - penalty);
}

double min_bandwidth(double se, const UeProfile& prof) {
  if (se <= 0.0) return kInf;
  if (prof.slice == Slice::urllc)
    return prof.packet_bits() * (prof.lambda_pps + 1.0 / prof.D_max_s) / se;
  return prof.R_min_bps / se;
}

double packet_delay(double rate_bps, const UeProfile& prof) {
  if (prof.slice != Slice::urllc)
    throw std::invalid_argument("packet_delay is defined for URLLC UEs only");
  const double mu = rate_bps / prof.packet_bits();
  if (mu <= prof.lambda_pps) return kInf;  // unstable queue
  return 1.0 / (mu - prof.lambda_pps);
}

bool qos_satisfied(double rate_bps, const UeProfile& prof) {
  if (prof.slice == Slice::urllc) {
    const double needed = prof.lambda_pps + 1.0 / prof.D_max_s;
    return rate_bps / prof.packet_bits() >= needed * (1.0 - kQosRelTol);
  }
  return rate_bps >= prof.R_min_bps * (1.0 - kQosRelTol);
}

namespace {

void quality_row(int k, const ChannelState& st, const Association& assoc,
                 const std::vector<UeProfile>& profiles, const SystemConfig& cfg,
                 UeQuality& out) {
  out.sinr[k] = sinr_matrix(k, assoc, st, cfg.rho_d_norm(), cfg.N);
  out.se[k] = spectral_efficiency(out.sinr[k], profiles[k], cfg);
  out.b_min[k] = min_bandwidth(out.se[k], profiles[k]);
}

}  // namespace

namespace {

// Throwing inside the parallel loop would terminate, so shape and coverage
// problems are rejected up front.
void check_eval_inputs(const ChannelState& st, const Association& assoc,
                       const std::vector<UeProfile>& profiles) {
  const int K = st.K();
  if (assoc.K() != K || assoc.M() != st.M() ||
      static_cast<int>(profiles.size()) != K)
    throw std::invalid_argument("evaluation inputs disagree on K or M");
  for (int k = 0; k < K; ++k) {
    bool any = false;
    for (int m = 0; m < assoc.M() && !any; ++m) any = assoc.a(k, m) != 0;
    if (!any) throw std::invalid_argument("evaluation needs every UE associated");
  }
}

}  // namespace

UeQuality compute_quality(const ChannelState& st, const Association& assoc,
                          const std::vector<UeProfile>& profiles,
                          const SystemConfig& cfg) {
  check_eval_inputs(st, assoc, profiles);
  const int K = st.K();
  UeQuality q{std::vector<double>(K), std::vector<double>(K), std::vector<double>(K)};
#pragma omp parallel for schedule(static)
  for (int k = 0; k < K; ++k) quality_row(k, st, assoc, profiles, cfg, q);
  return q;
}

UeQuality compute_quality_reference(const ChannelState& st, const Association& assoc,
                                    const std::vector<UeProfile>& profiles,
                                    const SystemConfig& cfg) {
  check_eval_inputs(st, assoc, profiles);
  const int K = st.K();
  UeQuality q{std::vector<double>(K), std::vector<double>(K), std::vector<double>(K)};
  for (int k = 0; k < K; ++k) quality_row(k, st, assoc, profiles, cfg, q);
  return q;
}

double weighted_sum_rate(const std::vector<double>& b, const std::vector<double>& se,
                         const std::vector<UeProfile>& profiles) {
  double acc = 0.0;  // fixed-order sum keeps runs reproducible
  for (std::size_t k = 0; k < b.size(); ++k) acc += profiles[k].w * b[k] * se[k];
  return acc;
}

namespace {

EvalReport assemble_report(const UeQuality& q, const std::vector<double>& b,
                           const std::vector<UeProfile>& profiles) {
  const int K = static_cast<int>(b.size());
  EvalReport r;
  r.sinr = q.sinr;
  r.se = q.se;
  r.b_min = q.b_min;
  r.rate.resize(K);
  r.delay.assign(K, std::numeric_limits<double>::quiet_NaN());
  r.qos_ok.resize(K);
  std::array<int, kNumSlices> total{}, passed{};
  for (int k = 0; k < K; ++k) {
    r.rate[k] = b[k] * q.se[k];
    if (profiles[k].slice == Slice::urllc) r.delay[k] = packet_delay(r.rate[k], profiles[k]);
    r.qos_ok[k] = qos_satisfied(r.rate[k], profiles[k]) ? 1 : 0;
    const int s = slice_index(profiles[k].slice);
    ++total[s];
    passed[s] += r.qos_ok[k];
  }
  r.weighted_sum_rate = weighted_sum_rate(b, q.se, profiles);
  for (int s = 0; s < kNumSlices; ++s)
    r.success_rate[s] = total[s] > 0
                            ? static_cast<double>(passed[s]) / total[s]
                            : std::numeric_limits<double>::quiet_NaN();
  return r;
}

}  // namespace

EvalReport evaluate(const ChannelState& st, const Association& assoc,
                    const std::vector<double>& b,
                    const std::vector<UeProfile>& profiles, const SystemConfig& cfg) {
  if (b.size() != profiles.size())
    throw std::invalid_argument("evaluate: b and profiles disagree on K");
  return assemble_report(compute_quality(st, assoc, profiles, cfg), b, profiles);
}

EvalReport evaluate_reference(const ChannelState& st, const Association& assoc,
                              const std::vector<double>& b,
                              const std::vector<UeProfile>& profiles,
                              const SystemConfig& cfg) {
  return assemble_report(compute_quality_reference(st, assoc, profiles, cfg), b,
                         profiles);
}

FeasibilityReport feasibility(const ChannelState& st, const Association& assoc,
                              const std::vector<UeProfile>& profiles,
                              const std::array<double, kNumSlices>& B_slice,
                              const SystemConfig& cfg) {
  const auto q = compute_quality(st, assoc, profiles, cfg);
  FeasibilityReport rep;
  rep.b_min = q.b_min;
  rep.slice_feasible = {true, true};
  for (std::size_t k = 0; k < profiles.size(); ++k) {
    const int s = slice_index(profiles[k].slice);
    rep.demand[s] += q.b_min[k];
    if (std::isinf(q.b_min[k])) rep.slice_feasible[s] = false;
  }
  for (int s = 0; s < kNumSlices; ++s)
    if (rep.demand[s] > B_slice[s]) rep.slice_feasible[s] = false;
  rep.feasible = rep.slice_feasible[0] && rep.slice_feasible[1];
  return rep;
}

}  // namespace cfslice
