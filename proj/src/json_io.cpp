#include "cfslice/json_io.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "cfslice/alloc.hpp"

namespace cfslice {

namespace {

// Pulls known keys out of an object and rejects leftovers.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj.is_object()) throw ConfigError(path_ + ": expected a JSON object");
  }

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (auto it = obj_.find(key); it != obj_.end()) {
      try {
        out = it->get<T>();
      } catch (const json::exception&) {
        throw ConfigError(path_ + "." + key + ": wrong type");
      }
    }
  }

  const json* child(const char* key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it != obj_.end() ? &*it : nullptr;
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it)
      if (!seen_.contains(it.key()))
        throw ConfigError(path_ + ": unknown key '" + it.key() + "'");
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

Interval read_interval(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(path + ": expected [lo, hi]");
  Interval iv{j[0].get<double>(), j[1].get<double>()};
  if (iv.hi < iv.lo) throw ConfigError(path + ": empty interval");
  return iv;
}

json interval_to_json(const Interval& iv) { return json::array({iv.lo, iv.hi}); }

// Trial dumps serialize missing samples (empty-slice success rates) as null.
double null_as_nan(const json& v) {
  return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

json finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

json vector_to_json(const std::vector<double>& v, bool nullify_nonfinite = false) {
  json arr = json::array();
  for (double x : v) arr.push_back(nullify_nonfinite ? finite_or_null(x) : json(x));
  return arr;
}

std::vector<double> vector_from_json(const json& arr, bool allow_null = false) {
  std::vector<double> v;
  for (const auto& x : arr) v.push_back(allow_null ? null_as_nan(x) : x.get<double>());
  return v;
}

json mat_to_json(const MatD& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatD mat_from_json(const json& rows) {
  const int R = static_cast<int>(rows.size());
  const int C = R > 0 ? static_cast<int>(rows[0].size()) : 0;
  MatD m(R, C);
  for (int r = 0; r < R; ++r)
    for (int c = 0; c < C; ++c) m(r, c) = rows[r][c].get<double>();
  return m;
}

}  // namespace

RunSettings parse_run_settings(const json& doc) {
  RunSettings rs;
  ObjectReader top(doc, "config");
  top.get("area_side_m", rs.config.area_side_m);
  top.get("M", rs.config.M);
  top.get("N", rs.config.N);
  top.get("K", rs.config.K);
  top.get("tau_p", rs.config.tau_p);
  top.get("tau_c", rs.config.tau_c);
  top.get("rho_p", rs.config.rho_p);
  top.get("rho_d", rs.config.rho_d);
  top.get("noise_power_dbm", rs.config.noise_power_dbm);
  top.get("sigma_sh_db", rs.config.sigma_sh_db);
  top.get("B_total_hz", rs.config.B_total_hz);
  if (const json* b = top.child("B_slice_hz")) {
    if (!b->is_array() || b->size() != kNumSlices)
      throw ConfigError("config.B_slice_hz: expected an array of " +
                        std::to_string(kNumSlices) + " budgets");
    for (int s = 0; s < kNumSlices; ++s) rs.config.B_slice_hz[s] = (*b)[s].get<double>();
  }
  top.get("theta", rs.config.theta);
  top.get("epsilon_ao", rs.config.epsilon_ao);
  top.get("i_max", rs.config.i_max);
  top.get("seed", rs.config.seed);

  if (const json* pl = top.child("pathloss")) {
    ObjectReader r(*pl, "config.pathloss");
    r.get("d0_m", rs.config.pathloss.d0_m);
    r.get("d1_m", rs.config.pathloss.d1_m);
    r.get("f_mhz", rs.config.pathloss.f_mhz);
    r.get("h_ap_m", rs.config.pathloss.h_ap_m);
    r.get("h_ue_m", rs.config.pathloss.h_ue_m);
    r.get("min_dist_m", rs.config.pathloss.min_dist_m);
    r.finish();
  }
  if (const json* pw = top.child("power")) {
    ObjectReader r(*pw, "config.power");
    r.get("kappa", rs.config.power.kappa);
    r.finish();
  }
  if (const json* as = top.child("assoc")) {
    ObjectReader r(*as, "config.assoc");
    r.get("n_serving", rs.config.assoc.n_serving);
    r.get("max_aps_per_ue", rs.config.assoc.max_aps_per_ue);
    r.finish();
  }
  if (const json* mx = top.child("slice_mix")) {
    ObjectReader r(*mx, "config.slice_mix");
    r.get("embb", rs.mix.embb);
    r.get("urllc", rs.mix.urllc);
    r.finish();
  }
  if (const json* tr = top.child("traffic")) {
    ObjectReader r(*tr, "config.traffic");
    if (const json* u = r.child("urllc")) {
      ObjectReader ru(*u, "config.traffic.urllc");
      if (const json* v = ru.child("L_bytes"))
        rs.traffic.urllc_L_bytes = read_interval(*v, "config.traffic.urllc.L_bytes");
      if (const json* v = ru.child("lambda_pps"))
        rs.traffic.urllc_lambda_pps = read_interval(*v, "config.traffic.urllc.lambda_pps");
      if (const json* v = ru.child("D_max_s"))
        rs.traffic.urllc_D_max_s = read_interval(*v, "config.traffic.urllc.D_max_s");
      if (const json* v = ru.child("w"))
        rs.traffic.urllc_w = read_interval(*v, "config.traffic.urllc.w");
      ru.finish();
    }
    if (const json* e = r.child("embb")) {
      ObjectReader re(*e, "config.traffic.embb");
      re.get("premium_fraction", rs.traffic.premium_fraction);
      if (const json* v = re.child("premium_R_min_bps"))
        rs.traffic.premium_R_min_bps =
            read_interval(*v, "config.traffic.embb.premium_R_min_bps");
      re.get("premium_w", rs.traffic.premium_w);
      if (const json* v = re.child("standard_R_min_bps"))
        rs.traffic.standard_R_min_bps =
            read_interval(*v, "config.traffic.embb.standard_R_min_bps");
      re.get("standard_w", rs.traffic.standard_w);
      re.finish();
    }
    r.finish();
  }
  top.get("allocator", rs.allocator);
  top.get("associator", rs.associator);
  top.finish();

  if (!rs.allocator.empty()) {
    try {
      allocator_by_name(rs.allocator);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (!rs.associator.empty() && rs.associator != "proposed" &&
      rs.associator != "strongest" && rs.associator != "bruteforce")
    throw ConfigError("unknown associator: " + rs.associator);

  try {
    rs.config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return rs;
}

namespace {

json config_to_json(const SystemConfig& c) {
  return {
      {"area_side_m", c.area_side_m},
      {"M", c.M},
      {"N", c.N},
      {"K", c.K},
      {"tau_p", c.tau_p},
      {"tau_c", c.tau_c},
      {"rho_p", c.rho_p},
      {"rho_d", c.rho_d},
      {"noise_power_dbm", c.noise_power_dbm},
      {"sigma_sh_db", c.sigma_sh_db},
      {"B_total_hz", c.B_total_hz},
      {"B_slice_hz", {c.B_slice_hz[0], c.B_slice_hz[1]}},
      {"theta", c.theta},
      {"epsilon_ao", c.epsilon_ao},
      {"i_max", c.i_max},
      {"seed", c.seed},
      {"pathloss",
       {{"d0_m", c.pathloss.d0_m},
        {"d1_m", c.pathloss.d1_m},
        {"f_mhz", c.pathloss.f_mhz},
        {"h_ap_m", c.pathloss.h_ap_m},
        {"h_ue_m", c.pathloss.h_ue_m},
        {"min_dist_m", c.pathloss.min_dist_m}}},
      {"power", {{"kappa", c.power.kappa}}},
      {"assoc",
       {{"n_serving", c.assoc.n_serving}, {"max_aps_per_ue", c.assoc.max_aps_per_ue}}},
  };
}

}  // namespace

json run_settings_to_json(const RunSettings& rs) {
  json doc = config_to_json(rs.config);
  if (!rs.allocator.empty()) doc["allocator"] = rs.allocator;
  if (!rs.associator.empty()) doc["associator"] = rs.associator;
  doc["slice_mix"] = {{"embb", rs.mix.embb}, {"urllc", rs.mix.urllc}};
  doc["traffic"] = {
      {"urllc",
       {{"L_bytes", interval_to_json(rs.traffic.urllc_L_bytes)},
        {"lambda_pps", interval_to_json(rs.traffic.urllc_lambda_pps)},
        {"D_max_s", interval_to_json(rs.traffic.urllc_D_max_s)},
        {"w", interval_to_json(rs.traffic.urllc_w)}}},
      {"embb",
       {{"premium_fraction", rs.traffic.premium_fraction},
        {"premium_R_min_bps", interval_to_json(rs.traffic.premium_R_min_bps)},
        {"premium_w", rs.traffic.premium_w},
        {"standard_R_min_bps", interval_to_json(rs.traffic.standard_R_min_bps)},
        {"standard_w", rs.traffic.standard_w}}},
  };
  return doc;
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override '" + assignment + "' is not of the form key=value");
  std::string path = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);
  if (path.rfind("config.", 0) == 0) path = path.substr(7);

  json* node = &doc;
  std::size_t pos = 0;
  std::string walked;
  while (true) {
    const auto dot = path.find('.', pos);
    const std::string key = path.substr(pos, dot - pos);
    walked += (walked.empty() ? "" : ".") + key;
    if (!node->is_object() || !node->contains(key))
      throw ConfigError("override path '" + walked + "' does not exist");
    node = &(*node)[key];
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  const json parsed = json::parse(value, nullptr, false);
  *node = parsed.is_discarded() ? json(value) : parsed;
}

json scenario_to_json(const Scenario& sc) {
  json doc;
  doc["config"] = config_to_json(sc.config);
  json aps = json::array(), ues = json::array();
  for (const auto& p : sc.ap_pos) aps.push_back({p[0], p[1]});
  for (const auto& p : sc.ue_pos) ues.push_back({p[0], p[1]});
  doc["ap_positions"] = std::move(aps);
  doc["ue_positions"] = std::move(ues);
  json profs = json::array();
  for (const auto& p : sc.profiles) {
    json j{{"slice", p.slice == Slice::embb ? "embb" : "urllc"}, {"w", p.w}};
    if (p.slice == Slice::urllc) {
      j["L_bytes"] = p.L_bytes;
      j["lambda_pps"] = p.lambda_pps;
      j["D_max_s"] = p.D_max_s;
    } else {
      j["R_min_bps"] = p.R_min_bps;
      j["tier"] = p.premium ? "premium" : "standard";
    }
    profs.push_back(std::move(j));
  }
  doc["profiles"] = std::move(profs);
  return doc;
}

json channel_to_json(const ChannelState& st) {
  json doc;
  doc["beta"] = mat_to_json(st.ls.beta);
  doc["pl_db"] = mat_to_json(st.ls.pl_db);
  doc["shadow_db"] = mat_to_json(st.ls.shadow_db);
  doc["gamma"] = mat_to_json(st.gamma);
  doc["c"] = mat_to_json(st.c);
  doc["pilot_id"] = st.pilots.pilot_id;
  doc["eta_p"] = st.pilots.eta_p;
  doc["eta_d"] = st.eta_d;
  return doc;
}

ChannelState channel_from_json(const json& doc) {
  ObjectReader r(doc, "channel");
  ChannelState st;
  if (const json* v = r.child("beta")) st.ls.beta = mat_from_json(*v);
  if (const json* v = r.child("pl_db")) st.ls.pl_db = mat_from_json(*v);
  if (const json* v = r.child("shadow_db")) st.ls.shadow_db = mat_from_json(*v);
  if (const json* v = r.child("gamma")) st.gamma = mat_from_json(*v);
  if (const json* v = r.child("c")) st.c = mat_from_json(*v);
  if (const json* v = r.child("pilot_id")) st.pilots.pilot_id = v->get<std::vector<int>>();
  if (const json* v = r.child("eta_p")) st.pilots.eta_p = v->get<std::vector<double>>();
  if (const json* v = r.child("eta_d")) st.eta_d = v->get<std::vector<double>>();
  r.finish();
  if (st.ls.beta.rows() == 0 || st.gamma.rows() != st.ls.beta.rows())
    throw ConfigError("channel fixture needs consistent beta and gamma");
  return st;
}

json association_to_json(const Association& assoc) {
  json pairs = json::array();
  for (int k = 0; k < assoc.K(); ++k)
    for (int m = 0; m < assoc.M(); ++m)
      if (assoc.a(k, m)) pairs.push_back({k, m});
  return json{{"K", assoc.K()},
              {"M", assoc.M()},
              {"pairs", std::move(pairs)},
              {"emergency_count", assoc.emergency_count}};
}

Association association_from_json(const json& doc) {
  Association assoc;
  const int K = doc.at("K").get<int>();
  const int M = doc.at("M").get<int>();
  assoc.a = MatU8(K, M, 0);
  for (const auto& p : doc.at("pairs")) assoc.a(p[0].get<int>(), p[1].get<int>()) = 1;
  assoc.emergency_count = doc.value("emergency_count", 0);
  assoc.recount_load();
  return assoc;
}

json report_to_json(const EvalReport& report) {
  json doc;
  doc["sinr"] = vector_to_json(report.sinr);
  doc["se"] = vector_to_json(report.se);
  doc["rate"] = vector_to_json(report.rate);
  doc["delay"] = vector_to_json(report.delay, true);
  doc["b_min"] = vector_to_json(report.b_min, true);
  doc["qos_ok"] = json::array();
  for (auto q : report.qos_ok) doc["qos_ok"].push_back(q != 0);
  doc["weighted_sum_rate"] = report.weighted_sum_rate;
  doc["success_rate"] = {
      {"embb", finite_or_null(report.success_rate[slice_index(Slice::embb)])},
      {"urllc", finite_or_null(report.success_rate[slice_index(Slice::urllc)])}};
  return doc;
}

json trace_to_json(const AoTrace& trace) {
  json iters = json::array();
  for (const auto& it : trace.iterations)
    iters.push_back({{"objective", it.objective},
                     {"b", vector_to_json(it.b)},
                     {"association", association_to_json(it.assoc)},
                     {"se", vector_to_json(it.se)},
                     {"fallback_used", it.fallback_used}});
  return json{{"iterations", std::move(iters)},
              {"iterations_used", trace.iterations_used},
              {"converged", trace.converged},
              {"stop_reason", trace.stop_reason == StopReason::epsilon ? "epsilon" : "i_max"},
              {"best_index", trace.best_index},
              {"fallback_used", trace.fallback_used}};
}

json sweep_result_to_json(const SweepResult& result) {
  json doc;
  doc["schema_version"] = result.schema_version;
  doc["seed"] = result.seed;
  doc["n_trials"] = result.n_trials;
  doc["K_values"] = result.K_values;
  json schemes = json::array();
  for (Scheme s : result.schemes) schemes.push_back(std::string(scheme_name(s)));
  doc["schemes"] = std::move(schemes);
  doc["nondeterministic_metrics"] = {"wall_time_s"};
  json cells = json::array();
  for (int K : result.K_values)
    for (Scheme s : result.schemes) {
      json metrics;
      for (const auto& name : sweep_metrics()) {
        const auto& st = result.at(K, s, name);
        metrics[name] = {{"mean", st.mean}, {"stderr", st.stderr_}, {"n", st.n}};
      }
      cells.push_back(
          {{"K", K}, {"scheme", std::string(scheme_name(s))}, {"metrics", metrics}});
    }
  doc["cells"] = std::move(cells);
  if (!result.trials.empty()) {
    json trials = json::array();
    for (const auto& t : result.trials)
      trials.push_back({{"K", t.K},
                        {"trial", t.trial},
                        {"scheme", std::string(scheme_name(t.scheme))},
                        {"values", vector_to_json(t.values, true)}});
    doc["trials"] = std::move(trials);
  }
  return doc;
}

SweepResult sweep_result_from_json(const json& doc) {
  SweepResult result;
  result.schema_version = doc.at("schema_version").get<int>();
  result.seed = doc.at("seed").get<std::uint64_t>();
  result.n_trials = doc.at("n_trials").get<int>();
  result.K_values = doc.at("K_values").get<std::vector<int>>();
  for (const auto& s : doc.at("schemes"))
    result.schemes.push_back(scheme_by_name(s.get<std::string>()));
  for (const auto& cell : doc.at("cells")) {
    std::map<std::string, MetricStats> metrics;
    for (const auto& name : sweep_metrics()) {
      const auto& m = cell.at("metrics").at(name);
      metrics[name] = {m.at("mean").get<double>(), m.at("stderr").get<double>(),
                       m.at("n").get<int>()};
    }
    result.cells[{cell.at("K").get<int>(), cell.at("scheme").get<std::string>()}] =
        std::move(metrics);
  }
  if (doc.contains("trials")) {
    for (const auto& t : doc.at("trials")) {
      TrialRecord rec;
      rec.K = t.at("K").get<int>();
      rec.trial = t.at("trial").get<int>();
      rec.scheme = scheme_by_name(t.at("scheme").get<std::string>());
      rec.values = vector_from_json(t.at("values"), true);
      result.trials.push_back(std::move(rec));
    }
  }
  return result;
}

json gain_table_to_json(const GainTable& table) {
  auto gains_to_json = [](const SchemeGains& g) {
    return json{{"K", g.K},
                {"wsr_gain_vs_baseline", finite_or_null(g.wsr_gain)},
                {"succ_embb_gain_vs_baseline", finite_or_null(g.succ_embb_gain)},
                {"succ_urllc_gain_vs_baseline", finite_or_null(g.succ_urllc_gain)},
                {"runtime_reduction_vs_hybrid", finite_or_null(g.runtime_reduction)},
                {"succ_embb_gain_vs_hybrid", finite_or_null(g.succ_embb_gain_vs_hybrid)},
                {"succ_urllc_gain_vs_hybrid", finite_or_null(g.succ_urllc_gain_vs_hybrid)}};
  };
  json per_k = json::array();
  for (const auto& g : table.per_k) per_k.push_back(gains_to_json(g));
  json mx = gains_to_json(table.max_over_k);
  mx.erase("K");
  return json{{"per_K", std::move(per_k)}, {"max_over_K", std::move(mx)}};
}

}  // namespace cfslice
