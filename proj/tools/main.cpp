#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cfslice/json_io.hpp"
#include "validate.hpp"

using namespace cfslice;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

json load_config_doc(const std::string& path) {
  if (path.empty()) return run_settings_to_json(RunSettings{});  // built-in defaults
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("config file is not valid JSON: " + path);
  return doc;
}

RunSettings settings_from_cli(const std::string& config_path,
                              const std::vector<std::string>& overrides,
                              std::optional<std::uint64_t> seed) {
  json doc = load_config_doc(config_path);
  for (const auto& ov : overrides) apply_override(doc, ov);
  RunSettings rs = parse_run_settings(doc);
  if (seed) rs.config.seed = *seed;
  return rs;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text;
}

int sweep_threads_from_env() {
  if (const char* env = std::getenv("CFSLICE_THREADS")) return std::atoi(env);
  return 0;
}

struct RunArgs {
  std::string config_path, scheme = "proposed", out_path, trace_path;
  std::string alloc_name, assoc_name;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
};

int cmd_run(const RunArgs& args) {
  const RunSettings rs = settings_from_cli(args.config_path, args.overrides, args.seed);
  const Scenario sc = generate_scenario(rs.config, rs.mix, rs.traffic);
  const ChannelState st = build_channel_state(sc);

  // A solver pair named on the command line or in the config replaces the
  // canned scheme.
  const std::string alloc = !args.alloc_name.empty() ? args.alloc_name : rs.allocator;
  const std::string assoc = !args.assoc_name.empty() ? args.assoc_name : rs.associator;
  SchemeResult res;
  std::string label = args.scheme;
  if (!alloc.empty() || !assoc.empty()) {
    const std::string a = alloc.empty() ? "proposed" : alloc;
    const std::string b = assoc.empty() ? "proposed" : assoc;
    const auto t0 = std::chrono::steady_clock::now();
    res.trace = run_ao(sc, st, a, b);
    const auto& best = res.trace.best();
    res.report = evaluate(st, best.assoc, best.b, sc.profiles, sc.config);
    res.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    label = a + "+" + b;
  } else {
    res = run_scheme(sc, st, scheme_by_name(args.scheme));
  }

  json doc;
  doc["scheme"] = label;
  doc["seed"] = rs.config.seed;
  doc["K"] = rs.config.K;
  doc["report"] = report_to_json(res.report);
  const Allocation alloc_final =
      make_allocation(res.trace.best().b, sc.profiles, rs.config.B_slice_hz);
  doc["allocation"] = {{"b", alloc_final.b},
                       {"residual",
                        {{"embb", alloc_final.residual[slice_index(Slice::embb)]},
                         {"urllc", alloc_final.residual[slice_index(Slice::urllc)]}}}};
  doc["ao"] = {{"iterations_used", res.trace.iterations_used},
               {"converged", res.trace.converged},
               {"stop_reason",
                res.trace.stop_reason == StopReason::epsilon ? "epsilon" : "i_max"},
               {"fallback_used", res.trace.fallback_used}};
  doc["wall_time_s"] = res.wall_time_s;
  emit(doc.dump(2), args.out_path);
  if (!args.trace_path.empty()) emit(trace_to_json(res.trace).dump(2), args.trace_path);
  return kExitOk;
}

struct SweepArgs {
  std::string config_path, out_path, format = "csv", dump_trials_path, gains_path;
  std::vector<int> K_values{10, 20, 30, 40, 50, 60};
  int trials = 100;
  std::vector<std::string> schemes{"proposed", "hybrid", "baseline"};
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
};

int cmd_sweep(const SweepArgs& args) {
  const RunSettings rs = settings_from_cli(args.config_path, args.overrides, args.seed);
  SweepSpec spec;
  spec.K_values = args.K_values;
  spec.n_trials = args.trials;
  spec.schemes.clear();
  for (const auto& s : args.schemes) spec.schemes.push_back(scheme_by_name(s));
  spec.base_config = rs.config;
  spec.mix = rs.mix;
  spec.traffic = rs.traffic;
  spec.threads = sweep_threads_from_env();
  spec.keep_trials = !args.dump_trials_path.empty();

  const SweepResult result = run_sweep(spec);
  if (args.format == "csv") {
    std::ostringstream ss;
    write_csv(result, ss);
    emit(ss.str(), args.out_path);
  } else if (args.format == "json") {
    emit(sweep_result_to_json(result).dump(2), args.out_path);
  } else {
    throw ConfigError("unknown format: " + args.format);
  }
  if (!args.dump_trials_path.empty()) {
    std::ostringstream ss;
    write_trials_csv(result, ss);
    emit(ss.str(), args.dump_trials_path);
  }
  if (!args.gains_path.empty())
    emit(gain_table_to_json(compare_gains(result)).dump(2), args.gains_path);
  return kExitOk;
}

struct ValidateArgs {
  std::string suite;
  std::uint64_t seed = 1;
  bool perturb_sinr = false;
};

int cmd_validate(const ValidateArgs& args) {
  if (!args.suite.empty()) {
    const auto names = validate::suite_names();
    if (std::find(names.begin(), names.end(), args.suite) == names.end())
      throw ConfigError("unknown suite: " + args.suite);
  }
  const auto results = validate::run_suites({args.suite, args.seed, args.perturb_sinr});
  bool all = true;
  json doc;
  doc["suites"] = json::array();
  for (const auto& r : results) {
    std::cerr << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail
              << '\n';
    doc["suites"].push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    all = all && r.passed;
  }
  doc["all_passed"] = all;
  std::cout << doc.dump(2) << '\n';
  return all ? kExitOk : kExitFailure;
}

struct BenchArgs {
  std::string config_path, out_path;
  std::vector<int> K_values{10, 20, 30, 40, 50, 60};
  int trials = 20;
  std::vector<std::string> schemes{"proposed", "hybrid"};
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
};

int cmd_bench(const BenchArgs& args) {
  const RunSettings rs = settings_from_cli(args.config_path, args.overrides, args.seed);
  SweepSpec spec;
  spec.K_values = args.K_values;
  spec.n_trials = args.trials;
  spec.schemes.clear();
  for (const auto& s : args.schemes) spec.schemes.push_back(scheme_by_name(s));
  spec.base_config = rs.config;
  spec.mix = rs.mix;
  spec.traffic = rs.traffic;
  spec.threads = sweep_threads_from_env();
  const SweepResult result = run_sweep(spec);

  std::ostringstream ss;
  ss << "K,scheme,metric,mean,stderr,n_trials,seed\n";
  for (int K : result.K_values)
    for (Scheme s : result.schemes) {
      const auto& st = result.at(K, s, "wall_time_s");
      ss << K << ',' << scheme_name(s) << ",wall_time_s," << st.mean << ','
         << st.stderr_ << ',' << st.n << ',' << result.seed << '\n';
    }
  emit(ss.str(), args.out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uplink cell-free massive MIMO network-slicing simulator"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Evaluate one scheme on one scenario");
  run->add_option("--config", run_args.config_path, "JSON config file");
  run->add_option("--scheme", run_args.scheme, "proposed | hybrid | baseline");
  run->add_option("--alloc", run_args.alloc_name,
                  "proposed | lp_exact | greedy_fallback | round_robin");
  run->add_option("--assoc", run_args.assoc_name, "proposed | strongest | bruteforce");
  run->add_option("--seed", run_args.seed, "Master seed override");
  run->add_option("--set", run_args.overrides, "Dotted-key config override, key=value");
  run->add_option("--out", run_args.out_path, "Report output path (default stdout)");
  run->add_option("--trace", run_args.trace_path, "Dump the AO trace JSON here");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep over UE counts");
  sweep->add_option("--config", sweep_args.config_path, "JSON config file");
  sweep->add_option("--K", sweep_args.K_values, "UE counts to sweep")->delimiter(',');
  sweep->add_option("--trials", sweep_args.trials, "Monte-Carlo drops per K");
  sweep->add_option("--schemes", sweep_args.schemes, "Schemes to compare")->delimiter(',');
  sweep->add_option("--format", sweep_args.format, "csv | json");
  sweep->add_option("--seed", sweep_args.seed, "Master seed override");
  sweep->add_option("--set", sweep_args.overrides, "Dotted-key config override");
  sweep->add_option("--out", sweep_args.out_path, "Results path (default stdout)");
  sweep->add_option("--dump-trials", sweep_args.dump_trials_path,
                    "Also write per-trial values (CSV)");
  sweep->add_option("--gains", sweep_args.gains_path,
                    "Also write the scheme-gain table (JSON)");

  ValidateArgs val_args;
  auto* val = app.add_subcommand("validate", "Cross-check invariants against oracles");
  val->add_option("--suite", val_args.suite, "Run a single suite");
  val->add_option("--seed", val_args.seed, "Suite RNG seed");
  val->add_flag("--perturb-sinr", val_args.perturb_sinr,
                "Negative control: inject an SINR perturbation")
      ->group("");  // hidden

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Per-scheme runtime across UE counts");
  bench->add_option("--config", bench_args.config_path, "JSON config file");
  bench->add_option("--K", bench_args.K_values, "UE counts")->delimiter(',');
  bench->add_option("--trials", bench_args.trials, "Drops per K");
  bench->add_option("--schemes", bench_args.schemes, "Schemes to time")->delimiter(',');
  bench->add_option("--seed", bench_args.seed, "Master seed override");
  bench->add_option("--set", bench_args.overrides, "Dotted-key config override");
  bench->add_option("--out", bench_args.out_path, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(run_args);
    if (sweep->parsed()) return cmd_sweep(sweep_args);
    if (val->parsed()) return cmd_validate(val_args);
    if (bench->parsed()) return cmd_bench(bench_args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
