/* Copyright 2026 The ewbench Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "ew/cli.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ew/bench.hpp"
#include "ew/error.hpp"
#include "ew/eval.hpp"
#include "ew/json_io.hpp"
#include "ew/latency.hpp"
#include "ew/pipeline.hpp"
#include "ew/telemetry.hpp"

namespace ew::cli {
namespace fs = std::filesystem;

namespace {

struct GlobalOptions {
  std::string config;
  std::string out;
  int verbosity = 0;
  bool simulated_clock = false;
  std::optional<std::uint64_t> seed;
  bool pretty = false;
};

std::shared_ptr<spdlog::logger> logger() {
  if (auto l = spdlog::get("ew")) return l;
  return spdlog::stderr_color_mt("ew");
}

void emit(const GlobalOptions& g, const std::string& text, std::ostream& out) {
  if (g.out.empty()) {
    out << text;
    out.flush();
  } else {
    write_file_atomic(g.out, text);
  }
}

std::string fmt_num(double v, int precision = 6) {
  std::ostringstream ss;
  ss << std::setprecision(precision) << v;
  return ss.str();
}

/// Two-column "key  value" rendering of a flat JSON object.
std::string pretty_pairs(const nlohmann::json& j) {
  std::size_t width = 0;
  for (const auto& [k, v] : j.items()) width = std::max(width, k.size());
  std::ostringstream ss;
  for (const auto& [k, v] : j.items()) {
    ss << std::left << std::setw(static_cast<int>(width) + 2) << k;
    if (v.is_number_float()) {
      ss << fmt_num(v.get<double>());
    } else if (v.is_string()) {
      ss << v.get<std::string>();
    } else {
      ss << v.dump();
    }
    ss << '\n';
  }
  return ss.str();
}

std::string pretty_bench(const BenchReport& r) {
  std::ostringstream ss;
  ss << std::left << std::setw(16) << "backend" << std::setw(11) << "profile"
     << std::setw(4) << "N" << std::right << std::setw(12) << "mean ms" << std::setw(10)
     << "IPS" << std::setw(10) << "IPS/W" << std::setw(9) << "speedup" << "  real-time\n";
  for (const auto& c : r.cells) {
    ss << std::left << std::setw(16) << c.backend << std::setw(11)
       << to_string(c.power_profile) << std::setw(4) << c.queue_size << std::right;
    if (!c.ok) {
      ss << "  FAILED: " << c.error << '\n';
      continue;
    }
    ss << std::setw(12) << fmt_num(c.mean_inference_s * 1000.0) << std::setw(10)
       << fmt_num(c.ips, 4) << std::setw(10) << fmt_num(c.efficiency, 3) << std::setw(9)
       << (c.speedup ? fmt_num(*c.speedup, 3) : "-") << "  " << (c.realtime ? "yes" : "no")
       << '\n';
  }
  return ss.str();
}

std::string pretty_eval(const EvalReport& r) {
  std::ostringstream ss;
  ss << std::left << std::setw(11) << "category" << std::right << std::setw(7) << "total"
     << std::setw(9) << "correct" << std::setw(9) << "flagged" << '\n';
  for (std::size_t i = 0; i < kNumCategories; ++i) {
    ss << std::left << std::setw(11) << to_string(kCategories[i]) << std::right
       << std::setw(7) << r.category_total[i] << std::setw(9) << r.category_correct[i]
       << std::setw(9) << r.category_flagged[i] << '\n';
  }
  ss << "accuracy including errors: " << fmt_num(100.0 * r.accuracy_including_errors) << "%\n"
     << "accuracy excluding errors: " << fmt_num(100.0 * r.accuracy_excluding_errors) << "%\n";
  return ss.str();
}

std::string pretty_run(const RunSummary& s) {
  std::ostringstream ss;
  ss << "run " << s.name << (s.complete ? "" : " (incomplete: " + s.error + ")") << '\n'
     << "frames " << s.frames << ", inferences " << s.inferences << ", events "
     << s.events.size() << ", final state " << to_string(s.final_state) << '\n'
     << "mean inference " << fmt_num(s.mean_inference_s * 1000.0) << " ms, model IPS "
     << fmt_num(s.model_ips, 4) << ", pipeline IPS " << fmt_num(s.pipeline_ips, 4) << '\n';
  for (const auto& e : s.events) {
    ss << "  t=" << fmt_num(e.t) << "s  " << to_string(e.event.previous_state) << " -> "
       << to_string(e.event.new_state) << " (" << e.event.votes << " votes)\n";
  }
  return ss.str();
}

int exit_code_for(ErrorKind kind) {
  return is_validation_error(kind) ? kExitValidation : kExitRuntime;
}

int cmd_run(const GlobalOptions& g, std::optional<std::int64_t> frames,
            std::optional<double> seconds, std::ostream& out, std::ostream& err) {
  if (g.config.empty()) {
    err << "run: --config (or EW_CONFIG) is required\n";
    return kExitValidation;
  }
  PipelineConfig cfg = load_pipeline_config(g.config);
  if (g.simulated_clock) cfg.simulated_clock = true;
  if (g.seed) cfg.seed = g.seed;
  if (frames) cfg.options.stop.frames = frames;
  if (seconds) cfg.options.stop.seconds = seconds;
  for (const auto& [mode, table] : cfg.power.profiles) {
    if (mode == cfg.power.active_mode &&
        std::find(table.placeholders.begin(), table.placeholders.end(),
                  std::string(to_string(cfg.power.active_state))) != table.placeholders.end()) {
      logger()->warn("power for {} is a placeholder; measure it on the target board",
                     cfg.power.active_state_name());
    }
  }

  const RunSummary s = run_pipeline(cfg, out);
  emit(g, g.pretty ? pretty_run(s) : to_json(s).dump(2) + "\n", out);
  if (s.complete) return kExitOk;
  err << "run incomplete: " << s.error << '\n';
  return s.error_kind ? exit_code_for(*s.error_kind) : kExitRuntime;
}

int cmd_bench(const GlobalOptions& g, const std::string& spec_path, std::string format,
              std::ostream& out, std::ostream& err) {
  SweepSpec spec = load_sweep_spec(spec_path);
  if (g.simulated_clock) spec.simulated_clock = true;
  if (format.empty()) format = fs::path(g.out).extension() == ".json" ? "json" : "csv";
  const ReportFormat f = parse_report_format(format);
  const BenchReport r = run_sweep(spec);
  emit(g, g.pretty ? pretty_bench(r) : emit_report(r, f), out);
  const auto failed = std::count_if(r.cells.begin(), r.cells.end(),
                                    [](const BenchCell& c) { return !c.ok; });
  if (failed > 0) {
    err << failed << " of " << r.cells.size() << " combinations failed\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_eval(const GlobalOptions& g, const std::string& manifest_path, std::string format,
             std::ostream& out) {
  const auto entries = load_manifest(manifest_path);
  const bool needs_backend = std::any_of(entries.begin(), entries.end(),
                                         [](const ManifestEntry& e) { return !e.predicted; });
  std::unique_ptr<Clock> clock;
  std::unique_ptr<Backend> backend;
  if (needs_backend && !g.config.empty()) {
    const PipelineConfig cfg = load_pipeline_config(g.config);
    clock = make_clock(cfg.simulated_clock || g.simulated_clock);
    backend = backend_from_json(cfg.backend, cfg.base_dir, *clock, g.seed ? g.seed : cfg.seed);
  }
  const auto items =
      resolve_predictions(entries, backend.get(), fs::path(manifest_path).parent_path());
  const EvalReport r = evaluate(items);
  if (format.empty()) format = fs::path(g.out).extension() == ".csv" ? "csv" : "json";
  const ReportFormat f = parse_report_format(format);
  emit(g, g.pretty ? pretty_eval(r) : emit_report(r, f), out);
  return kExitOk;
}

struct LatencyFlags {
  std::optional<double> n, n_star, ips, t_cts, per_inference, servo_base;
};

int cmd_latency(const GlobalOptions& g, const LatencyFlags& f, std::ostream& out,
                std::ostream& err) {
  nlohmann::json j;
  const double n = f.n.value_or(kDefaultQueueCapacity);
  const double n_star = f.n_star.value_or(n);
  bool did_something = false;
  if (f.ips || f.t_cts) {
    if (!f.ips || !f.t_cts) {
      err << "latency: decomposition needs both --ips and --t-cts\n";
      return kExitValidation;
    }
    LatencyParams p;
    p.n = n;
    p.n_star = n_star;
    p.ips = *f.ips;
    p.t_cts = *f.t_cts;
    p.per_inference_s = f.per_inference;
    const LatencyBreakdown b = decompose_latency(p);
    j["t_queue"] = b.t_queue;
    j["t_servo"] = b.t_servo;
    j["t_total"] = b.t_total;
    if (b.negative_servo) {
      j["warning"] = "negative servo latency: t_cts is smaller than the queue delay";
      logger()->warn("negative servo latency ({} s)", b.t_servo);
    }
    did_something = true;
  }
  if (f.per_inference && f.servo_base) {
    j["predicted_total"] = predict_total_latency(n_star, *f.per_inference, *f.servo_base);
    did_something = true;
  }
  if (!did_something) {
    err << "latency: give --ips and --t-cts, or --per-inference and --servo-base\n";
    return kExitValidation;
  }
  j["n"] = n;
  j["n_star"] = n_star;
  emit(g, g.pretty ? pretty_pairs(j) : j.dump(2) + "\n", out);
  return kExitOk;
}

struct PowerFlags {
  std::optional<double> ips, watts, capacity_wh, avg_power;
  std::optional<std::string> profile, state;
};

int cmd_power(const GlobalOptions& g, const PowerFlags& f, std::ostream& out) {
  PowerConfig pc = default_power_config();
  if (!g.config.empty()) {
    const auto doc = read_json_file(g.config);
    if (doc.contains("power")) pc = power_config_from_json(doc["power"]);
  }
  if (f.profile) pc.active_mode = parse_power_mode(*f.profile);
  if (f.state) pc.active_state = parse_power_state(*f.state);
  const double watts = f.watts.value_or(pc.active_watts());

  nlohmann::json j = {{"profile", to_string(pc.active_mode)},
                      {"state", to_string(pc.active_state)},
                      {"watts", watts}};
  if (!f.watts) {
    const auto& ph = pc.table(pc.active_mode).placeholders;
    if (std::find(ph.begin(), ph.end(), std::string(to_string(pc.active_state))) != ph.end()) {
      j["placeholder"] = true;
      logger()->warn("{} is a placeholder value", pc.active_state_name());
    }
  }
  if (f.ips) {
    j["ips"] = *f.ips;
    j["efficiency"] = efficiency(*f.ips, watts);
  }
  if (f.capacity_wh) {
    const double avg = f.avg_power.value_or(watts);
    const double hours = battery_life(*f.capacity_wh, avg);
    j["capacity_wh"] = *f.capacity_wh;
    j["avg_power_w"] = avg;
    j["battery_hours"] = hours;
    j["battery_days"] = hours / 24.0;
  }
  emit(g, g.pretty ? pretty_pairs(j) : j.dump(2) + "\n", out);
  return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Edge inference pipeline runner and benchmarking toolkit", "ew"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  std::uint64_t seed = 0;
  app.add_option("--config", g.config, "Run config (JSON)")->envname("EW_CONFIG");
  app.add_option("--out", g.out, "Write the report here instead of stdout");
  app.add_flag("-v,--verbose", g.verbosity, "More logging");
  app.add_flag("--simulated-clock", g.simulated_clock, "Force the simulated clock");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for mock backends");
  app.add_flag("--pretty", g.pretty, "Human-readable tables instead of JSON/CSV");

  auto* run = app.add_subcommand("run", "Run the capture/infer/debounce pipeline");
  std::optional<std::int64_t> frames;
  std::optional<double> seconds;
  auto* frames_opt = run->add_option("--frames", frames, "Stop after K frames");
  run->add_option("--seconds", seconds, "Stop after S seconds")->excludes(frames_opt);

  auto* bench = app.add_subcommand("bench", "Sweep acceleration configurations");
  std::string spec_path;
  std::string bench_format;
  bench->add_option("--spec", spec_path, "Sweep spec (JSON)")->required();
  bench->add_option("--format", bench_format, "json or csv (default from --out, else csv)");

  auto* eval = app.add_subcommand("eval", "Score a labelled test manifest");
  std::string manifest_path;
  std::string eval_format;
  eval->add_option("--manifest", manifest_path, "JSON-lines manifest")->required();
  eval->add_option("--format", eval_format, "json or csv (default json)");

  auto* latency = app.add_subcommand("latency", "Split or predict actuation latency");
  LatencyFlags lf;
  latency->add_option("--n", lf.n, "Queue length used in the measurement");
  latency->add_option("--n-star", lf.n_star, "Queue length to predict for");
  latency->add_option("--ips", lf.ips, "Model throughput (inferences/s)");
  latency->add_option("--t-cts", lf.t_cts, "Measured classification-to-servo delay (s)");
  latency->add_option("--per-inference", lf.per_inference, "Seconds per inference");
  latency->add_option("--servo-base", lf.servo_base, "Base servo latency (s)");

  auto* power = app.add_subcommand("power", "Efficiency and battery-life figures");
  PowerFlags pf;
  power->add_option("--ips", pf.ips, "Throughput (inferences/s)");
  power->add_option("--watts", pf.watts, "Board power; defaults to the power table");
  power->add_option("--profile", pf.profile, "maxn or five_watt");
  power->add_option("--state", pf.state, "idle_no_model, idle_model_loaded or inferencing");
  power->add_option("--capacity-wh", pf.capacity_wh, "Battery capacity (Wh)");
  power->add_option("--avg-power", pf.avg_power, "Average draw for battery life (W)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    CLI::App* sub = nullptr;
    for (auto* s : app.get_subcommands()) sub = s;
    out << (sub ? sub->help() : app.help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    CLI::App* sub = nullptr;
    for (auto* s : app.get_subcommands()) sub = s;
    if (!args.empty()) err << "error: " << e.what() << "\n\n";
    err << (sub ? sub->help() : app.help());
    return kExitValidation;
  }
  if (seed_opt->count() > 0) g.seed = seed;
  logger()->set_level(g.verbosity >= 2   ? spdlog::level::debug
                      : g.verbosity == 1 ? spdlog::level::info
                                         : spdlog::level::warn);

  try {
    if (*run) return cmd_run(g, frames, seconds, out, err);
    if (*bench) return cmd_bench(g, spec_path, bench_format, out, err);
    if (*eval) return cmd_eval(g, manifest_path, eval_format, out);
    if (*latency) return cmd_latency(g, lf, out, err);
    if (*power) return cmd_power(g, pf, out);
  } catch (const Error& e) {
    err << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const nlohmann::json::exception& e) {
    err << "schema-violation: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitValidation;
}

}  // namespace ew::cli
