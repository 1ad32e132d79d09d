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

#include "ew/backend.hpp"

#include <algorithm>
#include <cmath>

#include "ew/error.hpp"
#include "ew/json_io.hpp"
#include "ew/wire.hpp"

namespace ew {
namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

Timestamp at_least_one_tick(Timestamp d) {
  return d.count() > 0 ? d : Timestamp{1};
}

}  // namespace

std::string_view to_string(BackendKind k) {
  switch (k) {
    case BackendKind::kMock: return "mock";
    case BackendKind::kTrace: return "trace";
    case BackendKind::kExternal: return "external";
  }
  return "mock";
}

BackendDescriptor make_descriptor(BackendKind kind, const AccelConfig& accel) {
  validate(accel);
  BackendDescriptor d;
  d.kind = kind;
  d.accel = accel;
  d.input_width = std::max(1, static_cast<int>(std::lround(kBaseWidth * accel.resolution_scale)));
  d.input_height = std::max(1, static_cast<int>(std::lround(kBaseHeight * accel.resolution_scale)));
  return d;
}

Classification Backend::infer(const Frame& frame) {
  if (frame.width() != descriptor_.input_width ||
      frame.height() != descriptor_.input_height) {
    throw Error(ErrorKind::kDimensionMismatch,
                "backend expects " + std::to_string(descriptor_.input_width) + "x" +
                    std::to_string(descriptor_.input_height) + ", got " +
                    std::to_string(frame.width()) + "x" + std::to_string(frame.height()));
  }
  Classification c = do_infer(frame);
  c.frame_ts = frame.captured_at();
  validate(c);
  return c;
}

std::array<std::uint8_t, 3> palette_color(ClassLabel label) {
  switch (label) {
    case ClassLabel::kCardboard: return {176, 128, 80};
    case ClassLabel::kGlass: return {64, 176, 160};
    case ClassLabel::kMetal: return {144, 144, 152};
    case ClassLabel::kPaper: return {240, 240, 232};
    case ClassLabel::kPlastic: return {48, 80, 208};
    case ClassLabel::kNone: break;
  }
  return {0, 0, 0};
}

std::pair<ClassLabel, double> classify_by_palette(const Frame& frame) {
  std::array<std::uint64_t, 3> sum{};
  const auto px = frame.pixels();
  for (std::size_t i = 0; i < px.size(); i += 3) {
    sum[0] += px[i];
    sum[1] += px[i + 1];
    sum[2] += px[i + 2];
  }
  const double n = static_cast<double>(px.size() / 3);
  const double mean[3] = {sum[0] / n, sum[1] / n, sum[2] / n};

  ClassLabel best = ClassLabel::kCardboard;
  double best_dist = 1e300;
  for (ClassLabel c : kCategories) {
    const auto col = palette_color(c);
    double d2 = 0;
    for (int k = 0; k < 3; ++k) d2 += (mean[k] - col[k]) * (mean[k] - col[k]);
    if (d2 < best_dist) {
      best_dist = d2;
      best = c;
    }
  }
  const double max_dist = std::sqrt(3.0) * 255.0;
  return {best, std::clamp(1.0 - std::sqrt(best_dist) / max_dist, 0.0, 1.0)};
}

std::pair<ClassLabel, double> classify_by_hash(const Frame& frame,
                                               std::uint64_t seed) {
  std::uint64_t h = kFnvOffset;
  for (int i = 0; i < 8; ++i) {
    h ^= (seed >> (8 * i)) & 0xff;
    h *= kFnvPrime;
  }
  for (std::uint8_t b : frame.pixels()) {
    h ^= b;
    h *= kFnvPrime;
  }
  const ClassLabel label = kCategories[h % kNumCategories];
  const double confidence = 0.5 + static_cast<double>((h >> 16) % 501) / 1000.0;
  return {label, confidence};
}

MockBackend::MockBackend(MockOptions options, Clock& clock)
    : Backend(make_descriptor(BackendKind::kMock, options.accel)),
      options_(std::move(options)),
      clock_(clock) {
  if (!(options_.simulated_duration_s > 0)) {
    throw Error(ErrorKind::kInvalidArgument, "mock duration must be positive");
  }
  if (options_.rule == MockOptions::Rule::kConstant &&
      options_.constant_label == ClassLabel::kNone) {
    throw Error(ErrorKind::kInvalidArgument, "constant mock needs a category");
  }
}

Classification MockBackend::do_infer(const Frame& frame) {
  const Timestamp start = clock_.now();
  std::pair<ClassLabel, double> result;
  switch (options_.rule) {
    case MockOptions::Rule::kConstant:
      result = {options_.constant_label, 1.0};
      break;
    case MockOptions::Rule::kPalette:
      result = classify_by_palette(frame);
      break;
    case MockOptions::Rule::kHash:
      result = classify_by_hash(frame, options_.seed);
      break;
  }
  Timestamp took;
  if (clock_.simulated()) {
    took = from_seconds(options_.simulated_duration_s);
    clock_.sleep_for(took);
  } else {
    took = at_least_one_tick(clock_.now() - start);
  }
  return {result.first, result.second, to_seconds(took), {}};
}

TraceBackend::TraceBackend(LatencyTrace trace, Clock& clock, std::uint64_t seed)
    : Backend(make_descriptor(BackendKind::kTrace, trace.accel)),
      trace_(std::move(trace)),
      clock_(clock),
      seed_(seed) {
  validate(trace_);
}

Classification TraceBackend::do_infer(const Frame& frame) {
  const std::size_t i = cursor_++;
  const double duration = trace_.samples_s[i % trace_.samples_s.size()];
  clock_.sleep_for(from_seconds(duration));
  std::pair<ClassLabel, double> result;
  if (!trace_.labels.empty()) {
    result = trace_.labels[i % trace_.labels.size()];
  } else {
    result = classify_by_hash(frame, seed_);
  }
  return {result.first, result.second, duration, {}};
}

ExternalBackend::ExternalBackend(Address address, AccelConfig accel,
                                 Clock& clock, double timeout_s)
    : Backend(make_descriptor(BackendKind::kExternal, accel)),
      address_(std::move(address)),
      clock_(clock),
      timeout_s_(timeout_s) {}

Classification ExternalBackend::do_infer(const Frame& frame) {
  if (!socket_.valid()) socket_ = connect_to(address_, timeout_s_);
  const Timestamp start = clock_.now();
  std::vector<std::uint8_t> reply;
  try {
    write_frame(socket_, wire::encode_request(frame));
    reply = read_frame(socket_, wire::kMaxResponseBytes);
  } catch (const Error& e) {
    socket_.close();
    if (e.kind() == ErrorKind::kIoError) {
      throw Error(ErrorKind::kBackendUnavailable,
                  address_.to_string() + ": " + e.what());
    }
    throw;
  }
  const Timestamp round_trip = at_least_one_tick(clock_.now() - start);
  const wire::Response r = wire::decode_response(reply);
  // Servers that cannot time themselves report 0; fall back to round trip.
  const double duration =
      r.duration_ms > 0 ? r.duration_ms / 1000.0 : to_seconds(round_trip);
  return {r.label, r.confidence, duration, {}};
}

std::unique_ptr<Backend> backend_from_json(const nlohmann::json& j,
                                           const std::filesystem::path& base_dir,
                                           Clock& clock,
                                           std::optional<std::uint64_t> seed) {
  const std::string ctx = "backend";
  const std::string kind = require_string(j, "kind", ctx);
  AccelConfig accel;
  if (j.contains("accel")) accel = accel_from_json(j["accel"], ctx + ".accel");

  if (kind == "mock") {
    MockOptions o;
    o.accel = accel;
    o.seed = seed.value_or(j.value("seed", kDefaultSeed));
    o.simulated_duration_s = j.value("sim_duration_s", o.simulated_duration_s);
    const std::string rule = j.value("rule", std::string("hash"));
    if (rule == "hash") {
      o.rule = MockOptions::Rule::kHash;
    } else if (rule == "palette") {
      o.rule = MockOptions::Rule::kPalette;
    } else if (rule == "constant") {
      o.rule = MockOptions::Rule::kConstant;
      o.constant_label = parse_label(require_string(j, "label", ctx));
    } else {
      throw Error(ErrorKind::kSchemaViolation,
                  "backend.rule must be hash, palette or constant");
    }
    return std::make_unique<MockBackend>(o, clock);
  }
  if (kind == "trace") {
    std::filesystem::path file = require_string(j, "trace_file", ctx);
    if (file.is_relative()) file = base_dir / file;
    std::optional<std::string> name;
    if (j.contains("trace")) name = require_string(j, "trace", ctx);
    return std::make_unique<TraceBackend>(load_trace(file, name), clock,
                                          seed.value_or(j.value("seed", kDefaultSeed)));
  }
  if (kind == "external") {
    return std::make_unique<ExternalBackend>(
        parse_address(require_string(j, "address", ctx)), accel, clock,
        j.value("timeout_s", 10.0));
  }
  throw Error(ErrorKind::kSchemaViolation,
              "backend.kind must be mock, trace or external, got '" + kind + "'");
}

}  // namespace ew
