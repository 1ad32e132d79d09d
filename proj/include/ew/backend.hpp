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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "ew/clock.hpp"
#include "ew/domain.hpp"
#include "ew/socket.hpp"
#include "ew/trace.hpp"
#include "json.hpp"

namespace ew {

enum class BackendKind { kMock, kTrace, kExternal };

std::string_view to_string(BackendKind k);

struct BackendDescriptor {
  BackendKind kind = BackendKind::kMock;
  AccelConfig accel;
  int input_width = kBaseWidth;
  int input_height = kBaseHeight;
};

/// Input dimensions follow the 512x384 base scaled by accel.resolution_scale.
BackendDescriptor make_descriptor(BackendKind kind, const AccelConfig& accel);

/// A classifier. One instance serves one inference at a time.
class Backend {
 public:
  explicit Backend(BackendDescriptor d) : descriptor_(std::move(d)) {}
  virtual ~Backend() = default;
  Backend(const Backend&) = delete;
  Backend& operator=(const Backend&) = delete;

  const BackendDescriptor& descriptor() const { return descriptor_; }

  /// Throws Error(kDimensionMismatch) when the frame does not match the
  /// descriptor's input size; external backends may also throw
  /// kBackendUnavailable or kProtocolError.
  Classification infer(const Frame& frame);

 protected:
  virtual Classification do_infer(const Frame& frame) = 0;

 private:
  BackendDescriptor descriptor_;
};

/// Reference colour each synthetic category is painted with.
std::array<std::uint8_t, 3> palette_color(ClassLabel label);

/// Nearest palette category to the frame's mean colour, with a confidence
/// that falls off with distance.
std::pair<ClassLabel, double> classify_by_palette(const Frame& frame);

/// FNV-1a over (seed, pixels) mapped to a category and a confidence in
/// [0.5, 1.0].
std::pair<ClassLabel, double> classify_by_hash(const Frame& frame,
                                               std::uint64_t seed);

inline constexpr std::uint64_t kDefaultSeed = 20200917;

struct MockOptions {
  enum class Rule { kHash, kConstant, kPalette } rule = Rule::kHash;
  ClassLabel constant_label = ClassLabel::kCardboard;
  std::uint64_t seed = kDefaultSeed;
  /// Virtual time one inference takes under a simulated clock.
  double simulated_duration_s = 0.001;
  AccelConfig accel;
};

class MockBackend final : public Backend {
 public:
  MockBackend(MockOptions options, Clock& clock);

 protected:
  Classification do_infer(const Frame& frame) override;

 private:
  MockOptions options_;
  Clock& clock_;
};

/// Replays recorded durations in order, cycling. Under a real clock it sleeps
/// the scripted time; under a simulated clock it advances virtual time.
class TraceBackend final : public Backend {
 public:
  TraceBackend(LatencyTrace trace, Clock& clock,
               std::uint64_t seed = kDefaultSeed);

  const LatencyTrace& trace() const { return trace_; }

 protected:
  Classification do_infer(const Frame& frame) override;

 private:
  LatencyTrace trace_;
  Clock& clock_;
  std::uint64_t seed_;
  std::size_t cursor_ = 0;
};

/// Client of an EWINFER1 model server. Connects lazily and keeps the
/// connection for subsequent requests; a failed request drops it.
class ExternalBackend final : public Backend {
 public:
  ExternalBackend(Address address, AccelConfig accel, Clock& clock,
                  double timeout_s = 10.0);

 protected:
  Classification do_infer(const Frame& frame) override;

 private:
  Address address_;
  Clock& clock_;
  double timeout_s_;
  Socket socket_;
};

/// Builds a backend from a run-config "backend" object. Relative trace paths
/// resolve against `base_dir`; `seed` overrides any configured mock seed.
std::unique_ptr<Backend> backend_from_json(const nlohmann::json& j,
                                           const std::filesystem::path& base_dir,
                                           Clock& clock,
                                           std::optional<std::uint64_t> seed = {});

}  // namespace ew
