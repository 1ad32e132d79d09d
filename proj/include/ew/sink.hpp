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

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <memory>
#include <vector>

#include "ew/debounce.hpp"
#include "ew/socket.hpp"
#include "json.hpp"

namespace ew {

/// {"t": seconds since run start, "from": label, "to": label, "votes": int}
nlohmann::json event_to_json(const ActuationEvent& e, double t_since_start);

/// Receives actuation commands. Write failures throw Error(kIoError).
class ActuationSink {
 public:
  virtual ~ActuationSink() = default;
  virtual void emit(const ActuationEvent& e, double t_since_start) = 0;
};

/// One JSON line per event on a stream (stdout by default).
class StreamSink final : public ActuationSink {
 public:
  explicit StreamSink(std::ostream& out);
  void emit(const ActuationEvent& e, double t_since_start) override;

 private:
  std::ostream& out_;
};

class JsonlFileSink final : public ActuationSink {
 public:
  explicit JsonlFileSink(const std::filesystem::path& path);
  void emit(const ActuationEvent& e, double t_since_start) override;

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

/// Length-prefixed JSON event per message over a stream socket.
class WireSink final : public ActuationSink {
 public:
  explicit WireSink(const Address& address);
  void emit(const ActuationEvent& e, double t_since_start) override;

 private:
  Socket socket_;
};

/// Keeps events in memory.
class MemorySink final : public ActuationSink {
 public:
  void emit(const ActuationEvent& e, double t_since_start) override;
  const std::vector<std::pair<ActuationEvent, double>>& events() const { return events_; }

 private:
  std::vector<std::pair<ActuationEvent, double>> events_;
};

/// {"kind": "stdout"} | {"kind": "jsonl", "path": ...} |
/// {"kind": "wire", "address": ...} | {"kind": "none"}. jsonl paths are
/// taken relative to the working directory.
std::unique_ptr<ActuationSink> sink_from_json(const nlohmann::json& j, std::ostream& stdout_stream);

}  // namespace ew
