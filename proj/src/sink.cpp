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

#include "ew/sink.hpp"

#include <ostream>

#include "ew/error.hpp"
#include "ew/json_io.hpp"

namespace ew {

nlohmann::json event_to_json(const ActuationEvent& e, double t_since_start) {
  return {{"t", t_since_start},
          {"from", to_string(e.previous_state)},
          {"to", to_string(e.new_state)},
          {"votes", e.votes}};
}

StreamSink::StreamSink(std::ostream& out) : out_(out) {}

void StreamSink::emit(const ActuationEvent& e, double t_since_start) {
  out_ << event_to_json(e, t_since_start).dump() << '\n';
  out_.flush();
  if (!out_) throw Error(ErrorKind::kIoError, "actuation stream write failed");
}

JsonlFileSink::JsonlFileSink(const std::filesystem::path& path)
    : path_(path), out_(path, std::ios::trunc) {
  if (!out_) throw Error(ErrorKind::kIoError, "cannot open event log " + path.string());
}

void JsonlFileSink::emit(const ActuationEvent& e, double t_since_start) {
  out_ << event_to_json(e, t_since_start).dump() << '\n';
  out_.flush();
  if (!out_) throw Error(ErrorKind::kIoError, "write to " + path_.string() + " failed");
}

WireSink::WireSink(const Address& address) : socket_(connect_to(address)) {}

void WireSink::emit(const ActuationEvent& e, double t_since_start) {
  const std::string s = event_to_json(e, t_since_start).dump();
  write_frame(socket_, std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

void MemorySink::emit(const ActuationEvent& e, double t_since_start) {
  events_.emplace_back(e, t_since_start);
}

std::unique_ptr<ActuationSink> sink_from_json(const nlohmann::json& j,
                                              std::ostream& stdout_stream) {
  const std::string kind = require_string(j, "kind", "sink");
  if (kind == "stdout") return std::make_unique<StreamSink>(stdout_stream);
  if (kind == "jsonl") {
    return std::make_unique<JsonlFileSink>(require_string(j, "path", "sink"));
  }
  if (kind == "wire") {
    return std::make_unique<WireSink>(parse_address(require_string(j, "address", "sink")));
  }
  if (kind == "none") return std::make_unique<MemorySink>();
  throw Error(ErrorKind::kSchemaViolation,
              "sink.kind must be stdout, jsonl, wire or none, got '" + kind + "'");
}

}  // namespace ew
