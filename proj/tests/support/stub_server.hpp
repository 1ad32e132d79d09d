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

// Single-connection-at-a-time EWINFER1 server for tests. Replies come from a
// callback so tests can script labels, malformed JSON or errors.

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

#include "ew/error.hpp"
#include "ew/socket.hpp"
#include "ew/wire.hpp"

namespace ew::testing {

class StubServer {
 public:
  using Handler = std::function<std::vector<std::uint8_t>(const Frame&)>;
  /// Raw-payload hook: sees the undecoded request, returns the raw reply.
  using RawHandler = std::function<std::vector<std::uint8_t>(std::span<const std::uint8_t>)>;

  explicit StubServer(Handler handler)
      : StubServer([h = std::move(handler)](std::span<const std::uint8_t> payload) {
          try {
            return h(wire::decode_request(payload));
          } catch (const Error& e) {
            return wire::encode_error(e.what());
          }
        }, 0) {}

  StubServer(RawHandler raw, int)
      : listener_(parse_address("tcp://127.0.0.1:0")), raw_(std::move(raw)) {
    thread_ = std::thread([this] { serve(); });
  }

  ~StubServer() {
    stop_ = true;
    // Unblock accept() with a throwaway connection.
    try {
      Socket s = connect_to(listener_.address(), 1.0);
    } catch (...) {
    }
    thread_.join();
  }

  Address address() const { return listener_.address(); }
  int requests() const { return requests_.load(); }

  /// Close the connection after the next reply (simulates a crash).
  void drop_after_next() { drop_ = true; }

 private:
  void serve() {
    while (!stop_) {
      Socket conn;
      try {
        conn = listener_.accept();
      } catch (const Error&) {
        return;
      }
      if (stop_) return;
      try {
        for (;;) {
          auto payload = read_frame(conn, 64u << 20);
          ++requests_;
          write_frame(conn, raw_(payload));
          if (drop_.exchange(false)) break;
        }
      } catch (const Error&) {
        // peer went away
      }
    }
  }

  Listener listener_;
  RawHandler raw_;
  std::thread thread_;
  std::atomic<bool> stop_{false};
  std::atomic<bool> drop_{false};
  std::atomic<int> requests_{0};
};

}  // namespace ew::testing
