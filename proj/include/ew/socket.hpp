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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ew {

/// "tcp://host:port" or "unix:/path/to/socket".
struct Address {
  enum class Kind { kTcp, kUnix } kind = Kind::kTcp;
  std::string host;
  std::uint16_t port = 0;
  std::string path;

  std::string to_string() const;
};

/// Throws Error(kInvalidArgument) for anything else.
Address parse_address(std::string_view text);

/// Owning stream-socket descriptor.
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  ~Socket();
  Socket(Socket&& other) noexcept;
  Socket& operator=(Socket&& other) noexcept;
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;

  bool valid() const { return fd_ >= 0; }
  int fd() const { return fd_; }
  void close();

  /// Both throw Error(kIoError) on failure or peer hang-up.
  void write_all(std::span<const std::uint8_t> bytes);
  void read_exact(std::span<std::uint8_t> out);

  void set_timeout(double seconds);

 private:
  int fd_ = -1;
};

/// Throws Error(kBackendUnavailable) when nothing is listening.
Socket connect_to(const Address& addr, double timeout_s = 10.0);

/// Listening socket; port 0 picks a free port (see `address()`).
class Listener {
 public:
  explicit Listener(const Address& addr);
  Socket accept();
  Address address() const { return bound_; }
  void close() { sock_.close(); }

 private:
  Socket sock_;
  Address bound_;
};

/// u32 big-endian length followed by the payload.
void write_frame(Socket& s, std::span<const std::uint8_t> payload);
std::vector<std::uint8_t> read_frame(Socket& s, std::uint32_t max_len);

}  // namespace ew
