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

#include "ew/socket.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <sys/un.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>

#include "ew/error.hpp"

namespace ew {
namespace {

std::string errno_text() { return std::strerror(errno); }

sockaddr_un unix_addr(const std::string& path) {
  sockaddr_un sa{};
  sa.sun_family = AF_UNIX;
  if (path.size() >= sizeof(sa.sun_path)) {
    throw Error(ErrorKind::kInvalidArgument, "unix socket path too long");
  }
  std::memcpy(sa.sun_path, path.c_str(), path.size() + 1);
  return sa;
}

}  // namespace

std::string Address::to_string() const {
  if (kind == Kind::kUnix) return "unix:" + path;
  return "tcp://" + host + ":" + std::to_string(port);
}

Address parse_address(std::string_view text) {
  Address a;
  if (text.starts_with("unix:")) {
    a.kind = Address::Kind::kUnix;
    std::string_view rest = text.substr(5);
    while (rest.starts_with("//")) rest.remove_prefix(1);
    a.path = std::string(rest);
    if (a.path.empty()) {
      throw Error(ErrorKind::kInvalidArgument, "empty unix socket path");
    }
    return a;
  }
  std::string_view rest = text;
  if (rest.starts_with("tcp://")) rest.remove_prefix(6);
  const auto colon = rest.rfind(':');
  if (colon == std::string_view::npos || colon == 0) {
    throw Error(ErrorKind::kInvalidArgument,
                "address must be tcp://host:port or unix:/path, got '" +
                    std::string(text) + "'");
  }
  a.host = std::string(rest.substr(0, colon));
  const auto port_text = rest.substr(colon + 1);
  unsigned port = 0;
  auto [ptr, ec] =
      std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
  if (ec != std::errc{} || ptr != port_text.data() + port_text.size() ||
      port > 65535) {
    throw Error(ErrorKind::kInvalidArgument,
                "bad port in address '" + std::string(text) + "'");
  }
  a.port = static_cast<std::uint16_t>(port);
  return a;
}

Socket::~Socket() { close(); }

Socket::Socket(Socket&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }

Socket& Socket::operator=(Socket&& other) noexcept {
  if (this != &other) {
    close();
    fd_ = other.fd_;
    other.fd_ = -1;
  }
  return *this;
}

void Socket::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

void Socket::write_all(std::span<const std::uint8_t> bytes) {
  while (!bytes.empty()) {
    const ssize_t n = ::send(fd_, bytes.data(), bytes.size(), MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorKind::kIoError, "socket write failed: " + errno_text());
    }
    bytes = bytes.subspan(static_cast<std::size_t>(n));
  }
}

void Socket::read_exact(std::span<std::uint8_t> out) {
  while (!out.empty()) {
    const ssize_t n = ::recv(fd_, out.data(), out.size(), 0);
    if (n == 0) throw Error(ErrorKind::kIoError, "peer closed connection");
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorKind::kIoError, "socket read failed: " + errno_text());
    }
    out = out.subspan(static_cast<std::size_t>(n));
  }
}

void Socket::set_timeout(double seconds) {
  timeval tv{};
  tv.tv_sec = static_cast<time_t>(seconds);
  tv.tv_usec = static_cast<suseconds_t>((seconds - static_cast<double>(tv.tv_sec)) * 1e6);
  ::setsockopt(fd_, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
  ::setsockopt(fd_, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof(tv));
}

Socket connect_to(const Address& addr, double timeout_s) {
  if (addr.kind == Address::Kind::kUnix) {
    Socket s(::socket(AF_UNIX, SOCK_STREAM, 0));
    if (!s.valid()) throw Error(ErrorKind::kIoError, "socket(): " + errno_text());
    const sockaddr_un sa = unix_addr(addr.path);
    if (::connect(s.fd(), reinterpret_cast<const sockaddr*>(&sa), sizeof(sa)) != 0) {
      throw Error(ErrorKind::kBackendUnavailable,
                  "cannot connect to " + addr.to_string() + ": " + errno_text());
    }
    s.set_timeout(timeout_s);
    return s;
  }

  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string port = std::to_string(addr.port);
  if (const int rc = ::getaddrinfo(addr.host.c_str(), port.c_str(), &hints, &res);
      rc != 0) {
    throw Error(ErrorKind::kBackendUnavailable,
                "cannot resolve " + addr.host + ": " + ::gai_strerror(rc));
  }
  std::string last_error = "no addresses";
  for (addrinfo* p = res; p != nullptr; p = p->ai_next) {
    Socket s(::socket(p->ai_family, p->ai_socktype, p->ai_protocol));
    if (!s.valid()) continue;
    if (::connect(s.fd(), p->ai_addr, p->ai_addrlen) == 0) {
      ::freeaddrinfo(res);
      int one = 1;
      ::setsockopt(s.fd(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
      s.set_timeout(timeout_s);
      return s;
    }
    last_error = errno_text();
  }
  ::freeaddrinfo(res);
  throw Error(ErrorKind::kBackendUnavailable,
              "cannot connect to " + addr.to_string() + ": " + last_error);
}

Listener::Listener(const Address& addr) : bound_(addr) {
  if (addr.kind == Address::Kind::kUnix) {
    sock_ = Socket(::socket(AF_UNIX, SOCK_STREAM, 0));
    const sockaddr_un sa = unix_addr(addr.path);
    ::unlink(addr.path.c_str());
    if (::bind(sock_.fd(), reinterpret_cast<const sockaddr*>(&sa), sizeof(sa)) != 0) {
      throw Error(ErrorKind::kIoError, "bind " + addr.to_string() + ": " + errno_text());
    }
  } else {
    sock_ = Socket(::socket(AF_INET, SOCK_STREAM, 0));
    int one = 1;
    ::setsockopt(sock_.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    sockaddr_in sa{};
    sa.sin_family = AF_INET;
    sa.sin_port = htons(addr.port);
    if (::inet_pton(AF_INET, addr.host == "localhost" ? "127.0.0.1" : addr.host.c_str(),
                    &sa.sin_addr) != 1) {
      throw Error(ErrorKind::kInvalidArgument, "listener needs an IPv4 host");
    }
    if (::bind(sock_.fd(), reinterpret_cast<const sockaddr*>(&sa), sizeof(sa)) != 0) {
      throw Error(ErrorKind::kIoError, "bind " + addr.to_string() + ": " + errno_text());
    }
    socklen_t len = sizeof(sa);
    ::getsockname(sock_.fd(), reinterpret_cast<sockaddr*>(&sa), &len);
    bound_.port = ntohs(sa.sin_port);
  }
  if (::listen(sock_.fd(), 8) != 0) {
    throw Error(ErrorKind::kIoError, "listen: " + errno_text());
  }
}

Socket Listener::accept() {
  for (;;) {
    const int fd = ::accept(sock_.fd(), nullptr, nullptr);
    if (fd >= 0) return Socket(fd);
    if (errno == EINTR) continue;
    throw Error(ErrorKind::kIoError, "accept: " + errno_text());
  }
}

void write_frame(Socket& s, std::span<const std::uint8_t> payload) {
  const auto n = static_cast<std::uint32_t>(payload.size());
  const std::uint8_t header[4] = {
      static_cast<std::uint8_t>(n >> 24), static_cast<std::uint8_t>(n >> 16),
      static_cast<std::uint8_t>(n >> 8), static_cast<std::uint8_t>(n)};
  s.write_all(header);
  s.write_all(payload);
}

std::vector<std::uint8_t> read_frame(Socket& s, std::uint32_t max_len) {
  std::uint8_t header[4];
  s.read_exact(header);
  const std::uint32_t n = (std::uint32_t{header[0]} << 24) |
                          (std::uint32_t{header[1]} << 16) |
                          (std::uint32_t{header[2]} << 8) | header[3];
  if (n > max_len) {
    throw Error(ErrorKind::kProtocolError,
                "frame length " + std::to_string(n) + " exceeds limit " +
                    std::to_string(max_len));
  }
  std::vector<std::uint8_t> payload(n);
  s.read_exact(payload);
  return payload;
}

}  // namespace ew
