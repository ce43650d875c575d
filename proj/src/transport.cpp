// Copyright 2026 The norm2pc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "norm2pc/transport.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <chrono>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>

#include "norm2pc/bytes.hpp"
#include "norm2pc/errors.hpp"

namespace norm2pc {

namespace {

constexpr auto kLocalRecvTimeout = std::chrono::seconds(180);

struct FrameQueue {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::vector<uint8_t>> frames;
  bool closed = false;

  void push_all(std::deque<std::vector<uint8_t>>& batch) {
    std::lock_guard<std::mutex> lk(mu);
    while (!batch.empty()) {
      frames.push_back(std::move(batch.front()));
      batch.pop_front();
    }
    cv.notify_all();
  }

  std::vector<uint8_t> pop() {
    std::unique_lock<std::mutex> lk(mu);
    if (!cv.wait_for(lk, kLocalRecvTimeout,
                     [&] { return !frames.empty() || closed; })) {
      throw TransportError("local channel: timed out waiting for peer frame");
    }
    if (frames.empty()) {
      throw TransportError("local channel: peer endpoint destroyed");
    }
    auto f = std::move(frames.front());
    frames.pop_front();
    return f;
  }

  void close() {
    std::lock_guard<std::mutex> lk(mu);
    closed = true;
    cv.notify_all();
  }
};

struct LocalDuplexState {
  FrameQueue dir[2];  // dir[p]: frames flowing from endpoint p to 1-p.
};

class LocalChannel : public Channel {
 public:
  LocalChannel(std::shared_ptr<LocalDuplexState> st, int me)
      : st_(std::move(st)), me_(me) {}

  ~LocalChannel() override { st_->dir[me_].close(); }

  void write_frame(std::span<const uint8_t> payload) override {
    outbox_.emplace_back(payload.begin(), payload.end());
  }

  void flush() override { st_->dir[me_].push_all(outbox_); }

  std::vector<uint8_t> read_frame() override {
    return st_->dir[1 - me_].pop();
  }

  size_t pending_frames() const override { return outbox_.size(); }

 private:
  std::shared_ptr<LocalDuplexState> st_;
  int me_;
  std::deque<std::vector<uint8_t>> outbox_;
};

[[noreturn]] void throw_errno(const std::string& what) {
  throw TransportError(what + ": " + std::strerror(errno));
}

class TcpChannel : public Channel {
 public:
  explicit TcpChannel(int fd) : fd_(fd) {
    int one = 1;
    ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    int flags = ::fcntl(fd_, F_GETFL, 0);
    ::fcntl(fd_, F_SETFL, flags | O_NONBLOCK);
  }

  ~TcpChannel() override {
    if (fd_ >= 0) ::close(fd_);
  }

  void write_frame(std::span<const uint8_t> payload) override {
    put_u32_le(outbuf_, static_cast<uint32_t>(payload.size()));
    outbuf_.insert(outbuf_.end(), payload.begin(), payload.end());
    ++pending_;
  }

  void flush() override {
    size_t off = 0;
    while (off < outbuf_.size()) {
      struct pollfd pfd{fd_, POLLIN | POLLOUT, 0};
      int rc = ::poll(&pfd, 1, 180000);
      if (rc < 0) throw_errno("poll");
      if (rc == 0) throw TransportError("tcp flush: timed out");
      // Drain incoming data so the peer's simultaneous flush cannot fill
      // both kernel buffers and wedge the pair.
      if (pfd.revents & POLLIN) drain_some();
      if (pfd.revents & (POLLOUT | POLLERR | POLLHUP)) {
        ssize_t n = ::send(fd_, outbuf_.data() + off, outbuf_.size() - off,
                           MSG_NOSIGNAL);
        if (n < 0) {
          if (errno == EAGAIN || errno == EWOULDBLOCK) continue;
          throw_errno("send");
        }
        off += static_cast<size_t>(n);
      }
    }
    outbuf_.clear();
    pending_ = 0;
  }

  std::vector<uint8_t> read_frame() override {
    wait_bytes(4);
    uint32_t len = get_u32_le(std::span<const uint8_t>(inbuf_).subspan(0, 4));
    wait_bytes(4 + static_cast<size_t>(len));
    std::vector<uint8_t> payload(inbuf_.begin() + 4,
                                 inbuf_.begin() + 4 + len);
    inbuf_.erase(inbuf_.begin(), inbuf_.begin() + 4 + len);
    return payload;
  }

  size_t pending_frames() const override { return pending_; }

 private:
  void drain_some() {
    uint8_t tmp[1 << 16];
    ssize_t n = ::recv(fd_, tmp, sizeof(tmp), 0);
    if (n > 0) {
      inbuf_.insert(inbuf_.end(), tmp, tmp + n);
    } else if (n == 0) {
      throw TransportError("tcp: peer closed connection");
    } else if (errno != EAGAIN && errno != EWOULDBLOCK) {
      throw_errno("recv");
    }
  }

  void wait_bytes(size_t need) {
    while (inbuf_.size() < need) {
      struct pollfd pfd{fd_, POLLIN, 0};
      int rc = ::poll(&pfd, 1, 180000);
      if (rc < 0) throw_errno("poll");
      if (rc == 0) throw TransportError("tcp read: timed out");
      drain_some();
    }
  }

  int fd_;
  std::vector<uint8_t> outbuf_;
  std::vector<uint8_t> inbuf_;
  size_t pending_ = 0;
};

int resolve_and_socket(const std::string& host, uint16_t port,
                       sockaddr_in* addr) {
  std::memset(addr, 0, sizeof(*addr));
  addr->sin_family = AF_INET;
  addr->sin_port = htons(port);
  if (host.empty() || host == "0.0.0.0") {
    addr->sin_addr.s_addr = INADDR_ANY;
  } else if (::inet_pton(AF_INET, host.c_str(), &addr->sin_addr) != 1) {
    struct addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_STREAM;
    struct addrinfo* res = nullptr;
    if (::getaddrinfo(host.c_str(), nullptr, &hints, &res) != 0 || !res) {
      throw TransportError("cannot resolve host: " + host);
    }
    addr->sin_addr = reinterpret_cast<sockaddr_in*>(res->ai_addr)->sin_addr;
    ::freeaddrinfo(res);
  }
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw_errno("socket");
  return fd;
}

}  // namespace

std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>>
make_local_channel_pair() {
  auto st = std::make_shared<LocalDuplexState>();
  return {std::make_unique<LocalChannel>(st, 0),
          std::make_unique<LocalChannel>(st, 1)};
}

std::unique_ptr<Channel> tcp_listen(const std::string& host, uint16_t port) {
  sockaddr_in addr;
  int fd = resolve_and_socket(host, port, &addr);
  int one = 1;
  ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
    ::close(fd);
    throw_errno("bind");
  }
  if (::listen(fd, 1) < 0) {
    ::close(fd);
    throw_errno("listen");
  }
  int conn = ::accept(fd, nullptr, nullptr);
  ::close(fd);
  if (conn < 0) throw_errno("accept");
  return std::make_unique<TcpChannel>(conn);
}

std::unique_ptr<Channel> tcp_connect(const std::string& host, uint16_t port) {
  // The peer may not be listening yet; retry briefly.
  for (int attempt = 0;; ++attempt) {
    sockaddr_in addr;
    int fd = resolve_and_socket(host.empty() ? "127.0.0.1" : host, port, &addr);
    if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) == 0) {
      return std::make_unique<TcpChannel>(fd);
    }
    ::close(fd);
    if (attempt >= 100) throw_errno("connect");
    ::usleep(100 * 1000);
  }
}

}  // namespace norm2pc
