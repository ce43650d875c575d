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

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace norm2pc {

// Framed duplex byte channel. Wire format of one frame: 4-byte little-endian
// payload length followed by the payload. write_frame only buffers; flush
// delivers everything buffered so far. A round, as counted by the session,
// is one non-empty flush.
class Channel {
 public:
  virtual ~Channel() = default;

  virtual void write_frame(std::span<const uint8_t> payload) = 0;
  virtual void flush() = 0;
  virtual std::vector<uint8_t> read_frame() = 0;

  // Frames buffered and not yet flushed.
  virtual size_t pending_frames() const = 0;
};

// In-process pair of endpoints over blocking queues. Queues are unbounded,
// so two threads may both flush large batches without deadlock.
std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>>
make_local_channel_pair();

// TCP endpoints with the same framing. flush() drains incoming data while
// writing, so simultaneous large flushes from both sides cannot deadlock.
std::unique_ptr<Channel> tcp_listen(const std::string& host, uint16_t port);
std::unique_ptr<Channel> tcp_connect(const std::string& host, uint16_t port);

}  // namespace norm2pc
