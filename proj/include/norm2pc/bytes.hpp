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
#include <span>
#include <string_view>
#include <vector>

#include "norm2pc/errors.hpp"

namespace norm2pc {

// LSB-first bit stream packing. Selection bits and small OT payloads travel
// packed 8 per byte; k-bit fields are written back to back with no padding
// except at the end of the stream.
class BitWriter {
 public:
  void put(uint64_t v, int kbits) {
    for (int i = 0; i < kbits; ++i) {
      if (bit_ == 0) buf_.push_back(0);
      if ((v >> i) & 1) buf_.back() |= static_cast<uint8_t>(1u << bit_);
      bit_ = (bit_ + 1) & 7;
    }
  }

  std::vector<uint8_t> take() {
    bit_ = 0;
    return std::move(buf_);
  }

 private:
  std::vector<uint8_t> buf_;
  int bit_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const uint8_t> buf) : buf_(buf) {}

  uint64_t get(int kbits) {
    uint64_t v = 0;
    for (int i = 0; i < kbits; ++i) {
      if (pos_ >= buf_.size() * 8) {
        throw ProtocolError("bit stream shorter than expected");
      }
      if ((buf_[pos_ / 8] >> (pos_ % 8)) & 1) v |= uint64_t{1} << i;
      ++pos_;
    }
    return v;
  }

 private:
  std::span<const uint8_t> buf_;
  size_t pos_ = 0;
};

inline void put_u32_le(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v));
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v >> 16));
  out.push_back(static_cast<uint8_t>(v >> 24));
}

inline uint32_t get_u32_le(std::span<const uint8_t> in) {
  return static_cast<uint32_t>(in[0]) | (static_cast<uint32_t>(in[1]) << 8) |
         (static_cast<uint32_t>(in[2]) << 16) |
         (static_cast<uint32_t>(in[3]) << 24);
}

// FNV-1a, used for transcript digests and the CLI config handshake.
// Not collision resistant; both uses are debugging aids, not security.
inline uint64_t fnv1a(std::span<const uint8_t> data, uint64_t h = 0xcbf29ce484222325ull) {
  for (uint8_t b : data) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline uint64_t fnv1a(std::string_view s, uint64_t h = 0xcbf29ce484222325ull) {
  return fnv1a(std::span<const uint8_t>(
                   reinterpret_cast<const uint8_t*>(s.data()), s.size()),
               h);
}

}  // namespace norm2pc
