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

#include <array>
#include <cstdint>
#include <random>
#include <span>

namespace norm2pc {

// Deterministic party-local randomness. Seeded runs reproduce transcripts
// byte for byte; this is simulation-grade randomness, not a crypto RNG.
// The extension-OT backend keys a real AES-CTR PRG from seeds drawn here.
class Prng {
 public:
  explicit Prng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  // Uniform value of the low `bits` bits, bits in [1, 64].
  uint64_t next_bits(int bits) {
    uint64_t v = gen_();
    return bits >= 64 ? v : (v & ((uint64_t{1} << bits) - 1));
  }

  uint8_t next_bit() { return static_cast<uint8_t>(gen_() & 1); }

  void fill_bytes(std::span<uint8_t> out) {
    size_t i = 0;
    while (i < out.size()) {
      uint64_t v = gen_();
      for (int b = 0; b < 8 && i < out.size(); ++b, ++i) {
        out[i] = static_cast<uint8_t>(v >> (8 * b));
      }
    }
  }

  std::array<uint8_t, 16> next_block() {
    std::array<uint8_t, 16> blk;
    fill_bytes(blk);
    return blk;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace norm2pc
