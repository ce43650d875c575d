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
#include <utility>
#include <vector>

#include "norm2pc/errors.hpp"
#include "norm2pc/prng.hpp"

namespace norm2pc {

enum class Party : int { P0 = 0, P1 = 1 };

inline int idx(Party p) { return static_cast<int>(p); }
inline Party other(Party p) { return p == Party::P0 ? Party::P1 : Party::P0; }

// Z_{2^bits} with wrap-silently semantics. Signed values are the
// two's-complement view of the same residues; |INT_MIN| wraps back to
// itself by design and is never an error.
class Ring {
 public:
  Ring() : bits_(32) {}

  explicit Ring(int bits) : bits_(bits) {
    if (bits != 8 && bits != 16 && bits != 32 && bits != 64) {
      throw UsageError("ring width must be one of 8/16/32/64 bits, got " +
                       std::to_string(bits));
    }
  }

  int bits() const { return bits_; }

  uint64_t mask() const {
    return bits_ == 64 ? ~uint64_t{0} : ((uint64_t{1} << bits_) - 1);
  }

  uint64_t reduce(uint64_t v) const { return v & mask(); }
  uint64_t add(uint64_t a, uint64_t b) const { return (a + b) & mask(); }
  uint64_t sub(uint64_t a, uint64_t b) const { return (a - b) & mask(); }
  uint64_t neg(uint64_t a) const { return (~a + 1) & mask(); }
  uint64_t mul(uint64_t a, uint64_t b) const { return (a * b) & mask(); }

  // 2^{bits-1}, the sign boundary.
  uint64_t half() const { return uint64_t{1} << (bits_ - 1); }

  int top_bit(uint64_t v) const {
    return static_cast<int>((v >> (bits_ - 1)) & 1);
  }

  int64_t to_signed(uint64_t v) const {
    v &= mask();
    if (bits_ == 64) return static_cast<int64_t>(v);
    if (v >= half()) return static_cast<int64_t>(v) - (int64_t{1} << bits_);
    return static_cast<int64_t>(v);
  }

  uint64_t from_signed(int64_t v) const {
    return static_cast<uint64_t>(v) & mask();
  }

  bool operator==(const Ring&) const = default;

 private:
  int bits_;
};

// One party's additive share of a ring element: x = x0 + x1 mod 2^bits.
struct ArithShare {
  Party party;
  Ring ring;
  uint64_t value;
};

// One party's XOR share of a bit: b = b0 ^ b1.
struct BitShare {
  Party party;
  uint8_t bit;
};

// A vector of ring residues. Used both for plaintext vectors and for one
// party's half of a shared vector; context (and the owning Session) says
// which.
struct RingVec {
  Ring ring;
  std::vector<uint64_t> values;

  RingVec() = default;
  RingVec(Ring r, std::vector<uint64_t> v) : ring(r), values(std::move(v)) {
    for (auto& x : values) x = ring.reduce(x);
  }
  RingVec(Ring r, size_t n) : ring(r), values(n, 0) {}

  size_t size() const { return values.size(); }
  uint64_t& operator[](size_t i) { return values[i]; }
  uint64_t operator[](size_t i) const { return values[i]; }
};

inline std::pair<ArithShare, ArithShare> make_shares(const Ring& r, uint64_t x,
                                                     Prng& prng) {
  uint64_t s0 = r.reduce(prng.next_bits(r.bits()));
  return {ArithShare{Party::P0, r, s0}, ArithShare{Party::P1, r, r.sub(x, s0)}};
}

// Deterministic variant: share 0 is the supplied randomness.
inline std::pair<ArithShare, ArithShare> make_shares_with(const Ring& r,
                                                          uint64_t x,
                                                          uint64_t s0) {
  s0 = r.reduce(s0);
  return {ArithShare{Party::P0, r, s0}, ArithShare{Party::P1, r, r.sub(x, s0)}};
}

inline uint64_t reconstruct(const ArithShare& a, const ArithShare& b) {
  if (a.ring != b.ring) throw UsageError("reconstruct: ring width mismatch");
  if (a.party == b.party) throw UsageError("reconstruct: shares of one party");
  return a.ring.add(a.value, b.value);
}

inline uint8_t reconstruct(const BitShare& a, const BitShare& b) {
  if (a.party == b.party) throw UsageError("reconstruct: shares of one party");
  return a.bit ^ b.bit;
}

inline std::pair<RingVec, RingVec> make_share_vecs(
    const Ring& r, std::span<const uint64_t> xs, Prng& prng) {
  RingVec v0(r, xs.size()), v1(r, xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    v0[i] = r.reduce(prng.next_bits(r.bits()));
    v1[i] = r.sub(xs[i], v0[i]);
  }
  return {std::move(v0), std::move(v1)};
}

inline RingVec reconstruct(const RingVec& a, const RingVec& b) {
  if (a.ring != b.ring) throw UsageError("reconstruct: ring width mismatch");
  if (a.size() != b.size()) throw UsageError("reconstruct: length mismatch");
  RingVec out(a.ring, a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a.ring.add(a[i], b[i]);
  return out;
}

}  // namespace norm2pc
