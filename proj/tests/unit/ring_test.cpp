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

#include <cstdint>

#include "doctest.h"
#include "norm2pc/prng.hpp"
#include "norm2pc/ring.hpp"

using namespace norm2pc;

TEST_SUITE("ring") {

TEST_CASE("construction accepts 8/16/32/64 and rejects the rest") {
  for (int bits : {8, 16, 32, 64}) CHECK(Ring(bits).bits() == bits);
  CHECK_THROWS(Ring(0));
  CHECK_THROWS(Ring(7));
  CHECK_THROWS(Ring(65));
}

TEST_CASE("mask and reduce") {
  Ring r8(8);
  CHECK(r8.mask() == 0xff);
  CHECK(r8.reduce(0x1ff) == 0xff);
  Ring r64(64);
  CHECK(r64.mask() == ~uint64_t{0});
  CHECK(r64.reduce(~uint64_t{0}) == ~uint64_t{0});
}

TEST_CASE("arithmetic wraps modulo 2^l") {
  Ring r(8);
  CHECK(r.add(200, 100) == 44);
  CHECK(r.sub(10, 20) == 246);
  CHECK(r.neg(1) == 255);
  CHECK(r.neg(0) == 0);
  CHECK(r.mul(16, 16) == 0);
}

TEST_CASE("signed view round trips") {
  for (int bits : {8, 16, 32, 64}) {
    Ring r(bits);
    Prng rng(bits * 1000 + 9);
    for (int t = 0; t < 200; ++t) {
      uint64_t v = r.reduce(rng.next_u64());
      CHECK(r.from_signed(r.to_signed(v)) == v);
    }
    CHECK(r.to_signed(r.from_signed(-1)) == -1);
    CHECK(r.to_signed(r.from_signed(0)) == 0);
    if (bits < 64) {
      int64_t lo = -(int64_t{1} << (bits - 1));
      int64_t hi = (int64_t{1} << (bits - 1)) - 1;
      CHECK(r.to_signed(r.from_signed(lo)) == lo);
      CHECK(r.to_signed(r.from_signed(hi)) == hi);
    }
  }
}

TEST_CASE("top_bit equals the sign of the signed view") {
  for (int bits : {8, 16, 32, 64}) {
    Ring r(bits);
    Prng rng(bits + 5);
    for (int t = 0; t < 200; ++t) {
      uint64_t v = r.reduce(rng.next_u64());
      CHECK(r.top_bit(v) == (r.to_signed(v) < 0 ? 1 : 0));
    }
  }
}

TEST_CASE("half is the sign boundary") {
  CHECK(Ring(8).half() == 128);
  CHECK(Ring(16).half() == 32768);
  CHECK(Ring(64).half() == (uint64_t{1} << 63));
}

TEST_CASE("additive shares reconstruct") {
  for (int bits : {8, 32, 64}) {
    Ring r(bits);
    Prng rng(77 + bits);
    for (int t = 0; t < 100; ++t) {
      uint64_t v = r.reduce(rng.next_u64());
      auto [s0, s1] = make_shares(r, v, rng);
      CHECK(reconstruct(s0, s1) == v);
      CHECK(s0.value == r.reduce(s0.value));
      CHECK(s1.value == r.reduce(s1.value));
    }
  }
}

TEST_CASE("share vectors reconstruct and mismatches throw") {
  Ring r(32);
  Prng rng(5);
  std::vector<uint64_t> xs = {1, 2, r.from_signed(-3), 0};
  auto [v0, v1] = make_share_vecs(r, xs, rng);
  auto back = reconstruct(v0, v1);
  for (size_t i = 0; i < xs.size(); ++i) CHECK(back[i] == xs[i]);

  auto [a0, a1] = make_shares(r, 7, rng);
  CHECK_THROWS(reconstruct(a0, a0));
  auto [b0, b1] = make_shares(Ring(16), 7, rng);
  CHECK_THROWS(reconstruct(a0, b1));
}

TEST_CASE("prng determinism") {
  Prng a(42), b(42), c(43);
  bool all_eq = true, any_diff = false;
  for (int i = 0; i < 64; ++i) {
    uint64_t va = a.next_u64();
    all_eq = all_eq && (va == b.next_u64());
    any_diff = any_diff || (va != c.next_u64());
  }
  CHECK(all_eq);
  CHECK(any_diff);
}

TEST_CASE("next_bits stays inside the width") {
  Prng rng(9);
  for (int bits = 1; bits <= 64; ++bits) {
    uint64_t v = rng.next_bits(bits);
    if (bits < 64) CHECK(v < (uint64_t{1} << bits));
  }
}

}  // TEST_SUITE
