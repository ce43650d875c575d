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

#include <vector>

#include "doctest.h"
#include "harness.hpp"
#include "norm2pc/millionaire.hpp"
#include "norm2pc/prng.hpp"

using namespace norm2pc;
using test::run_pair;

namespace {

// XOR-reconstructed lt bits for a full pair of input vectors.
std::vector<uint8_t> run_compare(std::span<const uint64_t> xs,
                                 std::span<const uint64_t> ys, int bits,
                                 int radix, SessionConfig cfg = {}) {
  std::vector<uint8_t> s0, s1;
  run_pair(
      [&](Session& s) { s0 = compare_lt_batch(s, xs, bits, radix); },
      [&](Session& s) { s1 = compare_lt_batch(s, ys, bits, radix); }, cfg);
  REQUIRE(s0.size() == xs.size());
  REQUIRE(s1.size() == xs.size());
  std::vector<uint8_t> out(xs.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = s0[i] ^ s1[i];
  return out;
}

}  // namespace

TEST_SUITE("millionaire") {

TEST_CASE("plan covers the input exactly once, top chunk short") {
  for (int bits = 1; bits <= 64; ++bits) {
    for (int radix : {1, 2, 3, 4, 7}) {
      auto plan = make_compare_plan(bits, radix);
      CHECK(plan.input_bits == bits);
      int covered = 0;
      // Leaves are most significant first and contiguous.
      int expect_top = bits % radix == 0 ? radix : bits % radix;
      CHECK(plan.leaves.front().width == expect_top);
      for (size_t i = 0; i < plan.leaves.size(); ++i) {
        const auto& leaf = plan.leaves[i];
        CHECK(leaf.width >= 1);
        CHECK(leaf.width <= radix);
        if (i > 0) {
          CHECK(leaf.shift + leaf.width == plan.leaves[i - 1].shift);
        }
        covered += leaf.width;
      }
      CHECK(plan.leaves.back().shift == 0);
      CHECK(covered == bits);
    }
  }
}

TEST_CASE("plan gate and AND counts") {
  // q leaves fold with q-1 gates; gates computing eq cost two ANDs.
  for (int bits = 1; bits <= 64; ++bits) {
    auto plan = make_compare_plan(bits, 4);
    size_t q = plan.leaves.size();
    CHECK(q == static_cast<size_t>((bits + 3) / 4));
    CHECK(plan.gate_count() == q - 1);
    size_t eq_gates = 0;
    for (const auto& layer : plan.layers) {
      for (const auto& g : layer) eq_gates += g.compute_eq ? 1 : 0;
    }
    CHECK(plan.and_count() == (q - 1) + eq_gates);
  }
  // The 31-bit plan behind the 32-bit MSB: 8 leaves, 7 gates, 11 ANDs.
  auto p31 = make_compare_plan(31, 4);
  CHECK(p31.leaves.size() == 8);
  CHECK(p31.gate_count() == 7);
  CHECK(p31.and_count() == 11);
}

TEST_CASE("single-leaf plans need no gates or eq lane") {
  for (int bits : {1, 2, 3, 4}) {
    auto plan = make_compare_plan(bits, 4);
    CHECK(plan.leaves.size() == 1);
    CHECK(plan.gate_count() == 0);
    CHECK_FALSE(plan.leaves[0].need_eq);
  }
}

TEST_CASE("eq lanes are computed exactly where consumed") {
  auto plan = make_compare_plan(32, 4);  // 8 leaves, perfect tree
  // Every gate's hi input needs its eq lane; the final root does not.
  std::vector<bool> eq_needed(plan.leaves.size() + plan.gate_count(), false);
  for (const auto& layer : plan.layers) {
    for (const auto& g : layer) {
      eq_needed[g.hi_slot] = true;
      if (g.compute_eq) eq_needed[g.lo_slot] = true;
    }
  }
  for (size_t i = 0; i < plan.leaves.size(); ++i) {
    CHECK(plan.leaves[i].need_eq == eq_needed[i]);
  }
}

TEST_CASE("plan rejects out-of-range parameters") {
  CHECK_THROWS(make_compare_plan(0, 4));
  CHECK_THROWS(make_compare_plan(65, 4));
  CHECK_THROWS(make_compare_plan(8, 0));
  CHECK_THROWS(make_compare_plan(8, 9));
}

TEST_CASE("exhaustive comparison at small widths") {
  for (int bits : {1, 2, 3, 5}) {
    for (int radix : {1, 2, 4}) {
      uint64_t lim = uint64_t{1} << bits;
      std::vector<uint64_t> xs, ys;
      for (uint64_t x = 0; x < lim; ++x) {
        for (uint64_t y = 0; y < lim; ++y) {
          xs.push_back(x);
          ys.push_back(y);
        }
      }
      auto lt = run_compare(xs, ys, bits, radix);
      for (size_t i = 0; i < xs.size(); ++i) {
        CAPTURE(bits);
        CAPTURE(radix);
        CAPTURE(xs[i]);
        CAPTURE(ys[i]);
        CHECK(lt[i] == (xs[i] < ys[i] ? 1 : 0));
      }
    }
  }
}

TEST_CASE("random comparison at production widths") {
  for (int bits : {7, 15, 31, 63}) {
    Prng rng(1000 + bits);
    size_t n = 300;
    uint64_t mask = bits == 64 ? ~uint64_t{0} : ((uint64_t{1} << bits) - 1);
    std::vector<uint64_t> xs(n), ys(n);
    for (size_t i = 0; i < n; ++i) {
      xs[i] = rng.next_u64() & mask;
      // Mix in near-equal pairs; the eq lanes matter most there.
      ys[i] = (i % 3 == 0) ? (xs[i] + (rng.next_u64() % 3) - 1) & mask
                           : rng.next_u64() & mask;
    }
    auto lt = run_compare(xs, ys, bits, 4);
    for (size_t i = 0; i < n; ++i) {
      CHECK(lt[i] == (xs[i] < ys[i] ? 1 : 0));
    }
  }
}

TEST_CASE("iknp backend agrees with the dealer") {
  Prng rng(77);
  size_t n = 64;
  std::vector<uint64_t> xs(n), ys(n);
  for (size_t i = 0; i < n; ++i) {
    xs[i] = rng.next_bits(31);
    ys[i] = rng.next_bits(31);
  }
  auto dealer = run_compare(xs, ys, 31, 4);
  auto iknp = run_compare(xs, ys, 31, 4, test::iknp_config());
  CHECK(dealer == iknp);
}

TEST_CASE("inputs wider than input_bits are rejected") {
  std::vector<uint64_t> xs = {uint64_t{1} << 8};
  std::vector<uint64_t> ys = {0};
  CHECK_THROWS(run_compare(xs, ys, 8, 4));
}

TEST_CASE("and_gate_batch computes AND of XOR shares") {
  Prng rng(31);
  size_t n = 200;
  std::vector<uint8_t> a0(n), a1(n), b0(n), b1(n);
  for (size_t i = 0; i < n; ++i) {
    a0[i] = rng.next_bit();
    a1[i] = rng.next_bit();
    b0[i] = rng.next_bit();
    b1[i] = rng.next_bit();
  }
  std::vector<uint8_t> z0, z1;
  run_pair([&](Session& s) { z0 = and_gate_batch(s, a0, b0); },
           [&](Session& s) { z1 = and_gate_batch(s, a1, b1); });
  for (size_t i = 0; i < n; ++i) {
    uint8_t a = a0[i] ^ a1[i], b = b0[i] ^ b1[i];
    CHECK((z0[i] ^ z1[i]) == (a & b));
  }
}

}  // TEST_SUITE
