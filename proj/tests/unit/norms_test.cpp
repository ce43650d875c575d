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

#include <cmath>
#include <cstdlib>
#include <vector>

#include "doctest.h"
#include "harness.hpp"
#include "norm2pc/norms.hpp"
#include "norm2pc/prng.hpp"

using namespace norm2pc;
using test::run_pair;

namespace {

struct Split {
  std::vector<uint64_t> v0, v1;
};

Split split(const Ring& ring, std::span<const int64_t> plain, Prng& rng) {
  Split sp;
  sp.v0.resize(plain.size());
  sp.v1.resize(plain.size());
  for (size_t i = 0; i < plain.size(); ++i) {
    sp.v0[i] = ring.reduce(rng.next_u64());
    sp.v1[i] = ring.sub(ring.from_signed(plain[i]), sp.v0[i]);
  }
  return sp;
}

// Runs one scalar norm on plaintext vectors and reconstructs the result.
template <class Fn>
int64_t run_norm(const Ring& ring, std::span<const int64_t> x,
                 std::span<const int64_t> y, Fn&& fn, uint64_t seed = 1) {
  Prng rng(seed);
  auto xs = split(ring, x, rng);
  auto ys = split(ring, y, rng);
  uint64_t r0 = 0, r1 = 0;
  run_pair([&](Session& s) { r0 = fn(s, xs.v0, ys.v0); },
           [&](Session& s) { r1 = fn(s, xs.v1, ys.v1); });
  return ring.to_signed(ring.add(r0, r1));
}

int64_t run_l1(const Ring& ring, std::vector<int64_t> x,
               std::vector<int64_t> y) {
  return run_norm(ring, x, y, [&](Session& s, auto& a, auto& b) {
    return l1_distance(s, ring, a, b);
  });
}

int64_t run_l2sq(const Ring& ring, std::vector<int64_t> x,
                 std::vector<int64_t> y) {
  return run_norm(ring, x, y, [&](Session& s, auto& a, auto& b) {
    return l2_squared_distance(s, ring, a, b);
  });
}

int64_t run_linf(const Ring& ring, std::vector<int64_t> x,
                 std::vector<int64_t> y) {
  return run_norm(ring, x, y, [&](Session& s, auto& a, auto& b) {
    return linf_distance(s, ring, a, b);
  });
}

}  // namespace

TEST_SUITE("norms") {

TEST_CASE("worked examples") {
  Ring ring(32);
  CHECK(run_l1(ring, {1, 2}, {4, 0}) == 5);
  CHECK(run_l2sq(ring, {0, 3}, {4, 0}) == 25);
  CHECK(run_linf(ring, {1, 9}, {4, 0}) == 9);
  CHECK(run_l1(ring, {7}, {7}) == 0);
  CHECK(run_linf(ring, {-3}, {3}) == 6);
}

TEST_CASE("adder is minus the absolute difference") {
  Ring ring(32);
  Prng rng(3);
  std::vector<int64_t> x = {5}, y = {2};
  auto xs = split(ring, x, rng);
  auto ys = split(ring, y, rng);
  uint64_t a0 = 0, a1 = 0;
  run_pair([&](Session& s) { a0 = adder(s, ring, xs.v0[0], ys.v0[0]); },
           [&](Session& s) { a1 = adder(s, ring, xs.v1[0], ys.v1[0]); });
  CHECK(ring.to_signed(ring.add(a0, a1)) == -3);

  // On singletons, adder = -l1.
  int64_t l1 = run_l1(ring, {-1234}, {999});
  Prng rng2(4);
  std::vector<int64_t> p = {-1234}, q = {999};
  auto ps = split(ring, p, rng2);
  auto qs = split(ring, q, rng2);
  std::vector<uint64_t> b0, b1;
  run_pair([&](Session& s) { b0 = adder_batch(s, ring, ps.v0, qs.v0); },
           [&](Session& s) { b1 = adder_batch(s, ring, ps.v1, qs.v1); });
  CHECK(ring.to_signed(ring.add(b0[0], b1[0])) == -l1);
}

TEST_CASE("norm inequalities on random vectors") {
  Ring ring(32);
  Prng rng(11);
  for (int t = 0; t < 10; ++t) {
    size_t n = 1 + rng.next_u64() % 12;
    std::vector<int64_t> x(n), y(n);
    for (size_t i = 0; i < n; ++i) {
      x[i] = static_cast<int64_t>(rng.next_bits(12)) - 2048;
      y[i] = static_cast<int64_t>(rng.next_bits(12)) - 2048;
    }
    int64_t l1 = run_l1(ring, x, y);
    int64_t linf = run_linf(ring, x, y);
    int64_t l2sq = run_l2sq(ring, x, y);
    CHECK(linf <= l1);
    CHECK(l1 <= static_cast<int64_t>(n) * linf);
    CHECK(l2sq <= l1 * l1);
    CHECK(linf * linf <= l2sq);
  }
}

TEST_CASE("l2 distance through the debug sqrt provider") {
  Ring ring(32);
  Prng rng(21);
  std::vector<int64_t> x = {0, 3, 1}, y = {4, 0, 1};
  auto xs = split(ring, x, rng);
  auto ys = split(ring, y, rng);
  uint64_t r0 = 0, r1 = 0;
  auto sq0 = make_plaintext_sqrt();
  auto sq1 = make_plaintext_sqrt();
  run_pair(
      [&](Session& s) { r0 = l2_distance(s, ring, xs.v0, ys.v0, sq0.get()); },
      [&](Session& s) { r1 = l2_distance(s, ring, xs.v1, ys.v1, sq1.get()); });
  CHECK(ring.add(r0, r1) == 5);  // floor(sqrt(25))
  CHECK(sq0->test_grade());
}

TEST_CASE("l2 without a provider is unsupported, not wrong") {
  Ring ring(32);
  Prng rng(22);
  std::vector<int64_t> x = {1}, y = {2};
  auto xs = split(ring, x, rng);
  auto ys = split(ring, y, rng);
  CHECK_THROWS_AS(
      run_pair(
          [&](Session& s) { l2_distance(s, ring, xs.v0, ys.v0, nullptr); },
          [&](Session& s) { l2_distance(s, ring, xs.v1, ys.v1, nullptr); }),
      UnsupportedError);
}

TEST_CASE("layer geometry") {
  LayerSpec spec{32, 32, 3, 3, 16, 1, 1};
  CHECK(spec.out_h() == 32);
  CHECK(spec.out_w() == 32);
  CHECK(spec.image_elems() == 32 * 32 * 3);
  CHECK(spec.filter_elems() == 3 * 3 * 3 * 16);
  CHECK(spec.output_elems() == 32 * 32 * 16);
  CHECK(spec.gathered_elems() ==
        static_cast<uint64_t>(32) * 32 * 16 * 3 * 3 * 3);

  LayerSpec strided{16, 16, 32, 3, 64, 2, 1};
  CHECK(strided.out_h() == 8);
  CHECK(strided.out_w() == 8);
}

TEST_CASE("conv layer matches a plaintext convolution") {
  // 3x3 input, one channel, 2x2 filter, stride 1, no padding.
  LayerSpec spec{3, 3, 1, 2, 1, 1, 0};
  Ring ring(32);
  std::vector<int64_t> image = {1, 2, 3, 4, 5, 6, 7, 8, -9};
  std::vector<int64_t> filter = {1, 0, -1, 2};
  Prng rng(31);
  auto im = split(ring, image, rng);
  auto fl = split(ring, filter, rng);
  std::vector<uint64_t> c0, c1;
  run_pair(
      [&](Session& s) { c0 = conv_layer(s, ring, spec, im.v0, fl.v0); },
      [&](Session& s) { c1 = conv_layer(s, ring, spec, im.v1, fl.v1); });
  REQUIRE(c0.size() == 4);
  // out[oy][ox] = sum_{ky,kx} image[oy+ky][ox+kx] * filter[ky][kx]
  auto at = [&](int y, int x) { return image[y * 3 + x]; };
  auto expect = [&](int oy, int ox) {
    return at(oy, ox) * 1 + at(oy, ox + 1) * 0 + at(oy + 1, ox) * -1 +
           at(oy + 1, ox + 1) * 2;
  };
  for (int oy = 0; oy < 2; ++oy) {
    for (int ox = 0; ox < 2; ++ox) {
      CHECK(ring.to_signed(ring.add(c0[oy * 2 + ox], c1[oy * 2 + ox])) ==
            expect(oy, ox));
    }
  }
}

TEST_CASE("adder layer matches a plaintext adder stack") {
  // Same geometry; each tap contributes -|image - filter| instead of a
  // product.
  LayerSpec spec{3, 3, 1, 2, 1, 1, 0};
  Ring ring(32);
  std::vector<int64_t> image = {1, 2, 3, 4, 5, 6, 7, 8, -9};
  std::vector<int64_t> filter = {1, 0, -1, 2};
  Prng rng(32);
  auto im = split(ring, image, rng);
  auto fl = split(ring, filter, rng);
  std::vector<uint64_t> c0, c1;
  run_pair(
      [&](Session& s) { c0 = adder_layer(s, ring, spec, im.v0, fl.v0); },
      [&](Session& s) { c1 = adder_layer(s, ring, spec, im.v1, fl.v1); });
  auto at = [&](int y, int x) { return image[y * 3 + x]; };
  auto expect = [&](int oy, int ox) {
    int64_t acc = 0;
    acc -= std::llabs(at(oy, ox) - 1);
    acc -= std::llabs(at(oy, ox + 1) - 0);
    acc -= std::llabs(at(oy + 1, ox) - -1);
    acc -= std::llabs(at(oy + 1, ox + 1) - 2);
    return acc;
  };
  for (int oy = 0; oy < 2; ++oy) {
    for (int ox = 0; ox < 2; ++ox) {
      CHECK(ring.to_signed(ring.add(c0[oy * 2 + ox], c1[oy * 2 + ox])) ==
            expect(oy, ox));
    }
  }
}

TEST_CASE("padded layers zero-fill out-of-range taps") {
  LayerSpec spec{2, 2, 1, 3, 1, 1, 1};
  CHECK(spec.out_h() == 2);
  Ring ring(32);
  std::vector<int64_t> image = {1, 2, 3, 4};
  std::vector<int64_t> filter(9, 1);  // 3x3 all-ones box filter
  Prng rng(33);
  auto im = split(ring, image, rng);
  auto fl = split(ring, filter, rng);
  std::vector<uint64_t> c0, c1;
  run_pair(
      [&](Session& s) { c0 = conv_layer(s, ring, spec, im.v0, fl.v0); },
      [&](Session& s) { c1 = conv_layer(s, ring, spec, im.v1, fl.v1); });
  // Each output is the sum of the in-range 2x2 block.
  for (size_t i = 0; i < 4; ++i) {
    CHECK(ring.to_signed(ring.add(c0[i], c1[i])) == 1 + 2 + 3 + 4);
  }
}

TEST_CASE("builtin benchmark table is well formed") {
  const auto& layers = cifar10_resnet32_layers();
  REQUIRE(layers.size() == 4);
  for (const auto& l : layers) {
    CHECK(l.out_h() > 0);
    CHECK(l.out_w() > 0);
    CHECK(l.gathered_elems() ==
          static_cast<uint64_t>(l.output_elems()) * l.k * l.k * l.c_in);
  }
}

}  // TEST_SUITE
