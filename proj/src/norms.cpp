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

#include "norm2pc/norms.hpp"

#include <cmath>

#include "norm2pc/blocks.hpp"
#include "norm2pc/bytes.hpp"
#include "norm2pc/errors.hpp"
#include "norm2pc/session.hpp"

namespace norm2pc {

namespace {

std::vector<uint64_t> diff_shares(const Ring& ring,
                                  std::span<const uint64_t> x,
                                  std::span<const uint64_t> y) {
  if (x.size() != y.size()) throw UsageError("distance: dimension mismatch");
  if (x.empty()) throw UsageError("distance: empty vectors");
  std::vector<uint64_t> d(x.size());
  for (size_t i = 0; i < d.size(); ++i) d[i] = ring.sub(x[i], y[i]);
  return d;
}

uint64_t sum_shares(const Ring& ring, std::span<const uint64_t> v) {
  uint64_t acc = 0;
  for (uint64_t x : v) acc = ring.add(acc, x);
  return acc;
}

}  // namespace

uint64_t l1_distance(Session& s, const Ring& ring,
                     std::span<const uint64_t> my_x,
                     std::span<const uint64_t> my_y) {
  auto scope = s.scope("l1");
  auto d = diff_shares(ring, my_x, my_y);
  return sum_shares(ring, abs_batch(s, ring, d));
}

uint64_t l2_squared_distance(Session& s, const Ring& ring,
                             std::span<const uint64_t> my_x,
                             std::span<const uint64_t> my_y) {
  auto scope = s.scope("l2sq");
  auto d = diff_shares(ring, my_x, my_y);
  return sum_shares(ring, mul_batch(s, ring, d, d));
}

uint64_t linf_distance(Session& s, const Ring& ring,
                       std::span<const uint64_t> my_x,
                       std::span<const uint64_t> my_y) {
  auto scope = s.scope("linf");
  auto d = diff_shares(ring, my_x, my_y);
  auto mags = abs_batch(s, ring, d);
  if (mags.size() == 1) return mags[0];
  return tree_max(s, ring, mags);
}

namespace {

// Debug provider: reveals the operand to both parties, takes the integer
// root in the clear and hands the whole result to party 0. Never secure.
class PlaintextSqrt final : public SqrtProvider {
 public:
  std::string name() const override { return "plaintext-debug"; }
  bool test_grade() const override { return true; }

  uint64_t sqrt_share(Session& s, const Ring& ring,
                      uint64_t my_share) override {
    auto scope = s.scope("sqrt");
    std::vector<uint8_t> buf(8);
    for (int i = 0; i < 8; ++i) {
      buf[i] = static_cast<uint8_t>(my_share >> (8 * i));
    }
    s.send(buf);
    s.flush_round();
    auto got = s.recv();
    if (got.size() != 8) throw ProtocolError("sqrt stub: bad reveal frame");
    uint64_t theirs = 0;
    for (int i = 0; i < 8; ++i) theirs |= uint64_t{got[i]} << (8 * i);
    uint64_t v = ring.add(my_share, theirs);
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(v)));
    auto sq = [](uint64_t t) {
      return static_cast<unsigned __int128>(t) * t;
    };
    while (r > 0 && sq(r) > v) --r;
    while (sq(r + 1) <= v) ++r;
    return s.party() == Party::P0 ? ring.reduce(r) : 0;
  }
};

}  // namespace

std::unique_ptr<SqrtProvider> make_plaintext_sqrt() {
  return std::make_unique<PlaintextSqrt>();
}

uint64_t l2_distance(Session& s, const Ring& ring,
                     std::span<const uint64_t> my_x,
                     std::span<const uint64_t> my_y, SqrtProvider* provider) {
  if (provider == nullptr) {
    throw UnsupportedError(
        "l2 needs a sqrt provider; the default build ships none "
        "(use l2sq, or the plaintext-debug stub for tests)");
  }
  auto scope = s.scope("l2");
  uint64_t sq = l2_squared_distance(s, ring, my_x, my_y);
  return provider->sqrt_share(s, ring, sq);
}

std::vector<uint64_t> adder_batch(Session& s, const Ring& ring,
                                  std::span<const uint64_t> my_x,
                                  std::span<const uint64_t> my_y) {
  auto scope = s.scope("adder");
  auto d = diff_shares(ring, my_x, my_y);
  auto mags = abs_batch(s, ring, d);
  for (auto& m : mags) m = ring.neg(m);
  return mags;
}

uint64_t adder(Session& s, const Ring& ring, uint64_t my_x, uint64_t my_y) {
  uint64_t xs[1] = {my_x};
  uint64_t ys[1] = {my_y};
  return adder_batch(s, ring, xs, ys)[0];
}

namespace {

// Gather the taps of every output position into two flat vectors, run one
// batched element operation, then scatter-add locally.
template <typename ElemOp>
std::vector<uint64_t> layer_eval(Session& s, const Ring& ring,
                                 const LayerSpec& spec,
                                 std::span<const uint64_t> image,
                                 std::span<const uint64_t> filter,
                                 ElemOp&& op) {
  if (spec.h < 1 || spec.w < 1 || spec.c_in < 1 || spec.k < 1 ||
      spec.c_out < 1 || spec.stride < 1 || spec.pad < 0) {
    throw UsageError("layer: bad geometry");
  }
  if (spec.h + 2 * spec.pad < spec.k || spec.w + 2 * spec.pad < spec.k) {
    throw UsageError("layer: kernel exceeds padded input");
  }
  if (image.size() != spec.image_elems() ||
      filter.size() != spec.filter_elems()) {
    throw UsageError("layer: tensor shape mismatch");
  }

  int oh = spec.out_h(), ow = spec.out_w();
  size_t taps = static_cast<size_t>(spec.k) * spec.k * spec.c_in;
  std::vector<uint64_t> a, b;
  a.reserve(spec.gathered_elems());
  b.reserve(spec.gathered_elems());
  for (int oy = 0; oy < oh; ++oy) {
    for (int ox = 0; ox < ow; ++ox) {
      for (int co = 0; co < spec.c_out; ++co) {
        for (int ky = 0; ky < spec.k; ++ky) {
          for (int kx = 0; kx < spec.k; ++kx) {
            int iy = oy * spec.stride - spec.pad + ky;
            int ix = ox * spec.stride - spec.pad + kx;
            bool inside = iy >= 0 && iy < spec.h && ix >= 0 && ix < spec.w;
            for (int ci = 0; ci < spec.c_in; ++ci) {
              a.push_back(inside ? image[(static_cast<size_t>(iy) * spec.w +
                                          ix) * spec.c_in + ci]
                                 : 0);
              b.push_back(filter[((static_cast<size_t>(ky) * spec.k + kx) *
                                  spec.c_in + ci) * spec.c_out + co]);
            }
          }
        }
      }
    }
  }

  auto elems = op(a, b);
  std::vector<uint64_t> out(spec.output_elems(), 0);
  size_t pos = 0;
  for (size_t o = 0; o < out.size(); ++o) {
    for (size_t t = 0; t < taps; ++t) {
      out[o] = ring.add(out[o], elems[pos++]);
    }
  }
  return out;
}

}  // namespace

std::vector<uint64_t> adder_layer(Session& s, const Ring& ring,
                                  const LayerSpec& spec,
                                  std::span<const uint64_t> my_image,
                                  std::span<const uint64_t> my_filter) {
  auto scope = s.scope("adder_layer");
  return layer_eval(s, ring, spec, my_image, my_filter,
                    [&](std::span<const uint64_t> a,
                        std::span<const uint64_t> b) {
                      return adder_batch(s, ring, a, b);
                    });
}

std::vector<uint64_t> conv_layer(Session& s, const Ring& ring,
                                 const LayerSpec& spec,
                                 std::span<const uint64_t> my_image,
                                 std::span<const uint64_t> my_filter) {
  auto scope = s.scope("conv_layer");
  return layer_eval(s, ring, spec, my_image, my_filter,
                    [&](std::span<const uint64_t> a,
                        std::span<const uint64_t> b) {
                      return mul_batch(s, ring, a, b);
                    });
}

const std::vector<LayerSpec>& cifar10_resnet32_layers() {
  static const std::vector<LayerSpec> layers = {
      {32, 32, 3, 3, 16, 1, 1},
      {32, 32, 16, 1, 32, 2, 0},
      {16, 16, 32, 3, 64, 2, 1},
      {8, 8, 64, 3, 64, 1, 1},
  };
  return layers;
}

}  // namespace norm2pc
