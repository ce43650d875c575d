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
#include <vector>

#include "norm2pc/ring.hpp"

namespace norm2pc {

class Session;

// Distance protocols over additively shared vectors. Both parties pass
// their shares of x and y and receive their share of the scalar result.
// Differences x_i - y_i must lie in the signed range; l2 squared needs the
// true sum below 2^l for a meaningful plaintext (it wraps otherwise).

uint64_t l1_distance(Session& s, const Ring& ring,
                     std::span<const uint64_t> my_x,
                     std::span<const uint64_t> my_y);

uint64_t l2_squared_distance(Session& s, const Ring& ring,
                             std::span<const uint64_t> my_x,
                             std::span<const uint64_t> my_y);

uint64_t linf_distance(Session& s, const Ring& ring,
                       std::span<const uint64_t> my_x,
                       std::span<const uint64_t> my_y);

// Square root on a shared value, pluggable: the default build ships no
// secure implementation, only a reveal-and-reshare debug stub for tests.
class SqrtProvider {
 public:
  virtual ~SqrtProvider() = default;
  virtual std::string name() const = 0;
  // True when the provider leaks the operand (debug use only).
  virtual bool test_grade() const = 0;
  virtual uint64_t sqrt_share(Session& s, const Ring& ring,
                              uint64_t my_share) = 0;
};

std::unique_ptr<SqrtProvider> make_plaintext_sqrt();

// floor(sqrt(l2 squared)); throws UnsupportedError when provider is null.
uint64_t l2_distance(Session& s, const Ring& ring,
                     std::span<const uint64_t> my_x,
                     std::span<const uint64_t> my_y, SqrtProvider* provider);

// Adder similarity -|x - y|, scalar and elementwise batch.
uint64_t adder(Session& s, const Ring& ring, uint64_t my_x, uint64_t my_y);
std::vector<uint64_t> adder_batch(Session& s, const Ring& ring,
                                  std::span<const uint64_t> my_x,
                                  std::span<const uint64_t> my_y);

// CNN layer geometry. Filter tensor is k x k x c_in x c_out over an
// h x w x c_in input; output spatial dims follow the usual convolution
// arithmetic with zero padding.
struct LayerSpec {
  int h = 0, w = 0, c_in = 0;
  int k = 0, c_out = 0;
  int stride = 1, pad = 0;

  int out_h() const { return (h + 2 * pad - k) / stride + 1; }
  int out_w() const { return (w + 2 * pad - k) / stride + 1; }
  size_t image_elems() const {
    return static_cast<size_t>(h) * w * c_in;
  }
  size_t filter_elems() const {
    return static_cast<size_t>(k) * k * c_in * c_out;
  }
  size_t output_elems() const {
    return static_cast<size_t>(out_h()) * out_w() * c_out;
  }
  // Element operations per layer: every output gathers k*k*c_in inputs.
  size_t gathered_elems() const {
    return output_elems() * static_cast<size_t>(k) * k * c_in;
  }
};

// Layer evaluation: image layout (y * w + x) * c_in + ci, filter layout
// ((ky * k + kx) * c_in + ci) * c_out + co, output (oy * out_w + ox) *
// c_out + co. Out-of-range taps read zero shares (zero padding). The whole
// layer runs as one batched element operation, so rounds do not grow with
// the output size.
std::vector<uint64_t> adder_layer(Session& s, const Ring& ring,
                                  const LayerSpec& spec,
                                  std::span<const uint64_t> my_image,
                                  std::span<const uint64_t> my_filter);
std::vector<uint64_t> conv_layer(Session& s, const Ring& ring,
                                 const LayerSpec& spec,
                                 std::span<const uint64_t> my_image,
                                 std::span<const uint64_t> my_filter);

// Built-in benchmark shapes (CIFAR-10 ResNet-32 layer classes).
const std::vector<LayerSpec>& cifar10_resnet32_layers();

}  // namespace norm2pc
