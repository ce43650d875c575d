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

#include "norm2pc/cost.hpp"
#include "norm2pc/norms.hpp"
#include "norm2pc/prng.hpp"
#include "norm2pc/ring.hpp"
#include "norm2pc/session.hpp"

namespace norm2pc {

// Plaintext problem instance for one protocol execution.
struct ProtoInputs {
  std::vector<uint64_t> x, y;  // ring values, two's complement where signed
  std::vector<uint8_t> sel;    // selector bits for the mux family
  LayerSpec layer;             // layer protocols only
  bool has_layer = false;
};

// Which vectors a protocol consumes and how its output reconstructs.
struct ProtoShape {
  bool uses_x = false, uses_y = false, uses_sel = false, uses_layer = false;
  bool private_inputs = false;  // raw inputs, never secret shared (mill)
  bool bit_output = false;      // XOR reconstruction instead of additive
};
ProtoShape protocol_shape(Protocol p);

// Element count n entering the cost formulas (layers: gathered elements).
uint64_t effective_n(Protocol p, uint64_t dim, const LayerSpec& layer,
                     bool has_layer);

// Expected plaintext vector lengths for a given dim / layer.
size_t expected_len_x(Protocol p, uint64_t dim, const LayerSpec& layer);
size_t expected_len_y(Protocol p, uint64_t dim, const LayerSpec& layer);
size_t expected_len_sel(Protocol p, uint64_t dim);

// Seeded instance generation respecting each protocol's documented input
// ranges (comparison-based protocols stay inside the signed range).
ProtoInputs make_inputs(Protocol p, const Ring& ring, uint64_t dim,
                        const LayerSpec* layer, Prng& rng);

// Plaintext reference result (scalar protocols return one element).
std::vector<uint64_t> oracle_eval(Protocol p, const Ring& ring,
                                  const ProtoInputs& in);

// One party's share view of an instance.
struct PartyView {
  std::vector<uint64_t> x, y;
  std::vector<uint8_t> sel;
};

// In-process split into both views (test path).
std::pair<PartyView, PartyView> split_inputs(Protocol p, const Ring& ring,
                                             const ProtoInputs& in,
                                             Prng& rng);

// Wire split (two-process path): each party passes the vectors it owns
// (party 0: x and the layer image; party 1: y, selectors, the layer
// filter) and receives its share view. Frames are tagged "input" and stay
// outside the modeled protocol schedule. Millionaire inputs stay private.
PartyView share_inputs(Session& s, const Ring& ring, Protocol p,
                       const ProtoInputs& mine, uint64_t dim,
                       const LayerSpec& layer);

struct RunOptions {
  SqrtProvider* sqrt = nullptr;
};

// Execute the protocol on this party's shares; returns output shares.
std::vector<uint64_t> run_protocol(Session& s, const Ring& ring, Protocol p,
                                   const PartyView& view,
                                   const LayerSpec& layer,
                                   const RunOptions& opt = {});

// Exchange output shares and reconstruct (tagged "reveal", off schedule).
std::vector<uint64_t> reveal_output(Session& s, const Ring& ring, Protocol p,
                                    std::span<const uint64_t> my_out);

// Combine two share vectors without a wire (test path).
std::vector<uint64_t> combine_shares(Protocol p, const Ring& ring,
                                     std::span<const uint64_t> out0,
                                     std::span<const uint64_t> out1);

// Report assembly from a finished session's metrics. Setup-tagged traffic
// (extension bootstrap, handshake) is excluded from the protocol figures.
CostReport build_report(Session& s, Protocol p, const CostModelParams& params,
                        double wall_ms);

// Both parties in-process over the local transport.
struct LocalRunResult {
  std::vector<uint64_t> out0, out1;
  std::vector<uint64_t> reconstructed;
  CostReport report0, report1;
};
LocalRunResult run_local(Protocol p, const SessionConfig& base_cfg, int bits,
                         const ProtoInputs& in, const RunOptions& opt = {});

}  // namespace norm2pc
