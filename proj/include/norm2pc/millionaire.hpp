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
#include <vector>

#include "norm2pc/ring.hpp"

namespace norm2pc {

class Session;

// Radix decomposition plan for the two-party comparison 1{x < y}.
// Inputs split into ceil(bits/radix) chunks, compared leaf-wise by 1-of-2^m
// OT, then stitched with the recursion
//     lt = lt_hi ^ (eq_hi & lt_lo),   eq = eq_hi & eq_lo
// over the largest perfect binary trees covering the chunks (MSB side
// first), folded right to left. Only nodes whose eq lane is consumed
// upstream evaluate the second AND; for a perfect tree of q leaves the AND
// count is 2(q-1) - log2(q).
struct CompareLeaf {
  int shift;     // low bit position of the chunk in the input
  int width;     // chunk width in bits (top chunk may be short)
  bool need_eq;  // whether the eq lane of this leaf is consumed
};

struct CompareGate {
  int hi_slot, lo_slot, out_slot;
  bool compute_eq;
};

struct ComparePlan {
  int input_bits = 0;
  int radix = 0;
  std::vector<CompareLeaf> leaves;                // most significant first
  std::vector<std::vector<CompareGate>> layers;   // one opening round each
  int slot_count = 0;
  int root_slot = 0;

  int gate_count() const {
    int g = 0;
    for (const auto& l : layers) g += static_cast<int>(l.size());
    return g;
  }

  int and_count() const {
    int a = 0;
    for (const auto& l : layers) {
      for (const auto& g : l) a += g.compute_eq ? 2 : 1;
    }
    return a;
  }
};

ComparePlan make_compare_plan(int input_bits, int radix);

// Full comparison on private inputs: party 0 supplies x_i, party 1 y_i;
// both receive XOR shares of 1{x_i < y_i}. Values must fit input_bits.
std::vector<uint8_t> compare_lt_batch(Session& s,
                                      std::span<const uint64_t> my_inputs,
                                      int input_bits, int radix);
BitShare compare_lt(Session& s, uint64_t my_input, int input_bits, int radix);

// Chunk-level comparison: both lt and eq shares for width-bit private
// chunks (party 0 holds x chunks, party 1 y chunks). One 1-of-2^width OT
// with 2-bit payloads per chunk.
struct LeafShares {
  std::vector<uint8_t> lt, eq;
};
LeafShares leaf_compare_batch(Session& s, std::span<const uint64_t> my_chunks,
                              int width);

// Batched AND on XOR-shared bits via Beaver triples from COT_1 pairs.
std::vector<uint8_t> and_gate_batch(Session& s, std::span<const uint8_t> a,
                                    std::span<const uint8_t> b);

// Tree/fold evaluation given leaf shares, slot-major layout
// (value of slot j for instance i lives at [j * batch + i]).
// Returns the root lt shares, one per instance.
std::vector<uint8_t> combine_tree_batch(Session& s, const ComparePlan& plan,
                                        std::vector<uint8_t> lt,
                                        std::vector<uint8_t> eq,
                                        size_t batch);

}  // namespace norm2pc
