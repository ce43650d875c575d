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

// All functions below run on additively shared ring values; both parties
// call the same entry point with their own shares and obtain their share of
// the result. Selector bits are XOR shared. Signed building blocks (msb,
// abs, max, min) require the reconstructed values, and differences formed
// from them, to lie in the signed range (-2^(l-1), 2^(l-1)).

// XOR shares of the most significant bit of x (the sign bit of the two's
// complement view): a radix comparison on the low l-1 bits yields the carry
// into the top position.
std::vector<uint8_t> msb_batch(Session& s, const Ring& ring,
                               std::span<const uint64_t> my_shares);

// Arithmetic shares of s * x (zero or keep). One correlated OT per party.
std::vector<uint64_t> base_mux_batch(Session& s, const Ring& ring,
                                     std::span<const uint8_t> my_sel,
                                     std::span<const uint64_t> my_val);

// Arithmetic shares of (1 - 2s) * x (keep or negate), the absolute-value
// step once s is the sign bit. Same correlated OTs as base_mux.
std::vector<uint64_t> abs_mux_batch(Session& s, const Ring& ring,
                                    std::span<const uint8_t> my_sel,
                                    std::span<const uint64_t> my_val);

// Arithmetic shares of s ? x : y, reduced to base_mux on x - y.
std::vector<uint64_t> gen_mux_batch(Session& s, const Ring& ring,
                                    std::span<const uint8_t> my_sel,
                                    std::span<const uint64_t> my_x,
                                    std::span<const uint64_t> my_y);

// Arithmetic shares of |x| for signed x: sign bit, then abs_mux.
std::vector<uint64_t> abs_batch(Session& s, const Ring& ring,
                                std::span<const uint64_t> my_shares);

// Tournament maximum/minimum of a shared vector. Every level batches all of
// its pairwise comparisons (msb of the difference, then base_mux), so the
// round count grows with ceil(log2 n); an odd element passes through a
// level untouched.
uint64_t tree_max(Session& s, const Ring& ring,
                  std::span<const uint64_t> my_shares);
uint64_t tree_min(Session& s, const Ring& ring,
                  std::span<const uint64_t> my_shares);

// Sequential left fold over the same comparator, Theta(n) rounds. Kept as
// the baseline the tree schedule is measured against.
uint64_t naive_max(Session& s, const Ring& ring,
                   std::span<const uint64_t> my_shares);

// Arithmetic shares of x * y. Each party sends one correlated OT per bit of
// its own factor (2l COT_l per element in total).
std::vector<uint64_t> mul_batch(Session& s, const Ring& ring,
                                std::span<const uint64_t> my_x,
                                std::span<const uint64_t> my_y);

// Experimental variant grouping the choice bits of each factor into
// group_bits-wide chunks served by 1-of-2^group_bits OTs. Costs more than
// mul_batch for the supported widths under the pinned cost model; kept for
// measurement, not used by any norm.
std::vector<uint64_t> mul_batch_grouped(Session& s, const Ring& ring,
                                        std::span<const uint64_t> my_x,
                                        std::span<const uint64_t> my_y,
                                        int group_bits);

}  // namespace norm2pc
