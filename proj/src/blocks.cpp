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

#include "norm2pc/blocks.hpp"

#include <algorithm>

#include "norm2pc/errors.hpp"
#include "norm2pc/millionaire.hpp"
#include "norm2pc/ot.hpp"
#include "norm2pc/session.hpp"

namespace norm2pc {

std::vector<uint8_t> msb_batch(Session& s, const Ring& ring,
                               std::span<const uint64_t> my_shares) {
  auto scope = s.scope("msb");
  size_t n = my_shares.size();
  int low_bits = ring.bits() - 1;
  uint64_t low_mask = (uint64_t{1} << low_bits) - 1;

  // msb(x0 + x1) = msb(x0) ^ msb(x1) ^ carry out of the low l-1 bits.
  // carry = 1{low(x0) + low(x1) > 2^(l-1) - 1} = 1{mask - low(x0) < low(x1)}.
  std::vector<uint64_t> cmp_in(n);
  for (size_t i = 0; i < n; ++i) {
    uint64_t low = my_shares[i] & low_mask;
    cmp_in[i] = s.party() == Party::P0 ? low_mask - low : low;
  }
  auto carry = compare_lt_batch(s, cmp_in, low_bits, s.m_radix());
  std::vector<uint8_t> out(n);
  for (size_t i = 0; i < n; ++i) {
    out[i] = static_cast<uint8_t>(ring.top_bit(my_shares[i]) ^ carry[i]);
  }
  return out;
}

namespace {

// Shared COT layout for both mux flavours: each party sends one correlated
// OT with delta_i = (1 - 2 s_b) * x_b and receives against its own selector
// bit. The two output formulas below differ only in the local combination.
BidirCot mux_cots(Session& s, const Ring& ring, std::span<const uint8_t> sel,
                  std::span<const uint64_t> val) {
  if (sel.size() != val.size()) throw UsageError("mux: size mismatch");
  std::vector<uint64_t> deltas(val.size());
  for (size_t i = 0; i < val.size(); ++i) {
    deltas[i] = (sel[i] & 1) ? ring.neg(val[i]) : val[i];
  }
  return cot_bidirectional(s, ring.bits(), deltas, sel, CorrSign::Add);
}

}  // namespace

std::vector<uint64_t> base_mux_batch(Session& s, const Ring& ring,
                                     std::span<const uint8_t> my_sel,
                                     std::span<const uint64_t> my_val) {
  auto scope = s.scope("mux");
  auto cot = mux_cots(s, ring, my_sel, my_val);
  std::vector<uint64_t> out(my_val.size());
  for (size_t i = 0; i < out.size(); ++i) {
    uint64_t w = ring.sub((my_sel[i] & 1) ? my_val[i] : 0,
                          cot.sender_randoms[i]);
    out[i] = ring.add(w, cot.received[i]);
  }
  return out;
}

std::vector<uint64_t> abs_mux_batch(Session& s, const Ring& ring,
                                    std::span<const uint8_t> my_sel,
                                    std::span<const uint64_t> my_val) {
  auto scope = s.scope("absmux");
  auto cot = mux_cots(s, ring, my_sel, my_val);
  std::vector<uint64_t> out(my_val.size());
  for (size_t i = 0; i < out.size(); ++i) {
    uint64_t delta = (my_sel[i] & 1) ? ring.neg(my_val[i]) : my_val[i];
    uint64_t w = ring.add(delta, ring.add(cot.sender_randoms[i],
                                          cot.sender_randoms[i]));
    out[i] = ring.sub(w, ring.add(cot.received[i], cot.received[i]));
  }
  return out;
}

std::vector<uint64_t> gen_mux_batch(Session& s, const Ring& ring,
                                    std::span<const uint8_t> my_sel,
                                    std::span<const uint64_t> my_x,
                                    std::span<const uint64_t> my_y) {
  auto scope = s.scope("genmux");
  if (my_x.size() != my_y.size()) throw UsageError("gen_mux: size mismatch");
  std::vector<uint64_t> diff(my_x.size());
  for (size_t i = 0; i < diff.size(); ++i) {
    diff[i] = ring.sub(my_x[i], my_y[i]);
  }
  auto z = base_mux_batch(s, ring, my_sel, diff);
  for (size_t i = 0; i < z.size(); ++i) z[i] = ring.add(my_y[i], z[i]);
  return z;
}

std::vector<uint64_t> abs_batch(Session& s, const Ring& ring,
                                std::span<const uint64_t> my_shares) {
  auto scope = s.scope("abs");
  auto sign = msb_batch(s, ring, my_shares);
  return abs_mux_batch(s, ring, sign, my_shares);
}

namespace {

// One tournament level: compare cur[2i] against cur[2i+1] via the sign of
// their difference, keep the larger (or smaller) with base_mux. For max the
// selector is the negated sign bit; party 1 flips its share to negate.
std::vector<uint64_t> extreme_level(Session& s, const Ring& ring,
                                    std::span<const uint64_t> cur,
                                    bool want_max) {
  size_t pairs = cur.size() / 2;
  std::vector<uint64_t> d(pairs);
  for (size_t i = 0; i < pairs; ++i) d[i] = ring.sub(cur[2 * i], cur[2 * i + 1]);
  auto sel = msb_batch(s, ring, d);
  if (want_max && s.party() == Party::P1) {
    for (auto& b : sel) b ^= 1;
  }
  auto z = base_mux_batch(s, ring, sel, d);
  std::vector<uint64_t> next((cur.size() + 1) / 2);
  for (size_t i = 0; i < pairs; ++i) next[i] = ring.add(z[i], cur[2 * i + 1]);
  if (cur.size() % 2 != 0) next[pairs] = cur[cur.size() - 1];
  return next;
}

uint64_t tree_extreme(Session& s, const Ring& ring,
                      std::span<const uint64_t> my_shares, bool want_max,
                      const char* tag) {
  if (my_shares.empty()) throw UsageError("max/min: empty input");
  auto scope = s.scope(tag);
  std::vector<uint64_t> cur(my_shares.begin(), my_shares.end());
  while (cur.size() > 1) cur = extreme_level(s, ring, cur, want_max);
  return cur[0];
}

}  // namespace

uint64_t tree_max(Session& s, const Ring& ring,
                  std::span<const uint64_t> my_shares) {
  return tree_extreme(s, ring, my_shares, true, "max");
}

uint64_t tree_min(Session& s, const Ring& ring,
                  std::span<const uint64_t> my_shares) {
  return tree_extreme(s, ring, my_shares, false, "min");
}

uint64_t naive_max(Session& s, const Ring& ring,
                   std::span<const uint64_t> my_shares) {
  if (my_shares.empty()) throw UsageError("max/min: empty input");
  auto scope = s.scope("naive_max");
  uint64_t acc = my_shares[0];
  for (size_t i = 1; i < my_shares.size(); ++i) {
    uint64_t pair[2] = {acc, my_shares[i]};
    acc = extreme_level(s, ring, pair, true)[0];
  }
  return acc;
}

std::vector<uint64_t> mul_batch(Session& s, const Ring& ring,
                                std::span<const uint64_t> my_x,
                                std::span<const uint64_t> my_y) {
  auto scope = s.scope("mult");
  if (my_x.size() != my_y.size()) throw UsageError("mul: size mismatch");
  size_t n = my_x.size();
  int l = ring.bits();

  // Cross terms x_b * y_(1-b): party b is COT sender with deltas x_b << j
  // and receiver with the bits of its own y_b. Sub correlation gives
  // receiver t = b * delta - r, so both sides add their sums.
  std::vector<uint64_t> deltas(n * l);
  std::vector<uint8_t> bits(n * l);
  for (size_t i = 0; i < n; ++i) {
    for (int j = 0; j < l; ++j) {
      deltas[i * l + j] = ring.reduce(my_x[i] << j);
      bits[i * l + j] = static_cast<uint8_t>((my_y[i] >> j) & 1);
    }
  }
  auto cot = cot_bidirectional(s, l, deltas, bits, CorrSign::Sub);
  std::vector<uint64_t> out(n);
  for (size_t i = 0; i < n; ++i) {
    uint64_t acc = ring.mul(my_x[i], my_y[i]);
    for (int j = 0; j < l; ++j) {
      acc = ring.add(acc, ring.add(cot.sender_randoms[i * l + j],
                                   cot.received[i * l + j]));
    }
    out[i] = acc;
  }
  return out;
}

std::vector<uint64_t> mul_batch_grouped(Session& s, const Ring& ring,
                                        std::span<const uint64_t> my_x,
                                        std::span<const uint64_t> my_y,
                                        int group_bits) {
  auto scope = s.scope("mult_grouped");
  if (my_x.size() != my_y.size()) throw UsageError("mul: size mismatch");
  if (group_bits < 1 || group_bits > 8) {
    throw UsageError("mul: group_bits must be in [1, 8]");
  }
  size_t n = my_x.size();
  int l = ring.bits();
  int q = (l + group_bits - 1) / group_bits;
  int n_msgs = 1 << group_bits;

  // Same cross-term split as mul_batch, but each chunk of the receiver's
  // factor selects v * x_b << shift from a 1-of-2^g table, masked by a
  // fresh sender random per chunk.
  auto run_sender = [&](std::span<const uint64_t> xs) {
    std::vector<uint64_t> tables(n * q * n_msgs);
    std::vector<uint64_t> rand_sum(n, 0);
    Prng& rng = s.rng();
    for (size_t i = 0; i < n; ++i) {
      for (int c = 0; c < q; ++c) {
        uint64_t r = ring.reduce(rng.next_bits(l));
        rand_sum[i] = ring.add(rand_sum[i], r);
        uint64_t base = ring.reduce(xs[i] << (c * group_bits));
        for (int v = 0; v < n_msgs; ++v) {
          tables[(i * q + c) * n_msgs + v] =
              ring.sub(ring.mul(base, static_cast<uint64_t>(v)), r);
        }
      }
    }
    s.ot().otn_send(s, n_msgs, l, tables);
    return rand_sum;
  };
  auto run_receiver = [&](std::span<const uint64_t> ys) {
    std::vector<uint8_t> choices(n * q);
    for (size_t i = 0; i < n; ++i) {
      for (int c = 0; c < q; ++c) {
        choices[i * q + c] =
            static_cast<uint8_t>((ys[i] >> (c * group_bits)) & (n_msgs - 1));
      }
    }
    auto got = s.ot().otn_recv(s, n_msgs, l, choices);
    std::vector<uint64_t> sum(n, 0);
    for (size_t i = 0; i < n; ++i) {
      for (int c = 0; c < q; ++c) sum[i] = ring.add(sum[i], got[i * q + c]);
    }
    return sum;
  };

  std::vector<uint64_t> s_sum, t_sum;
  if (s.party() == Party::P0) {
    s_sum = run_sender(my_x);
    t_sum = run_receiver(my_y);
  } else {
    t_sum = run_receiver(my_y);
    s_sum = run_sender(my_x);
  }
  std::vector<uint64_t> out(n);
  for (size_t i = 0; i < n; ++i) {
    out[i] = ring.add(ring.mul(my_x[i], my_y[i]),
                      ring.add(s_sum[i], t_sum[i]));
  }
  return out;
}

}  // namespace norm2pc
