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

#include "norm2pc/millionaire.hpp"

#include <algorithm>

#include "norm2pc/bytes.hpp"
#include "norm2pc/errors.hpp"
#include "norm2pc/ot.hpp"
#include "norm2pc/session.hpp"

namespace norm2pc {

namespace {

// Requirement marking: the fold consumes eq of every tree root except the
// least significant one; inside a tree, a node's hi child always needs eq
// (the lt recursion reads it) while the lo child inherits the parent's
// need. The lt-only set is therefore the rightmost spine of the last tree.
struct TreeNodes {
  // level -> slot per node, level 0 = leaves, MSB side first within level.
  std::vector<std::vector<int>> levels;
  std::vector<std::vector<uint8_t>> need_eq;
};

}  // namespace

ComparePlan make_compare_plan(int input_bits, int radix) {
  if (input_bits < 1 || input_bits > 64) {
    throw UsageError("compare plan: input bits must be in [1, 64]");
  }
  if (radix < 1 || radix > 8) {
    throw UsageError("compare plan: radix must be in [1, 8]");
  }
  ComparePlan plan;
  plan.input_bits = input_bits;
  plan.radix = radix;

  int q = (input_bits + radix - 1) / radix;
  // Leaves most significant first; the top chunk may be short.
  for (int c = q - 1; c >= 0; --c) {
    int shift = c * radix;
    int width = std::min(radix, input_bits - shift);
    plan.leaves.push_back(CompareLeaf{shift, width, true});
  }
  plan.slot_count = q;
  if (q == 1) {
    plan.root_slot = 0;
    plan.leaves[0].need_eq = false;
    return plan;
  }

  // Largest perfect trees over the chunk list, MSB side first.
  std::vector<std::pair<int, int>> trees;  // leaf range [begin, end)
  int pos = 0;
  while (pos < q) {
    int size = 1;
    while (size * 2 <= q - pos) size *= 2;
    trees.emplace_back(pos, pos + size);
    pos += size;
  }

  std::vector<TreeNodes> built(trees.size());
  size_t max_depth = 0;
  for (size_t t = 0; t < trees.size(); ++t) {
    auto& tn = built[t];
    std::vector<int> level;
    for (int i = trees[t].first; i < trees[t].second; ++i) level.push_back(i);
    tn.levels.push_back(level);
    while (tn.levels.back().size() > 1) {
      const auto& prev = tn.levels.back();
      std::vector<int> next;
      for (size_t i = 0; i + 1 < prev.size(); i += 2) {
        next.push_back(plan.slot_count++);
      }
      tn.levels.push_back(next);
    }
    max_depth = std::max(max_depth, tn.levels.size() - 1);
    // Top-down eq marking.
    tn.need_eq.resize(tn.levels.size());
    for (size_t r = 0; r < tn.levels.size(); ++r) {
      tn.need_eq[r].assign(tn.levels[r].size(), 0);
    }
    bool root_needs_eq = t + 1 < trees.size();
    tn.need_eq.back()[0] = root_needs_eq ? 1 : 0;
    for (size_t r = tn.levels.size() - 1; r >= 1; --r) {
      for (size_t i = 0; i < tn.levels[r].size(); ++i) {
        tn.need_eq[r - 1][2 * i] = 1;  // hi child
        tn.need_eq[r - 1][2 * i + 1] = tn.need_eq[r][i];
      }
    }
  }

  plan.layers.resize(max_depth);
  for (size_t t = 0; t < trees.size(); ++t) {
    const auto& tn = built[t];
    for (size_t r = 1; r < tn.levels.size(); ++r) {
      for (size_t i = 0; i < tn.levels[r].size(); ++i) {
        plan.layers[r - 1].push_back(
            CompareGate{tn.levels[r - 1][2 * i], tn.levels[r - 1][2 * i + 1],
                        tn.levels[r][i], tn.need_eq[r][i] != 0});
      }
    }
    for (size_t i = 0; i < tn.levels[0].size(); ++i) {
      plan.leaves[trees[t].first + i].need_eq = tn.need_eq[0][i] != 0;
    }
  }

  // Right-to-left fold across tree roots, one sequential layer per step.
  int acc = built.back().levels.back()[0];
  for (int t = static_cast<int>(trees.size()) - 2; t >= 0; --t) {
    int out = plan.slot_count++;
    plan.layers.push_back(
        {CompareGate{built[t].levels.back()[0], acc, out, false}});
    acc = out;
  }
  plan.root_slot = acc;
  return plan;
}

LeafShares leaf_compare_batch(Session& s, std::span<const uint64_t> my_chunks,
                              int width) {
  if (width < 1 || width > 8) {
    throw UsageError("leaf compare: width must be in [1, 8]");
  }
  auto scope = s.scope("leaf");
  size_t count = my_chunks.size();
  int n_msgs = 1 << width;
  LeafShares out;
  out.lt.resize(count);
  out.eq.resize(count);
  if (count == 0) return out;

  if (s.party() == Party::P0) {
    std::vector<uint64_t> tables(count * n_msgs);
    for (size_t i = 0; i < count; ++i) {
      uint64_t x = my_chunks[i];
      uint8_t r_lt = s.rng().next_bit();
      uint8_t r_eq = s.rng().next_bit();
      out.lt[i] = r_lt;
      out.eq[i] = r_eq;
      for (int v = 0; v < n_msgs; ++v) {
        uint64_t lt = (x < static_cast<uint64_t>(v)) ? 1 : 0;
        uint64_t eq = (x == static_cast<uint64_t>(v)) ? 1 : 0;
        tables[i * n_msgs + v] = (lt ^ r_lt) | ((eq ^ r_eq) << 1);
      }
    }
    s.ot().otn_send(s, n_msgs, 2, tables);
  } else {
    std::vector<uint8_t> choices(count);
    for (size_t i = 0; i < count; ++i) {
      if (my_chunks[i] >= static_cast<uint64_t>(n_msgs)) {
        throw UsageError("leaf compare: chunk value exceeds width");
      }
      choices[i] = static_cast<uint8_t>(my_chunks[i]);
    }
    auto got = s.ot().otn_recv(s, n_msgs, 2, choices);
    for (size_t i = 0; i < count; ++i) {
      out.lt[i] = static_cast<uint8_t>(got[i] & 1);
      out.eq[i] = static_cast<uint8_t>((got[i] >> 1) & 1);
    }
  }
  return out;
}

namespace {

// Correlated Beaver pair for one tree gate: shares of a, b, d plus
// c = a&b and e = a&d, produced by a single 1-of-8 OT with 2-bit payload
// (party 0 chooses its own random (a0, b0, d0); party 1 is the sender).
struct TriplePool {
  std::vector<uint8_t> a, b, d, c, e;
};

TriplePool make_gate_triples(Session& s, size_t count) {
  auto scope = s.scope("triple");
  TriplePool p;
  p.a.resize(count);
  p.b.resize(count);
  p.d.resize(count);
  p.c.resize(count);
  p.e.resize(count);
  if (count == 0) return p;

  if (s.party() == Party::P0) {
    std::vector<uint8_t> choices(count);
    for (size_t i = 0; i < count; ++i) {
      p.a[i] = s.rng().next_bit();
      p.b[i] = s.rng().next_bit();
      p.d[i] = s.rng().next_bit();
      choices[i] = static_cast<uint8_t>(p.a[i] | (p.b[i] << 1) | (p.d[i] << 2));
    }
    auto got = s.ot().otn_recv(s, 8, 2, choices);
    for (size_t i = 0; i < count; ++i) {
      p.c[i] = static_cast<uint8_t>(got[i] & 1);
      p.e[i] = static_cast<uint8_t>((got[i] >> 1) & 1);
    }
  } else {
    std::vector<uint64_t> tables(count * 8);
    for (size_t i = 0; i < count; ++i) {
      p.a[i] = s.rng().next_bit();
      p.b[i] = s.rng().next_bit();
      p.d[i] = s.rng().next_bit();
      uint8_t rc = s.rng().next_bit();
      uint8_t re = s.rng().next_bit();
      p.c[i] = rc;
      p.e[i] = re;
      for (int ch = 0; ch < 8; ++ch) {
        uint8_t a = (ch & 1) ^ p.a[i];
        uint8_t b = ((ch >> 1) & 1) ^ p.b[i];
        uint8_t d = ((ch >> 2) & 1) ^ p.d[i];
        tables[i * 8 + ch] = static_cast<uint64_t>(((a & b) ^ rc) |
                                                   (((a & d) ^ re) << 1));
      }
    }
    s.ot().otn_send(s, 8, 2, tables);
  }
  return p;
}

// One Beaver opening round for a list of ANDs: both parties exchange packed
// (d, e) bit pairs; exactly 2 bits per AND per direction in the schedule.
struct AndJob {
  uint8_t x, y;     // my operand shares
  uint8_t a, b, c;  // my triple shares
};

std::vector<uint8_t> open_and_finish(Session& s, std::vector<AndJob>& jobs) {
  BitWriter wr;
  for (const auto& j : jobs) {
    wr.put(static_cast<uint64_t>(j.x ^ j.a), 1);
    wr.put(static_cast<uint64_t>(j.y ^ j.b), 1);
  }
  auto mine = wr.take();
  uint64_t sched = static_cast<uint64_t>(jobs.size()) * 2;
  s.send_with_sched(mine, sched);
  s.flush_round();
  auto theirs = s.recv_with_sched(sched);
  BitReader rm(mine), rt(theirs);
  std::vector<uint8_t> z(jobs.size());
  int me = idx(s.party());
  for (size_t i = 0; i < jobs.size(); ++i) {
    uint8_t dj = static_cast<uint8_t>(rm.get(1) ^ rt.get(1));
    uint8_t ej = static_cast<uint8_t>(rm.get(1) ^ rt.get(1));
    z[i] = static_cast<uint8_t>(((me & dj & ej) ^ (dj & jobs[i].b) ^
                                 (ej & jobs[i].a) ^ jobs[i].c) &
                                1);
  }
  return z;
}

}  // namespace

std::vector<uint8_t> and_gate_batch(Session& s, std::span<const uint8_t> a,
                                    std::span<const uint8_t> b) {
  if (a.size() != b.size()) throw UsageError("and_gate: size mismatch");
  auto scope = s.scope("and");
  size_t count = a.size();
  if (count == 0) return {};

  // Beaver triples from one COT_1 in each direction:
  // c = ab = a0b0 ^ a0b1 ^ a1b0 ^ a1b1, cross terms via correlated OT.
  std::vector<uint8_t> ta(count), tb(count);
  std::vector<uint64_t> deltas(count);
  for (size_t i = 0; i < count; ++i) {
    ta[i] = s.rng().next_bit();
    tb[i] = s.rng().next_bit();
    deltas[i] = ta[i];
  }
  auto bid = cot_bidirectional(s, 1, deltas, tb, CorrSign::Add);
  std::vector<AndJob> jobs(count);
  for (size_t i = 0; i < count; ++i) {
    uint8_t tc = static_cast<uint8_t>(
        (ta[i] & tb[i]) ^ (bid.sender_randoms[i] & 1) ^ (bid.received[i] & 1));
    jobs[i] = AndJob{static_cast<uint8_t>(a[i] & 1),
                     static_cast<uint8_t>(b[i] & 1), ta[i], tb[i], tc};
  }
  return open_and_finish(s, jobs);
}

std::vector<uint8_t> combine_tree_batch(Session& s, const ComparePlan& plan,
                                        std::vector<uint8_t> lt,
                                        std::vector<uint8_t> eq,
                                        size_t batch) {
  auto scope = s.scope("tree");
  size_t slots = static_cast<size_t>(plan.slot_count);
  if (lt.size() < plan.leaves.size() * batch ||
      eq.size() < plan.leaves.size() * batch) {
    throw UsageError("combine_tree: leaf share arrays too small");
  }
  lt.resize(slots * batch, 0);
  eq.resize(slots * batch, 0);

  size_t gates = static_cast<size_t>(plan.gate_count());
  auto triples = make_gate_triples(s, gates * batch);

  size_t flat = 0;
  for (const auto& layer : plan.layers) {
    std::vector<AndJob> jobs;
    jobs.reserve(layer.size() * batch * 2);
    for (size_t g = 0; g < layer.size(); ++g) {
      const auto& gate = layer[g];
      size_t tbase = (flat + g) * batch;
      for (size_t i = 0; i < batch; ++i) {
        // lt_out = lt_hi ^ (eq_hi & lt_lo) uses (a, b, c);
        // eq_out = eq_hi & eq_lo reuses a via the correlated (a, d, e).
        jobs.push_back(AndJob{eq[gate.hi_slot * batch + i],
                              lt[gate.lo_slot * batch + i],
                              triples.a[tbase + i], triples.b[tbase + i],
                              triples.c[tbase + i]});
        if (gate.compute_eq) {
          jobs.push_back(AndJob{eq[gate.hi_slot * batch + i],
                                eq[gate.lo_slot * batch + i],
                                triples.a[tbase + i], triples.d[tbase + i],
                                triples.e[tbase + i]});
        }
      }
    }
    auto z = open_and_finish(s, jobs);
    size_t zi = 0;
    for (size_t g = 0; g < layer.size(); ++g) {
      const auto& gate = layer[g];
      for (size_t i = 0; i < batch; ++i) {
        lt[gate.out_slot * batch + i] = static_cast<uint8_t>(
            lt[gate.hi_slot * batch + i] ^ z[zi++]);
        if (gate.compute_eq) {
          eq[gate.out_slot * batch + i] = z[zi++];
        }
      }
    }
    flat += layer.size();
  }

  std::vector<uint8_t> out(batch);
  for (size_t i = 0; i < batch; ++i) out[i] = lt[plan.root_slot * batch + i];
  return out;
}

std::vector<uint8_t> compare_lt_batch(Session& s,
                                      std::span<const uint64_t> my_inputs,
                                      int input_bits, int radix) {
  auto scope = s.scope("mill");
  auto plan = make_compare_plan(input_bits, radix);
  size_t batch = my_inputs.size();
  if (batch == 0) return {};
  uint64_t in_mask = input_bits >= 64 ? ~uint64_t{0}
                                      : ((uint64_t{1} << input_bits) - 1);
  for (uint64_t v : my_inputs) {
    if ((v & ~in_mask) != 0) {
      throw UsageError("compare: input exceeds declared bit width");
    }
  }

  // Leaf chunks, slot-major: chunk of leaf j for instance i at [j*batch+i].
  // Every leaf uses one uniform 1-of-2^radix OT with both lanes in the
  // payload, so the whole level is a single batch.
  size_t q = plan.leaves.size();
  std::vector<uint64_t> chunks(q * batch);
  for (size_t j = 0; j < q; ++j) {
    const auto& leaf = plan.leaves[j];
    uint64_t wmask = (uint64_t{1} << leaf.width) - 1;
    for (size_t i = 0; i < batch; ++i) {
      chunks[j * batch + i] = (my_inputs[i] >> leaf.shift) & wmask;
    }
  }
  auto leaves = leaf_compare_batch(s, chunks, radix);
  return combine_tree_batch(s, plan, std::move(leaves.lt),
                            std::move(leaves.eq), batch);
}

BitShare compare_lt(Session& s, uint64_t my_input, int input_bits, int radix) {
  auto bits = compare_lt_batch(s, std::span<const uint64_t>(&my_input, 1),
                               input_bits, radix);
  return BitShare{s.party(), bits[0]};
}

}  // namespace norm2pc
