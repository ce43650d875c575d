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

#include "norm2pc/runner.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include "norm2pc/blocks.hpp"
#include "norm2pc/bytes.hpp"
#include "norm2pc/errors.hpp"
#include "norm2pc/millionaire.hpp"
#include "norm2pc/ot.hpp"
#include "norm2pc/transport.hpp"

namespace norm2pc {

ProtoShape protocol_shape(Protocol p) {
  ProtoShape sh;
  switch (p) {
    case Protocol::Mill:
      sh.uses_x = sh.uses_y = true;
      sh.private_inputs = true;
      sh.bit_output = true;
      break;
    case Protocol::Msb:
      sh.uses_x = true;
      sh.bit_output = true;
      break;
    case Protocol::BaseMux:
    case Protocol::AbsMux:
      sh.uses_x = sh.uses_sel = true;
      break;
    case Protocol::GenMux:
      sh.uses_x = sh.uses_y = sh.uses_sel = true;
      break;
    case Protocol::Abs:
    case Protocol::Max:
    case Protocol::MaxNaive:
    case Protocol::Min:
      sh.uses_x = true;
      break;
    case Protocol::And:
      sh.uses_x = sh.uses_y = true;
      sh.bit_output = true;
      break;
    case Protocol::Mult:
    case Protocol::L1:
    case Protocol::L2Sq:
    case Protocol::L2:
    case Protocol::Linf:
    case Protocol::Adder:
      sh.uses_x = sh.uses_y = true;
      break;
    case Protocol::AdderLayer:
    case Protocol::ConvLayer:
      sh.uses_x = sh.uses_y = sh.uses_layer = true;
      break;
  }
  return sh;
}

uint64_t effective_n(Protocol p, uint64_t dim, const LayerSpec& layer,
                     bool has_layer) {
  auto sh = protocol_shape(p);
  if (sh.uses_layer) {
    if (!has_layer) throw UsageError("layer protocol needs a layer spec");
    return layer.gathered_elems();
  }
  return dim;
}

size_t expected_len_x(Protocol p, uint64_t dim, const LayerSpec& layer) {
  auto sh = protocol_shape(p);
  if (!sh.uses_x) return 0;
  return sh.uses_layer ? layer.image_elems() : dim;
}

size_t expected_len_y(Protocol p, uint64_t dim, const LayerSpec& layer) {
  auto sh = protocol_shape(p);
  if (!sh.uses_y) return 0;
  return sh.uses_layer ? layer.filter_elems() : dim;
}

size_t expected_len_sel(Protocol p, uint64_t dim) {
  return protocol_shape(p).uses_sel ? dim : 0;
}

namespace {

uint64_t quarter_range_value(const Ring& ring, Prng& rng) {
  // Signed value in [-2^(l-2), 2^(l-2)): differences of two such values
  // stay inside the open signed range the comparator needs.
  uint64_t raw = rng.next_bits(ring.bits() - 1);
  int64_t v = static_cast<int64_t>(raw) - (int64_t{1} << (ring.bits() - 2));
  return ring.from_signed(v);
}

bool wants_quarter_range(Protocol p) {
  switch (p) {
    case Protocol::Max:
    case Protocol::MaxNaive:
    case Protocol::Min:
    case Protocol::Linf:
      return true;
    default:
      return false;
  }
}

uint64_t abs_value(const Ring& ring, uint64_t v) {
  return ring.top_bit(v) ? ring.neg(v) : v;
}

uint64_t isqrt64(uint64_t v) {
  uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(v)));
  auto sq = [](uint64_t t) { return static_cast<unsigned __int128>(t) * t; };
  while (r > 0 && sq(r) > v) --r;
  while (sq(r + 1) <= v) ++r;
  return r;
}

// Direct Eq.-style loop, independent of the production gather/scatter.
std::vector<uint64_t> layer_oracle(const Ring& ring, const LayerSpec& sp,
                                   std::span<const uint64_t> img,
                                   std::span<const uint64_t> flt, bool adder) {
  std::vector<uint64_t> out(sp.output_elems(), 0);
  for (int oy = 0; oy < sp.out_h(); ++oy) {
    for (int ox = 0; ox < sp.out_w(); ++ox) {
      for (int co = 0; co < sp.c_out; ++co) {
        uint64_t acc = 0;
        for (int ky = 0; ky < sp.k; ++ky) {
          for (int kx = 0; kx < sp.k; ++kx) {
            int iy = oy * sp.stride - sp.pad + ky;
            int ix = ox * sp.stride - sp.pad + kx;
            for (int ci = 0; ci < sp.c_in; ++ci) {
              uint64_t a = 0;
              if (iy >= 0 && iy < sp.h && ix >= 0 && ix < sp.w) {
                a = img[(static_cast<size_t>(iy) * sp.w + ix) * sp.c_in + ci];
              }
              uint64_t b = flt[((static_cast<size_t>(ky) * sp.k + kx) *
                                sp.c_in + ci) * sp.c_out + co];
              uint64_t term = adder
                  ? ring.neg(abs_value(ring, ring.sub(a, b)))
                  : ring.mul(a, b);
              acc = ring.add(acc, term);
            }
          }
        }
        out[(static_cast<size_t>(oy) * sp.out_w() + ox) * sp.c_out + co] = acc;
      }
    }
  }
  return out;
}

}  // namespace

ProtoInputs make_inputs(Protocol p, const Ring& ring, uint64_t dim,
                        const LayerSpec* layer, Prng& rng) {
  auto sh = protocol_shape(p);
  ProtoInputs in;
  if (sh.uses_layer) {
    if (layer == nullptr) throw UsageError("layer protocol needs a layer spec");
    in.layer = *layer;
    in.has_layer = true;
  }
  size_t lx = expected_len_x(p, dim, in.layer);
  size_t ly = expected_len_y(p, dim, in.layer);
  size_t ls = expected_len_sel(p, dim);

  bool quarter = wants_quarter_range(p);
  bool bits_only = p == Protocol::And;
  uint64_t l2_cap = 0;
  if (p == Protocol::L2) {
    // Keep the true sum of squares below 2^l so the root is meaningful.
    double per = std::sqrt(std::pow(2.0, ring.bits()) /
                           (4.0 * static_cast<double>(dim ? dim : 1)));
    l2_cap = per < 2.0 ? 1 : static_cast<uint64_t>(per);
  }

  auto draw = [&]() -> uint64_t {
    if (bits_only) return rng.next_bit();
    if (quarter) return quarter_range_value(ring, rng);
    if (l2_cap != 0) return rng.next_u64() % l2_cap;
    return ring.reduce(rng.next_bits(ring.bits()));
  };

  in.x.resize(lx);
  for (auto& v : in.x) v = draw();
  in.y.resize(ly);
  for (auto& v : in.y) v = draw();
  in.sel.resize(ls);
  for (auto& v : in.sel) v = rng.next_bit();
  return in;
}

std::vector<uint64_t> oracle_eval(Protocol p, const Ring& ring,
                                  const ProtoInputs& in) {
  std::vector<uint64_t> out;
  switch (p) {
    case Protocol::Mill:
      out.resize(in.x.size());
      for (size_t i = 0; i < out.size(); ++i) out[i] = in.x[i] < in.y[i];
      return out;
    case Protocol::Msb:
      out.resize(in.x.size());
      for (size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<uint64_t>(ring.top_bit(in.x[i]));
      }
      return out;
    case Protocol::BaseMux:
      out.resize(in.x.size());
      for (size_t i = 0; i < out.size(); ++i) {
        out[i] = in.sel[i] ? in.x[i] : 0;
      }
      return out;
    case Protocol::AbsMux:
      out.resize(in.x.size());
      for (size_t i = 0; i < out.size(); ++i) {
        out[i] = in.sel[i] ? ring.neg(in.x[i]) : in.x[i];
      }
      return out;
    case Protocol::GenMux:
      out.resize(in.x.size());
      for (size_t i = 0; i < out.size(); ++i) {
        out[i] = in.sel[i] ? in.x[i] : in.y[i];
      }
      return out;
    case Protocol::Abs:
      out.resize(in.x.size());
      for (size_t i = 0; i < out.size(); ++i) {
        out[i] = abs_value(ring, in.x[i]);
      }
      return out;
    case Protocol::Max:
    case Protocol::MaxNaive:
    case Protocol::Min: {
      if (in.x.empty()) throw UsageError("max/min: empty input");
      uint64_t best = in.x[0];
      for (uint64_t v : in.x) {
        bool take = p == Protocol::Min
                        ? ring.to_signed(v) < ring.to_signed(best)
                        : ring.to_signed(v) > ring.to_signed(best);
        if (take) best = v;
      }
      return {best};
    }
    case Protocol::And:
      out.resize(in.x.size());
      for (size_t i = 0; i < out.size(); ++i) {
        out[i] = (in.x[i] & in.y[i]) & 1;
      }
      return out;
    case Protocol::Mult:
      out.resize(in.x.size());
      for (size_t i = 0; i < out.size(); ++i) {
        out[i] = ring.mul(in.x[i], in.y[i]);
      }
      return out;
    case Protocol::L1: {
      uint64_t acc = 0;
      for (size_t i = 0; i < in.x.size(); ++i) {
        acc = ring.add(acc, abs_value(ring, ring.sub(in.x[i], in.y[i])));
      }
      return {acc};
    }
    case Protocol::L2Sq: {
      uint64_t acc = 0;
      for (size_t i = 0; i < in.x.size(); ++i) {
        uint64_t d = ring.sub(in.x[i], in.y[i]);
        acc = ring.add(acc, ring.mul(d, d));
      }
      return {acc};
    }
    case Protocol::L2: {
      uint64_t acc = 0;
      for (size_t i = 0; i < in.x.size(); ++i) {
        uint64_t d = ring.sub(in.x[i], in.y[i]);
        acc = ring.add(acc, ring.mul(d, d));
      }
      return {ring.reduce(isqrt64(acc))};
    }
    case Protocol::Linf: {
      uint64_t best = 0;
      for (size_t i = 0; i < in.x.size(); ++i) {
        uint64_t m = abs_value(ring, ring.sub(in.x[i], in.y[i]));
        if (m > best) best = m;
      }
      return {best};
    }
    case Protocol::Adder:
      out.resize(in.x.size());
      for (size_t i = 0; i < out.size(); ++i) {
        out[i] = ring.neg(abs_value(ring, ring.sub(in.x[i], in.y[i])));
      }
      return out;
    case Protocol::AdderLayer:
      return layer_oracle(ring, in.layer, in.x, in.y, true);
    case Protocol::ConvLayer:
      return layer_oracle(ring, in.layer, in.x, in.y, false);
  }
  throw UsageError("unknown protocol value");
}

namespace {

void split_arith(const Ring& ring, std::span<const uint64_t> plain, Prng& rng,
                 std::vector<uint64_t>& s0, std::vector<uint64_t>& s1) {
  s0.resize(plain.size());
  s1.resize(plain.size());
  for (size_t i = 0; i < plain.size(); ++i) {
    s0[i] = ring.reduce(rng.next_bits(ring.bits()));
    s1[i] = ring.sub(plain[i], s0[i]);
  }
}

void split_xor(std::span<const uint8_t> plain, Prng& rng,
               std::vector<uint8_t>& s0, std::vector<uint8_t>& s1) {
  s0.resize(plain.size());
  s1.resize(plain.size());
  for (size_t i = 0; i < plain.size(); ++i) {
    s0[i] = rng.next_bit();
    s1[i] = (plain[i] ^ s0[i]) & 1;
  }
}

void split_xor_wide(const std::vector<uint64_t>& plain, Prng& rng,
                    std::vector<uint64_t>& s0, std::vector<uint64_t>& s1) {
  s0.resize(plain.size());
  s1.resize(plain.size());
  for (size_t i = 0; i < plain.size(); ++i) {
    s0[i] = rng.next_bit();
    s1[i] = (plain[i] ^ s0[i]) & 1;
  }
}

}  // namespace

std::pair<PartyView, PartyView> split_inputs(Protocol p, const Ring& ring,
                                             const ProtoInputs& in,
                                             Prng& rng) {
  auto sh = protocol_shape(p);
  PartyView v0, v1;
  if (sh.private_inputs) {
    v0.x = in.x;
    v1.x = in.y;  // each side passes its own private operand as x
    return {v0, v1};
  }
  if (p == Protocol::And) {
    split_xor_wide(in.x, rng, v0.x, v1.x);
    split_xor_wide(in.y, rng, v0.y, v1.y);
    return {v0, v1};
  }
  if (sh.uses_x) split_arith(ring, in.x, rng, v0.x, v1.x);
  if (sh.uses_y) split_arith(ring, in.y, rng, v0.y, v1.y);
  if (sh.uses_sel) split_xor(in.sel, rng, v0.sel, v1.sel);
  return {v0, v1};
}

namespace {

// Owner sends the peer's share; peer receives it. Off the modeled schedule.
std::vector<uint64_t> share_arith_wire(Session& s, const Ring& ring,
                                       Party owner,
                                       std::span<const uint64_t> plain,
                                       size_t len) {
  std::vector<uint64_t> mine(len);
  if (s.party() == owner) {
    if (plain.size() != len) throw UsageError("input: wrong vector length");
    BitWriter w;
    for (size_t i = 0; i < len; ++i) {
      uint64_t other_share = ring.reduce(s.rng().next_bits(ring.bits()));
      mine[i] = ring.sub(plain[i], other_share);
      w.put(other_share, ring.bits());
    }
    auto buf = w.take();
    s.send(buf, /*in_schedule=*/false);
    s.flush_round();
  } else {
    auto buf = s.recv(/*in_schedule=*/false);
    BitReader r(buf);
    for (auto& v : mine) v = r.get(ring.bits());
  }
  return mine;
}

std::vector<uint8_t> share_bits_wire(Session& s, Party owner,
                                     std::span<const uint8_t> plain,
                                     size_t len) {
  std::vector<uint8_t> mine(len);
  if (s.party() == owner) {
    if (plain.size() != len) throw UsageError("input: wrong vector length");
    BitWriter w;
    for (size_t i = 0; i < len; ++i) {
      uint8_t other_share = s.rng().next_bit();
      mine[i] = (plain[i] ^ other_share) & 1;
      w.put(other_share, 1);
    }
    auto buf = w.take();
    s.send(buf, /*in_schedule=*/false);
    s.flush_round();
  } else {
    auto buf = s.recv(/*in_schedule=*/false);
    BitReader r(buf);
    for (auto& v : mine) v = static_cast<uint8_t>(r.get(1));
  }
  return mine;
}

std::vector<uint8_t> widen_to_bits(std::span<const uint64_t> v) {
  std::vector<uint8_t> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = static_cast<uint8_t>(v[i] & 1);
  return out;
}

}  // namespace

PartyView share_inputs(Session& s, const Ring& ring, Protocol p,
                       const ProtoInputs& mine, uint64_t dim,
                       const LayerSpec& layer) {
  auto sh = protocol_shape(p);
  auto scope = s.scope("input");
  PartyView view;
  size_t lx = expected_len_x(p, dim, layer);
  size_t ly = expected_len_y(p, dim, layer);
  size_t ls = expected_len_sel(p, dim);

  if (sh.private_inputs) {
    const auto& own = s.party() == Party::P0 ? mine.x : mine.y;
    if (own.size() != lx) throw UsageError("input: wrong vector length");
    view.x = own;
    return view;
  }
  if (p == Protocol::And) {
    auto a = share_bits_wire(s, Party::P0, widen_to_bits(mine.x), lx);
    auto b = share_bits_wire(s, Party::P1, widen_to_bits(mine.y), ly);
    view.x.assign(a.begin(), a.end());
    view.y.assign(b.begin(), b.end());
    return view;
  }
  // gen_mux: party 0 owns both data vectors, party 1 the selector.
  Party y_owner = p == Protocol::GenMux ? Party::P0 : Party::P1;
  if (sh.uses_x) view.x = share_arith_wire(s, ring, Party::P0, mine.x, lx);
  if (sh.uses_y) view.y = share_arith_wire(s, ring, y_owner, mine.y, ly);
  if (sh.uses_sel) view.sel = share_bits_wire(s, Party::P1, mine.sel, ls);
  return view;
}

std::vector<uint64_t> run_protocol(Session& s, const Ring& ring, Protocol p,
                                   const PartyView& view,
                                   const LayerSpec& layer,
                                   const RunOptions& opt) {
  auto widen = [](const std::vector<uint8_t>& bits) {
    std::vector<uint64_t> out(bits.size());
    for (size_t i = 0; i < bits.size(); ++i) out[i] = bits[i];
    return out;
  };
  switch (p) {
    case Protocol::Mill:
      return widen(compare_lt_batch(s, view.x, ring.bits(), s.m_radix()));
    case Protocol::Msb:
      return widen(msb_batch(s, ring, view.x));
    case Protocol::BaseMux:
      return base_mux_batch(s, ring, view.sel, view.x);
    case Protocol::AbsMux:
      return abs_mux_batch(s, ring, view.sel, view.x);
    case Protocol::GenMux:
      return gen_mux_batch(s, ring, view.sel, view.x, view.y);
    case Protocol::Abs:
      return abs_batch(s, ring, view.x);
    case Protocol::Max:
      return {tree_max(s, ring, view.x)};
    case Protocol::MaxNaive:
      return {naive_max(s, ring, view.x)};
    case Protocol::Min:
      return {tree_min(s, ring, view.x)};
    case Protocol::And:
      return widen(and_gate_batch(s, widen_to_bits(view.x),
                                  widen_to_bits(view.y)));
    case Protocol::Mult:
      return mul_batch(s, ring, view.x, view.y);
    case Protocol::L1:
      return {l1_distance(s, ring, view.x, view.y)};
    case Protocol::L2Sq:
      return {l2_squared_distance(s, ring, view.x, view.y)};
    case Protocol::L2:
      return {l2_distance(s, ring, view.x, view.y, opt.sqrt)};
    case Protocol::Linf:
      return {linf_distance(s, ring, view.x, view.y)};
    case Protocol::Adder:
      return adder_batch(s, ring, view.x, view.y);
    case Protocol::AdderLayer:
      return adder_layer(s, ring, layer, view.x, view.y);
    case Protocol::ConvLayer:
      return conv_layer(s, ring, layer, view.x, view.y);
  }
  throw UsageError("unknown protocol value");
}

std::vector<uint64_t> combine_shares(Protocol p, const Ring& ring,
                                     std::span<const uint64_t> out0,
                                     std::span<const uint64_t> out1) {
  if (out0.size() != out1.size()) {
    throw ProtocolError("output share lengths differ");
  }
  bool bits = protocol_shape(p).bit_output;
  std::vector<uint64_t> out(out0.size());
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = bits ? ((out0[i] ^ out1[i]) & 1) : ring.add(out0[i], out1[i]);
  }
  return out;
}

std::vector<uint64_t> reveal_output(Session& s, const Ring& ring, Protocol p,
                                    std::span<const uint64_t> my_out) {
  auto scope = s.scope("reveal");
  bool bits = protocol_shape(p).bit_output;
  int width = bits ? 1 : ring.bits();
  BitWriter w;
  for (uint64_t v : my_out) w.put(v, width);
  auto buf = w.take();
  s.send(buf, /*in_schedule=*/false);
  s.flush_round();
  auto got = s.recv(/*in_schedule=*/false);
  BitReader r(got);
  std::vector<uint64_t> theirs(my_out.size());
  for (auto& v : theirs) v = r.get(width);
  return combine_shares(p, ring, my_out, theirs);
}

CostReport build_report(Session& s, Protocol p, const CostModelParams& params,
                        double wall_ms) {
  CostReport r;
  r.protocol = protocol_name(p);
  r.params = params;
  auto bound = analytic_bound(p, params);
  r.analytic_bits = bound.bits;
  r.analytic_exact = bound.exact;
  r.scheduled_bits = schedule_bits(p, params);

  auto total = s.metrics().total();
  auto setup = s.metrics().by_segment("setup");
  r.measured_bits = total.sched_total() - setup.sched_total();
  for (int i = 0; i < 2; ++i) {
    r.measured_bits_party[i] = total.sched_bits[i] - setup.sched_bits[i];
  }
  r.wire_bytes = total.wire_total();
  r.rounds = total.rounds - setup.rounds;
  r.wall_ms = wall_ms;
  r.backend = s.ot().name();
  r.backend_test_grade = s.ot().test_grade();
  r.bound_checks = assert_bounds(p, params, r.measured_bits);

  static const char* kSegments[] = {"mill", "leaf",  "triple", "tree",
                                    "msb",  "mux",   "absmux", "abs",
                                    "max",  "min",   "naive_max", "mult",
                                    "and",  "sqrt",  "setup"};
  for (const char* seg : kSegments) {
    auto st = s.metrics().by_segment(seg);
    if (st.sched_total() > 0 || st.wire_total() > 0) {
      r.blocks.emplace_back(seg, st.sched_total());
    }
  }
  return r;
}

LocalRunResult run_local(Protocol p, const SessionConfig& base_cfg, int bits,
                         const ProtoInputs& in, const RunOptions& opt) {
  Ring ring(bits);
  Prng split_rng(base_cfg.seed * 1000003 + 17);
  auto [view0, view1] = split_inputs(p, ring, in, split_rng);

  auto [ch0, ch1] = make_local_channel_pair();
  SessionConfig cfg0 = base_cfg, cfg1 = base_cfg;
  cfg0.party = Party::P0;
  cfg1.party = Party::P1;
  // Fault injection targets exactly one endpoint in local mode.
  cfg1.inject_fault_at_batch = -1;

  LocalRunResult res;
  CostModelParams params{base_cfg.lambda, bits,
                         effective_n(p, in.x.size(), in.layer, in.has_layer),
                         base_cfg.m_radix};

  std::exception_ptr err0, err1;
  auto worker = [&](SessionConfig cfg, std::unique_ptr<Channel> ch,
                    const PartyView& view, std::vector<uint64_t>& out,
                    CostReport& report, std::exception_ptr& err,
                    SqrtProvider* sqrt) {
    try {
      Session s(cfg, std::move(ch));
      RunOptions o;
      o.sqrt = sqrt;
      auto t0 = std::chrono::steady_clock::now();
      out = run_protocol(s, ring, p, view, in.layer, o);
      auto t1 = std::chrono::steady_clock::now();
      double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      report = build_report(s, p, params, ms);
    } catch (...) {
      err = std::current_exception();
    }
  };

  // Each thread needs its own provider instance (stateless but not shared).
  std::unique_ptr<SqrtProvider> sqrt0, sqrt1;
  if (opt.sqrt != nullptr) {
    sqrt0 = make_plaintext_sqrt();
    sqrt1 = make_plaintext_sqrt();
  }

  std::thread t1(worker, cfg1, std::move(ch1), std::cref(view1),
                 std::ref(res.out1), std::ref(res.report1), std::ref(err1),
                 sqrt1.get());
  worker(cfg0, std::move(ch0), view0, res.out0, res.report0, err0,
         sqrt0.get());
  t1.join();
  if (err0) std::rethrow_exception(err0);
  if (err1) std::rethrow_exception(err1);

  res.reconstructed = combine_shares(p, ring, res.out0, res.out1);
  return res;
}

}  // namespace norm2pc
