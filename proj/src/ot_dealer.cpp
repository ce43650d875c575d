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

// Test-grade OT: a trusted-functionality emulation running over the session
// channel. The receiver ships its choices in the clear, the sender answers
// with exactly the chosen outputs. This is NOT secure against anyone; it
// exists so protocol logic, round structure, and the modeled communication
// schedule can be validated quickly. Schedule bits booked here are the
// extension-OT schedule the real backend would send.

#include <cstring>

#include "norm2pc/bytes.hpp"
#include "norm2pc/cost.hpp"
#include "norm2pc/errors.hpp"
#include "norm2pc/ot.hpp"
#include "norm2pc/session.hpp"

namespace norm2pc {

namespace {

uint64_t kmask(int kbits) {
  return kbits >= 64 ? ~uint64_t{0} : ((uint64_t{1} << kbits) - 1);
}

void check_kbits(int kbits) {
  if (kbits < 1 || kbits > 64) {
    throw UsageError("OT payload width must be in [1, 64] bits");
  }
}

void check_n_msgs(int n_msgs) {
  if (n_msgs < 2 || n_msgs > 256 || (n_msgs & (n_msgs - 1)) != 0) {
    throw UsageError("1-of-N OT requires N a power of two in [2, 256]");
  }
}

std::vector<uint8_t> pack_bits(std::span<const uint8_t> bits) {
  BitWriter w;
  for (uint8_t b : bits) w.put(b & 1, 1);
  return w.take();
}

std::vector<uint8_t> pack_values(std::span<const uint64_t> vals, int kbits) {
  BitWriter w;
  for (uint64_t v : vals) w.put(v & kmask(kbits), kbits);
  return w.take();
}

std::vector<uint64_t> unpack_values(std::span<const uint8_t> buf, size_t count,
                                    int kbits) {
  BitReader r(buf);
  std::vector<uint64_t> out(count);
  for (auto& v : out) v = r.get(kbits);
  return out;
}

class DealerBackend : public OtBackend {
 public:
  const char* name() const override { return "dealer"; }
  bool test_grade() const override { return true; }

  void ot2_send(Session& s, int kbits, std::span<const Ot2Pair> msgs) override {
    check_kbits(kbits);
    if (msgs.empty()) return;
    auto choices = recv_choice_bits(s, msgs.size());
    std::vector<uint64_t> reply(msgs.size());
    for (size_t i = 0; i < msgs.size(); ++i) {
      reply[i] = (choices[i] ? msgs[i].m1 : msgs[i].m0) & kmask(kbits);
    }
    send_reply(s, reply, kbits);
    book(s, msgs.size(), ot2_recv_bits(s.lambda(), kbits),
         ot2_send_bits(s.lambda(), kbits), /*i_am_sender=*/true);
  }

  std::vector<uint64_t> ot2_recv(Session& s, int kbits,
                                 std::span<const uint8_t> bits) override {
    check_kbits(kbits);
    if (bits.empty()) return {};
    send_choice_bits(s, bits);
    auto out = recv_reply(s, bits.size(), kbits);
    book(s, bits.size(), ot2_recv_bits(s.lambda(), kbits),
         ot2_send_bits(s.lambda(), kbits), /*i_am_sender=*/false);
    return out;
  }

  std::vector<uint64_t> cot_send(Session& s, int kbits,
                                 std::span<const uint64_t> deltas,
                                 CorrSign sign) override {
    check_kbits(kbits);
    if (deltas.empty()) return {};
    auto choices = recv_choice_bits(s, deltas.size());
    const uint64_t mask = kmask(kbits);
    std::vector<uint64_t> randoms(deltas.size()), reply(deltas.size());
    for (size_t i = 0; i < deltas.size(); ++i) {
      randoms[i] = s.rng().next_bits(kbits);
      uint64_t bd = choices[i] ? (deltas[i] & mask) : 0;
      reply[i] = sign == CorrSign::Add ? (randoms[i] + bd) & mask
                                       : (bd - randoms[i]) & mask;
    }
    send_reply(s, reply, kbits);
    book(s, deltas.size(), cot_recv_bits(s.lambda(), kbits),
         cot_send_bits(s.lambda(), kbits), /*i_am_sender=*/true);
    return randoms;
  }

  std::vector<uint64_t> cot_recv(Session& s, int kbits,
                                 std::span<const uint8_t> bits,
                                 CorrSign sign) override {
    (void)sign;  // encoded entirely on the sender side
    check_kbits(kbits);
    if (bits.empty()) return {};
    send_choice_bits(s, bits);
    auto out = recv_reply(s, bits.size(), kbits);
    book(s, bits.size(), cot_recv_bits(s.lambda(), kbits),
         cot_send_bits(s.lambda(), kbits), /*i_am_sender=*/false);
    return out;
  }

  void otn_send(Session& s, int n_msgs, int kbits,
                std::span<const uint64_t> tables) override {
    check_kbits(kbits);
    check_n_msgs(n_msgs);
    if (tables.empty()) return;
    if (tables.size() % n_msgs != 0) {
      throw UsageError("1-of-N OT: table size not a multiple of N");
    }
    size_t count = tables.size() / n_msgs;
    auto frame = s.recv(/*in_schedule=*/false);
    if (frame.size() != count) throw ProtocolError("1-of-N OT: bad choice frame");
    std::vector<uint64_t> reply(count);
    for (size_t i = 0; i < count; ++i) {
      if (frame[i] >= n_msgs) throw UsageError("1-of-N OT: choice out of range");
      reply[i] = tables[i * n_msgs + frame[i]] & kmask(kbits);
    }
    send_reply(s, reply, kbits);
    book(s, count, otn_recv_bits(s.lambda(), n_msgs, kbits),
         otn_send_bits(s.lambda(), n_msgs, kbits), /*i_am_sender=*/true);
  }

  std::vector<uint64_t> otn_recv(Session& s, int n_msgs, int kbits,
                                 std::span<const uint8_t> choices) override {
    check_kbits(kbits);
    check_n_msgs(n_msgs);
    if (choices.empty()) return {};
    for (uint8_t c : choices) {
      if (c >= n_msgs) throw UsageError("1-of-N OT: choice out of range");
    }
    s.send(choices, /*in_schedule=*/false);
    s.flush_round();
    auto out = recv_reply(s, choices.size(), kbits);
    book(s, choices.size(), otn_recv_bits(s.lambda(), n_msgs, kbits),
         otn_send_bits(s.lambda(), n_msgs, kbits), /*i_am_sender=*/false);
    return out;
  }

  std::vector<Ot2Pair> rot_send(Session& s, int kbits, size_t count) override {
    check_kbits(kbits);
    if (count == 0) return {};
    auto choices = recv_choice_bits(s, count);
    std::vector<Ot2Pair> pairs(count);
    std::vector<uint64_t> reply(count);
    for (size_t i = 0; i < count; ++i) {
      pairs[i] = {s.rng().next_bits(kbits), s.rng().next_bits(kbits)};
      reply[i] = choices[i] ? pairs[i].m1 : pairs[i].m0;
    }
    send_reply(s, reply, kbits);
    book(s, count, rot_recv_bits(s.lambda()), 0, /*i_am_sender=*/true);
    return pairs;
  }

  std::vector<uint64_t> rot_recv(Session& s, int kbits,
                                 std::span<const uint8_t> bits) override {
    check_kbits(kbits);
    if (bits.empty()) return {};
    send_choice_bits(s, bits);
    auto out = recv_reply(s, bits.size(), kbits);
    book(s, bits.size(), rot_recv_bits(s.lambda()), 0, /*i_am_sender=*/false);
    return out;
  }

 private:
  static void send_choice_bits(Session& s, std::span<const uint8_t> bits) {
    auto packed = pack_bits(bits);
    s.send(packed, /*in_schedule=*/false);
    s.flush_round();
  }

  static std::vector<uint8_t> recv_choice_bits(Session& s, size_t count) {
    auto frame = s.recv(/*in_schedule=*/false);
    if (frame.size() != (count + 7) / 8) {
      throw ProtocolError("dealer OT: bad choice frame size");
    }
    BitReader r(frame);
    std::vector<uint8_t> bits(count);
    for (auto& b : bits) b = static_cast<uint8_t>(r.get(1));
    return bits;
  }

  void send_reply(Session& s, std::vector<uint64_t>& reply, int kbits) {
    if (s.take_fault_injection() && !reply.empty()) {
      reply[0] = (reply[0] + 1) & kmask(kbits);
    }
    auto packed = pack_values(reply, kbits);
    s.send(packed, /*in_schedule=*/false);
    s.flush_round();
  }

  static std::vector<uint64_t> recv_reply(Session& s, size_t count,
                                          int kbits) {
    auto frame = s.recv(/*in_schedule=*/false);
    if (frame.size() != (count * kbits + 7) / 8) {
      throw ProtocolError("dealer OT: bad reply frame size");
    }
    return unpack_values(frame, count, kbits);
  }

  // Both directions of the modeled schedule, attributed by origin. Both
  // parties book identical tallies so either side can report alone.
  static void book(Session& s, size_t count, uint64_t recv_part,
                   uint64_t send_part, bool i_am_sender) {
    Party sender = i_am_sender ? s.party() : other(s.party());
    s.add_sched(other(sender), count * recv_part);
    s.add_sched(sender, count * send_part);
  }
};

}  // namespace

std::unique_ptr<OtBackend> make_dealer_backend() {
  return std::make_unique<DealerBackend>();
}

BidirCot cot_bidirectional(Session& s, int kbits,
                           std::span<const uint64_t> my_deltas,
                           std::span<const uint8_t> my_bits, CorrSign sign) {
  if (my_deltas.size() != my_bits.size()) {
    throw UsageError("cot_bidirectional: delta/bit count mismatch");
  }
  BidirCot out;
  if (s.party() == Party::P0) {
    out.sender_randoms = s.ot().cot_send(s, kbits, my_deltas, sign);
    out.received = s.ot().cot_recv(s, kbits, my_bits, sign);
  } else {
    out.received = s.ot().cot_recv(s, kbits, my_bits, sign);
    out.sender_randoms = s.ot().cot_send(s, kbits, my_deltas, sign);
  }
  return out;
}

}  // namespace norm2pc
