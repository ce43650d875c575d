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

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "norm2pc/ring.hpp"

namespace norm2pc {

class Session;

// Correlation convention for COT. Both appear at call sites:
//   Add: receiver obtains s + b*delta (sender keeps s)       -> mux gadgets
//   Sub: receiver obtains b*delta - s (sender keeps s)       -> multiplication
enum class CorrSign { Add, Sub };

struct Ot2Pair {
  uint64_t m0, m1;
};

// Batched oblivious transfer endpoints. Payload widths are explicit bit
// counts (1..64) independent of the protocol ring. Every batch is one
// message exchange: receiver flow then sender flow, each a single round.
//
// Two implementations:
//   DealerBackend  test-grade trusted-functionality emulation: choices and
//                  selected outputs cross the channel in the clear. Books
//                  the modeled extension-OT schedule as emulated bits.
//   IknpBackend    real extension-OT message schedule (binary lanes for
//                  1-of-2/COT/ROT, code-word lanes for 1-of-N); payload
//                  sizes equal the modeled schedule by construction.
class OtBackend {
 public:
  virtual ~OtBackend() = default;

  virtual const char* name() const = 0;
  virtual bool test_grade() const = 0;

  // 1-of-2 OT on kbits-wide messages.
  virtual void ot2_send(Session& s, int kbits,
                        std::span<const Ot2Pair> msgs) = 0;
  virtual std::vector<uint64_t> ot2_recv(Session& s, int kbits,
                                         std::span<const uint8_t> bits) = 0;

  // Correlated OT over Z_{2^kbits}; returns the sender's random s_i.
  virtual std::vector<uint64_t> cot_send(Session& s, int kbits,
                                         std::span<const uint64_t> deltas,
                                         CorrSign sign) = 0;
  virtual std::vector<uint64_t> cot_recv(Session& s, int kbits,
                                         std::span<const uint8_t> bits,
                                         CorrSign sign) = 0;

  // 1-of-n_msgs OT on kbits-wide messages; tables flattened row-major,
  // n_msgs a power of two up to 256, choices in [0, n_msgs).
  virtual void otn_send(Session& s, int n_msgs, int kbits,
                        std::span<const uint64_t> tables) = 0;
  virtual std::vector<uint64_t> otn_recv(Session& s, int n_msgs, int kbits,
                                         std::span<const uint8_t> choices) = 0;

  // Random OT: sender gets fresh pairs, receiver its chosen halves.
  virtual std::vector<Ot2Pair> rot_send(Session& s, int kbits,
                                        size_t count) = 0;
  virtual std::vector<uint64_t> rot_recv(Session& s, int kbits,
                                         std::span<const uint8_t> bits) = 0;
};

std::unique_ptr<OtBackend> make_dealer_backend();
std::unique_ptr<OtBackend> make_iknp_backend();

// Both directions of a COT batch, as used by the mux and multiplication
// gadgets: each party is sender for its own deltas and receiver for its own
// choice bits. Party 0 sends first as sender; the two backend calls per
// party are ordered to avoid blocking.
struct BidirCot {
  std::vector<uint64_t> sender_randoms;  // s_i for my deltas
  std::vector<uint64_t> received;        // t_i for my bits
};
BidirCot cot_bidirectional(Session& s, int kbits,
                           std::span<const uint64_t> my_deltas,
                           std::span<const uint8_t> my_bits, CorrSign sign);

// ---------------------------------------------------------------------
// Base-OT setup file: binary, magic "NORM2PC-BOT1", then
//   u8 role (0 = sender view, 1 = receiver view), u32 lambda, records.
// Sender view: lambda x (seed0[16] seed1[16]).
// Receiver view: lambda x (choice u8, seed[16]).
// The generator is simulation-grade (derives everything from one seed); a
// genuinely secure provider can be plugged via BaseOtProvider.
// ---------------------------------------------------------------------

inline constexpr char kBaseOtMagic[] = "NORM2PC-BOT1";

struct BaseOtSenderView {
  std::vector<std::array<uint8_t, 16>> seed0, seed1;
};
struct BaseOtReceiverView {
  std::vector<uint8_t> choice;
  std::vector<std::array<uint8_t, 16>> seed;
};

// Supplies this party's view of lambda base OTs. Party 0 takes the receiver
// view, party 1 the sender view (fixing the first extension lane direction).
class BaseOtProvider {
 public:
  virtual ~BaseOtProvider() = default;
  virtual BaseOtSenderView sender_view(int lambda) = 0;
  virtual BaseOtReceiverView receiver_view(int lambda) = 0;
};

// Derives both views deterministically from one shared seed (test-grade).
std::unique_ptr<BaseOtProvider> make_seeded_base_ot_provider(uint64_t seed);
// Reads this party's view from a setup file written by write_base_ot_files.
std::unique_ptr<BaseOtProvider> make_file_base_ot_provider(
    const std::string& path);

void write_base_ot_files(const std::string& receiver_path,
                         const std::string& sender_path, int lambda,
                         uint64_t seed);

}  // namespace norm2pc
