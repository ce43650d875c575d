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
#include <string>
#include <vector>

namespace norm2pc {

// Accounting parameters. Nothing below hard-codes lambda = 128; the security
// parameter and radix flow through every formula.
struct CostModelParams {
  int lambda = 128;
  int ell = 32;
  uint64_t n = 1;
  int m_radix = 4;
};

// Per-primitive schedule costs in bits, per instance. These are the modeled
// extension-OT message sizes; the real backend sends exactly these payloads
// (receiver part / sender part), and the dealer backend books them as
// emulated schedule bits.
inline uint64_t cot_recv_bits(int lambda, int /*kbits*/) { return lambda; }
inline uint64_t cot_send_bits(int /*lambda*/, int kbits) { return kbits; }
inline uint64_t cot_bits(int lambda, int kbits) {
  return cot_recv_bits(lambda, kbits) + cot_send_bits(lambda, kbits);
}

inline uint64_t ot2_recv_bits(int lambda, int /*kbits*/) { return lambda; }
inline uint64_t ot2_send_bits(int /*lambda*/, int kbits) {
  return 2 * static_cast<uint64_t>(kbits);
}
inline uint64_t ot2_bits(int lambda, int kbits) {
  return ot2_recv_bits(lambda, kbits) + ot2_send_bits(lambda, kbits);
}

inline uint64_t otn_recv_bits(int lambda, int /*n_msgs*/, int /*kbits*/) {
  return 2 * static_cast<uint64_t>(lambda);
}
inline uint64_t otn_send_bits(int /*lambda*/, int n_msgs, int kbits) {
  return static_cast<uint64_t>(n_msgs) * kbits;
}
inline uint64_t otn_bits(int lambda, int n_msgs, int kbits) {
  return otn_recv_bits(lambda, n_msgs, kbits) +
         otn_send_bits(lambda, n_msgs, kbits);
}

inline uint64_t rot_recv_bits(int lambda) { return lambda; }
inline uint64_t rot_bits(int lambda) { return rot_recv_bits(lambda); }

// One Boolean Beaver triple from a pair of COT_1 (the standalone and_gate
// path); opening costs 4 bits per AND (d and e, both directions).
inline uint64_t bit_triple_bits(int lambda) { return 2ull * (lambda + 1); }
inline uint64_t and_open_bits() { return 4; }

enum class Protocol {
  Mill,
  Msb,
  BaseMux,
  AbsMux,
  GenMux,
  Abs,
  Max,
  MaxNaive,
  Min,
  Mult,
  And,
  L1,
  L2Sq,
  L2,
  Linf,
  Adder,
  AdderLayer,
  ConvLayer,
};

const char* protocol_name(Protocol p);
Protocol parse_protocol(const std::string& name);
std::vector<Protocol> all_protocols();

// Closed-form upper bounds (strict unless exact=true) on total schedule bits
// for an n-instance batch.
struct Bound {
  uint64_t bits;
  bool exact;  // exact equality expected rather than strict upper bound
};
Bound analytic_bound(Protocol p, const CostModelParams& params);

// Exact schedule the implementation emits for an n-instance batch, in bits.
// Dealer-mode measured schedule bits equal this value bit for bit.
uint64_t schedule_bits(Protocol p, const CostModelParams& params);

// schedule_bits expressed in MB (1 MB = 2^20 bytes).
double predict_table_mb(Protocol p, const CostModelParams& params);

struct BoundCheck {
  std::string name;
  uint64_t bound_bits = 0;
  uint64_t measured_bits = 0;
  bool exact = false;
  bool pass = false;
};

struct CostReport {
  std::string protocol;
  CostModelParams params;
  uint64_t analytic_bits = 0;
  bool analytic_exact = false;
  uint64_t scheduled_bits = 0;       // closed-form schedule for the params
  uint64_t measured_bits = 0;        // total, both directions
  uint64_t measured_bits_party[2] = {0, 0};
  uint64_t wire_bytes = 0;           // actual framed bytes, both directions
  uint64_t rounds = 0;
  double wall_ms = 0.0;
  std::string backend;
  bool backend_test_grade = false;
  std::vector<BoundCheck> bound_checks;
  std::vector<std::pair<std::string, uint64_t>> blocks;  // sub-block bits
};

// Evaluate the protocol's analytic bound(s) against measured bits. For
// upper bounds the check is strict (<); for exact entries equality.
std::vector<BoundCheck> assert_bounds(Protocol p, const CostModelParams& params,
                                      uint64_t measured_bits);

std::string report_to_json(const CostReport& r);

}  // namespace norm2pc
