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

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "norm2pc/bytes.hpp"
#include "norm2pc/cost.hpp"
#include "norm2pc/metrics.hpp"
#include "norm2pc/prng.hpp"
#include "norm2pc/ring.hpp"
#include "norm2pc/transport.hpp"

namespace norm2pc {

class OtBackend;

enum class BackendKind { Dealer, IknpExtension };

const char* backend_name(BackendKind k);
BackendKind parse_backend(const std::string& name);

struct SessionConfig {
  Party party = Party::P0;
  BackendKind backend = BackendKind::Dealer;
  uint64_t seed = 1;
  int lambda = 128;
  int m_radix = 4;
  // Extension backend: path to this party's base-OT setup file. Empty means
  // derive a consistent record set from `seed` (simulation-grade shortcut;
  // both parties must use the same seed).
  std::string base_ot_file;
  // Dealer fault injection for negative tests: 0-based index of the OT batch
  // whose first reply value gets corrupted; -1 disables.
  long long inject_fault_at_batch = -1;
};

// One party's endpoint of a two-party protocol run: channel + OT backend +
// metrics + deterministic randomness, plus the tag-scope stack used for
// cost attribution.
class Session {
 public:
  Session(SessionConfig cfg, std::unique_ptr<Channel> channel);
  ~Session();

  Party party() const { return cfg_.party; }
  int lambda() const { return cfg_.lambda; }
  int m_radix() const { return cfg_.m_radix; }
  const SessionConfig& config() const { return cfg_; }

  Prng& rng() { return rng_; }
  Metrics& metrics() { return metrics_; }
  OtBackend& ot() { return *ot_; }
  Channel& channel() { return *channel_; }

  // --- framed messaging with accounting -------------------------------
  // in_schedule: protocol-level payloads (share openings, reconstructions)
  // count toward the modeled schedule; OT-internal and dealer-emulation
  // frames do not (the OT layer books its schedule analytically).
  void send(std::span<const uint8_t> payload, bool in_schedule = true);
  std::vector<uint8_t> recv(bool in_schedule = true);

  // Variants for bit-packed payloads whose modeled size is not a whole
  // number of bytes: wire carries the padded frame, the schedule books the
  // exact bit count. Both parties must pass the same sched_bits.
  void send_with_sched(std::span<const uint8_t> payload, uint64_t sched_bits);
  std::vector<uint8_t> recv_with_sched(uint64_t sched_bits);

  // Delivers buffered frames; counts one round for the current tag if
  // anything was pending. Flushing an empty buffer is free.
  void flush_round();

  // Emulated/modeled schedule bits, attributed to `origin`'s direction.
  void add_sched(Party origin, uint64_t bits);

  // --- tag scopes ------------------------------------------------------
  class TagScope {
   public:
    TagScope(Session& s, std::string_view name) : s_(s) { s_.push_tag(name); }
    ~TagScope() { s_.pop_tag(); }
    TagScope(const TagScope&) = delete;
    TagScope& operator=(const TagScope&) = delete;

   private:
    Session& s_;
  };

  TagScope scope(std::string_view name) { return TagScope(*this, name); }
  const std::string& tag_path() const { return tag_path_; }

  // Dealer fault injection bookkeeping (see SessionConfig).
  bool take_fault_injection();

 private:
  friend class TagScope;
  void push_tag(std::string_view name);
  void pop_tag();

  SessionConfig cfg_;
  std::unique_ptr<Channel> channel_;
  std::unique_ptr<OtBackend> ot_;
  Metrics metrics_;
  Prng rng_;
  std::vector<size_t> tag_lens_;
  std::string tag_path_;
  long long ot_batch_counter_ = 0;
};

}  // namespace norm2pc
