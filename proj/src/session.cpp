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

#include "norm2pc/session.hpp"

#include "norm2pc/errors.hpp"
#include "norm2pc/ot.hpp"

namespace norm2pc {

const char* backend_name(BackendKind k) {
  return k == BackendKind::Dealer ? "dealer" : "iknp";
}

BackendKind parse_backend(const std::string& name) {
  if (name == "dealer") return BackendKind::Dealer;
  if (name == "iknp") return BackendKind::IknpExtension;
  throw UsageError("unknown backend '" + name + "' (expected dealer|iknp)");
}

Session::Session(SessionConfig cfg, std::unique_ptr<Channel> channel)
    : cfg_(cfg),
      channel_(std::move(channel)),
      // Party-distinct streams from one run seed keep transcripts
      // reproducible while the two parties stay independent.
      rng_(cfg.seed * 2 + static_cast<uint64_t>(idx(cfg.party)) + 1) {
  if (cfg_.lambda <= 0 || cfg_.lambda % 8 != 0) {
    throw UsageError("lambda must be a positive multiple of 8");
  }
  if (cfg_.m_radix < 1 || cfg_.m_radix > 8) {
    throw UsageError("m_radix must be in [1, 8]");
  }
  ot_ = cfg_.backend == BackendKind::Dealer ? make_dealer_backend()
                                            : make_iknp_backend();
}

Session::~Session() = default;

void Session::send(std::span<const uint8_t> payload, bool in_schedule) {
  channel_->write_frame(payload);
  auto& st = metrics_.at(tag_path_);
  st.wire_bytes[idx(cfg_.party)] += 4 + payload.size();
  st.frames[idx(cfg_.party)] += 1;
  if (in_schedule) st.sched_bits[idx(cfg_.party)] += payload.size() * 8;
  metrics_.mix_transcript(fnv1a(payload));
}

std::vector<uint8_t> Session::recv(bool in_schedule) {
  auto payload = channel_->read_frame();
  auto& st = metrics_.at(tag_path_);
  st.wire_bytes[idx(other(cfg_.party))] += 4 + payload.size();
  st.frames[idx(other(cfg_.party))] += 1;
  if (in_schedule) {
    st.sched_bits[idx(other(cfg_.party))] += payload.size() * 8;
  }
  return payload;
}

void Session::send_with_sched(std::span<const uint8_t> payload,
                              uint64_t sched_bits) {
  send(payload, /*in_schedule=*/false);
  add_sched(cfg_.party, sched_bits);
}

std::vector<uint8_t> Session::recv_with_sched(uint64_t sched_bits) {
  auto payload = recv(/*in_schedule=*/false);
  add_sched(other(cfg_.party), sched_bits);
  return payload;
}

void Session::flush_round() {
  if (channel_->pending_frames() > 0) {
    metrics_.at(tag_path_).rounds += 1;
  }
  channel_->flush();
}

void Session::add_sched(Party origin, uint64_t bits) {
  metrics_.at(tag_path_).sched_bits[idx(origin)] += bits;
}

bool Session::take_fault_injection() {
  return ot_batch_counter_++ == cfg_.inject_fault_at_batch;
}

void Session::push_tag(std::string_view name) {
  tag_lens_.push_back(tag_path_.size());
  if (!tag_path_.empty()) tag_path_ += '/';
  tag_path_ += name;
}

void Session::pop_tag() {
  tag_path_.resize(tag_lens_.back());
  tag_lens_.pop_back();
}

}  // namespace norm2pc
