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
#include <map>
#include <string>

#include "norm2pc/ring.hpp"

namespace norm2pc {

// Per-tag accounting. Tags are slash-joined scope paths, e.g.
// "linf/abs/msb/mill". Each party keeps the FULL bidirectional picture:
//   wire_bytes[p]  actual framed bytes (4-byte header + payload) origin p,
//   sched_bits[p]  modeled schedule bits origin p (extension-OT schedule for
//                  OT calls, payload bits for protocol-level messages),
//   rounds         number of this party's own non-empty flushes under the
//                  tag; by construction both parties converge to the same
//                  per-tag value at protocol end.
struct ChannelStat {
  uint64_t wire_bytes[2] = {0, 0};
  uint64_t sched_bits[2] = {0, 0};
  uint64_t frames[2] = {0, 0};
  uint64_t rounds = 0;

  uint64_t wire_total() const { return wire_bytes[0] + wire_bytes[1]; }
  uint64_t sched_total() const { return sched_bits[0] + sched_bits[1]; }
};

class Metrics {
 public:
  ChannelStat& at(const std::string& tag_path) { return stats_[tag_path]; }
  const std::map<std::string, ChannelStat>& stats() const { return stats_; }

  // Sum over every tag equal to `path` or underneath it.
  ChannelStat subtree(const std::string& path) const {
    ChannelStat out;
    for (const auto& [tag, st] : stats_) {
      if (!in_subtree(tag, path)) continue;
      accumulate(out, st);
    }
    return out;
  }

  // Sum over every subtree whose root segment equals `segment` (matched at
  // any depth; nested repeats of the same segment are not double counted
  // because only the outermost root matches the "first occurrence" rule).
  ChannelStat by_segment(const std::string& segment) const {
    ChannelStat out;
    for (const auto& [tag, st] : stats_) {
      if (first_segment_pos(tag, segment) == std::string::npos) continue;
      accumulate(out, st);
    }
    return out;
  }

  ChannelStat total() const {
    ChannelStat out;
    for (const auto& [tag, st] : stats_) accumulate(out, st);
    return out;
  }

  // Max per-tag rounds under a path: sequential phases under one tag all
  // accumulate into that tag, so the subtree round count is the SUM below.
  uint64_t rounds_under(const std::string& path) const {
    uint64_t r = 0;
    for (const auto& [tag, st] : stats_) {
      if (in_subtree(tag, path)) r += st.rounds;
    }
    return r;
  }

  uint64_t transcript_hash() const { return transcript_hash_; }
  void mix_transcript(uint64_t h) {
    transcript_hash_ = transcript_hash_ * 0x9e3779b97f4a7c15ull + h;
  }

  void clear() {
    stats_.clear();
    transcript_hash_ = 0;
  }

 private:
  static void accumulate(ChannelStat& out, const ChannelStat& st) {
    for (int p = 0; p < 2; ++p) {
      out.wire_bytes[p] += st.wire_bytes[p];
      out.sched_bits[p] += st.sched_bits[p];
      out.frames[p] += st.frames[p];
    }
    out.rounds += st.rounds;
  }

  static bool in_subtree(const std::string& tag, const std::string& path) {
    if (path.empty()) return true;
    if (tag.size() < path.size()) return false;
    if (tag.compare(0, path.size(), path) != 0) return false;
    return tag.size() == path.size() || tag[path.size()] == '/';
  }

  static size_t first_segment_pos(const std::string& tag,
                                  const std::string& seg) {
    size_t start = 0;
    while (start <= tag.size()) {
      size_t end = tag.find('/', start);
      if (end == std::string::npos) end = tag.size();
      if (tag.compare(start, end - start, seg) == 0) return start;
      if (end == tag.size()) break;
      start = end + 1;
    }
    return std::string::npos;
  }

  std::map<std::string, ChannelStat> stats_;
  uint64_t transcript_hash_ = 0;
};

}  // namespace norm2pc
