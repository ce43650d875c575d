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

#include <cstdio>
#include <vector>

#include "doctest.h"
#include "harness.hpp"
#include "norm2pc/cost.hpp"
#include "norm2pc/ot.hpp"
#include "norm2pc/ring.hpp"

using namespace norm2pc;
using test::run_pair;

namespace {

SessionConfig backend_cfg(BackendKind k, uint64_t seed = 3) {
  SessionConfig cfg;
  cfg.backend = k;
  cfg.seed = seed;
  return cfg;
}

const BackendKind kBackends[2] = {BackendKind::Dealer,
                                  BackendKind::IknpExtension};

}  // namespace

TEST_SUITE("ot") {

TEST_CASE("ot2 delivers the chosen message") {
  for (auto k : kBackends) {
    for (int kbits : {1, 8, 32, 64}) {
      Prng rng(17);
      size_t n = 64;
      std::vector<Ot2Pair> msgs(n);
      std::vector<uint8_t> bits(n);
      for (size_t i = 0; i < n; ++i) {
        msgs[i] = {rng.next_bits(kbits), rng.next_bits(kbits)};
        bits[i] = rng.next_bit();
      }
      std::vector<uint64_t> got;
      run_pair(
          [&](Session& s) { s.ot().ot2_send(s, kbits, msgs); },
          [&](Session& s) { got = s.ot().ot2_recv(s, kbits, bits); },
          backend_cfg(k));
      REQUIRE(got.size() == n);
      for (size_t i = 0; i < n; ++i) {
        CHECK(got[i] == (bits[i] ? msgs[i].m1 : msgs[i].m0));
      }
    }
  }
}

TEST_CASE("cot add and sub correlations hold") {
  for (auto k : kBackends) {
    for (auto sign : {CorrSign::Add, CorrSign::Sub}) {
      int kbits = 32;
      Ring ring(kbits);
      Prng rng(23);
      size_t n = 100;
      std::vector<uint64_t> deltas(n);
      std::vector<uint8_t> bits(n);
      for (size_t i = 0; i < n; ++i) {
        deltas[i] = ring.reduce(rng.next_u64());
        bits[i] = rng.next_bit();
      }
      std::vector<uint64_t> s_vals, t_vals;
      run_pair(
          [&](Session& s) { s_vals = s.ot().cot_send(s, kbits, deltas, sign); },
          [&](Session& s) { t_vals = s.ot().cot_recv(s, kbits, bits, sign); },
          backend_cfg(k));
      REQUIRE(s_vals.size() == n);
      REQUIRE(t_vals.size() == n);
      for (size_t i = 0; i < n; ++i) {
        uint64_t expect = sign == CorrSign::Add
                              ? ring.add(s_vals[i], bits[i] ? deltas[i] : 0)
                              : ring.sub(bits[i] ? deltas[i] : 0, s_vals[i]);
        CHECK(t_vals[i] == expect);
      }
    }
  }
}

TEST_CASE("otn delivers the chosen table entry") {
  for (auto k : kBackends) {
    for (int n_msgs : {2, 8, 16, 256}) {
      int kbits = 16;
      Prng rng(31 + n_msgs);
      size_t count = 40;
      std::vector<uint64_t> tables(count * n_msgs);
      std::vector<uint8_t> choices(count);
      for (auto& t : tables) t = rng.next_bits(kbits);
      for (auto& c : choices) {
        c = static_cast<uint8_t>(rng.next_u64() % n_msgs);
      }
      std::vector<uint64_t> got;
      run_pair(
          [&](Session& s) { s.ot().otn_send(s, n_msgs, kbits, tables); },
          [&](Session& s) {
            got = s.ot().otn_recv(s, n_msgs, kbits, choices);
          },
          backend_cfg(k));
      REQUIRE(got.size() == count);
      for (size_t i = 0; i < count; ++i) {
        CHECK(got[i] == tables[i * n_msgs + choices[i]]);
      }
    }
  }
}

TEST_CASE("rot halves agree with the receiver choice") {
  for (auto k : kBackends) {
    int kbits = 64;
    Prng rng(47);
    size_t n = 50;
    std::vector<uint8_t> bits(n);
    for (auto& b : bits) b = rng.next_bit();
    std::vector<Ot2Pair> pairs;
    std::vector<uint64_t> got;
    run_pair([&](Session& s) { pairs = s.ot().rot_send(s, kbits, n); },
             [&](Session& s) { got = s.ot().rot_recv(s, kbits, bits); },
             backend_cfg(k));
    REQUIRE(pairs.size() == n);
    REQUIRE(got.size() == n);
    bool any_m0 = false, any_m1 = false;
    for (size_t i = 0; i < n; ++i) {
      CHECK(got[i] == (bits[i] ? pairs[i].m1 : pairs[i].m0));
      any_m0 = any_m0 || (pairs[i].m0 != 0);
      any_m1 = any_m1 || (pairs[i].m1 != 0);
    }
    CHECK(any_m0);
    CHECK(any_m1);
  }
}

TEST_CASE("cot_bidirectional gives both parties their correlations") {
  for (auto k : kBackends) {
    int kbits = 32;
    Ring ring(kbits);
    Prng rng(59);
    size_t n = 30;
    std::vector<uint64_t> d0(n), d1(n);
    std::vector<uint8_t> b0(n), b1(n);
    for (size_t i = 0; i < n; ++i) {
      d0[i] = ring.reduce(rng.next_u64());
      d1[i] = ring.reduce(rng.next_u64());
      b0[i] = rng.next_bit();
      b1[i] = rng.next_bit();
    }
    BidirCot r0, r1;
    run_pair(
        [&](Session& s) { r0 = cot_bidirectional(s, kbits, d0, b0,
                                                 CorrSign::Add); },
        [&](Session& s) { r1 = cot_bidirectional(s, kbits, d1, b1,
                                                 CorrSign::Add); },
        backend_cfg(k));
    for (size_t i = 0; i < n; ++i) {
      // Party 0 received against party 1's deltas and vice versa.
      CHECK(r0.received[i] ==
            ring.add(r1.sender_randoms[i], b0[i] ? d1[i] : 0));
      CHECK(r1.received[i] ==
            ring.add(r0.sender_randoms[i], b1[i] ? d0[i] : 0));
    }
  }
}

TEST_CASE("measured schedule equals the model for every primitive") {
  // Both parties book the full bidirectional schedule per batch, and the ROT
  // synchronization sweeps any extension bookkeeping into "setup", so the
  // non-setup delta per call is exactly the modeled batch size.
  int lambda = 128;
  size_t n = 10;
  uint64_t expect_ot2 = n * ot2_bits(lambda, 16);
  uint64_t expect_cot = n * cot_bits(lambda, 32);
  uint64_t expect_otn = n * otn_bits(lambda, 16, 2);
  uint64_t expect_rot = n * rot_bits(lambda);
  for (auto k : kBackends) {
    CAPTURE(static_cast<int>(k));
    std::vector<uint64_t> marks;
    auto mark = [&](Session& s) {
      marks.push_back(s.metrics().total().sched_total() -
                      s.metrics().by_segment("setup").sched_total());
    };
    run_pair(
        [&](Session& s) {
          mark(s);
          std::vector<Ot2Pair> msgs(n, Ot2Pair{1, 2});
          s.ot().ot2_send(s, 16, msgs);
          mark(s);
          std::vector<uint64_t> deltas(n, 5);
          s.ot().cot_send(s, 32, deltas, CorrSign::Add);
          mark(s);
          std::vector<uint64_t> tables(n * 16, 3);
          s.ot().otn_send(s, 16, 2, tables);
          mark(s);
          s.ot().rot_send(s, 64, n);
          mark(s);
        },
        [&](Session& s) {
          std::vector<uint8_t> bits(n, 1);
          s.ot().ot2_recv(s, 16, bits);
          s.ot().cot_recv(s, 32, bits, CorrSign::Add);
          std::vector<uint8_t> choices(n, 7);
          s.ot().otn_recv(s, 16, 2, choices);
          s.ot().rot_recv(s, 64, bits);
        },
        backend_cfg(k));
    REQUIRE(marks.size() == 5);
    CHECK(marks[1] - marks[0] == expect_ot2);
    CHECK(marks[2] - marks[1] == expect_cot);
    CHECK(marks[3] - marks[2] == expect_otn);
    CHECK(marks[4] - marks[3] == expect_rot);
  }
}

TEST_CASE("backends agree on grade flags") {
  run_pair([&](Session& s) { CHECK(s.ot().test_grade()); },
           [&](Session& s) { CHECK(s.ot().test_grade()); },
           backend_cfg(BackendKind::Dealer));
  run_pair([&](Session& s) { CHECK_FALSE(s.ot().test_grade()); },
           [&](Session& s) { CHECK_FALSE(s.ot().test_grade()); },
           backend_cfg(BackendKind::IknpExtension));
}

TEST_CASE("base-OT setup files round trip through the extension backend") {
  std::string recv_path = "bot_recv_test.bin";
  std::string send_path = "bot_send_test.bin";
  write_base_ot_files(recv_path, send_path, 128, 99);

  SessionConfig cfg = backend_cfg(BackendKind::IknpExtension, 5);
  Prng rng(61);
  size_t n = 32;
  std::vector<Ot2Pair> msgs(n);
  std::vector<uint8_t> bits(n);
  for (size_t i = 0; i < n; ++i) {
    msgs[i] = {rng.next_bits(32), rng.next_bits(32)};
    bits[i] = rng.next_bit();
  }
  std::vector<uint64_t> got;
  auto [ch0, ch1] = make_local_channel_pair();
  SessionConfig cfg0 = cfg, cfg1 = cfg;
  cfg0.party = Party::P0;
  cfg0.base_ot_file = recv_path;
  cfg1.party = Party::P1;
  cfg1.base_ot_file = send_path;
  std::exception_ptr err;
  std::thread t([&, c = std::move(ch1)]() mutable {
    try {
      Session s(cfg1, std::move(c));
      s.ot().ot2_send(s, 32, msgs);
    } catch (...) {
      err = std::current_exception();
    }
  });
  {
    Session s(cfg0, std::move(ch0));
    got = s.ot().ot2_recv(s, 32, bits);
  }
  t.join();
  REQUIRE_FALSE(err);
  for (size_t i = 0; i < n; ++i) {
    CHECK(got[i] == (bits[i] ? msgs[i].m1 : msgs[i].m0));
  }
  std::remove(recv_path.c_str());
  std::remove(send_path.c_str());
}

TEST_CASE("mismatched base-OT views fail loudly, not silently") {
  // Receiver view from one seed, sender view from another: transfers are
  // inconsistent, so at least one delivered message must differ.
  std::string r1 = "bot_r1.bin", s1 = "bot_s1.bin";
  std::string r2 = "bot_r2.bin", s2 = "bot_s2.bin";
  write_base_ot_files(r1, s1, 128, 100);
  write_base_ot_files(r2, s2, 128, 101);

  Prng rng(67);
  size_t n = 64;
  std::vector<Ot2Pair> msgs(n);
  std::vector<uint8_t> bits(n);
  for (size_t i = 0; i < n; ++i) {
    msgs[i] = {rng.next_bits(32), rng.next_bits(32)};
    bits[i] = rng.next_bit();
  }
  auto [ch0, ch1] = make_local_channel_pair();
  SessionConfig cfg0 = backend_cfg(BackendKind::IknpExtension);
  SessionConfig cfg1 = cfg0;
  cfg0.party = Party::P0;
  cfg0.base_ot_file = r1;
  cfg1.party = Party::P1;
  cfg1.base_ot_file = s2;
  std::vector<uint64_t> got;
  bool threw = false;
  std::exception_ptr err;
  std::thread t([&, c = std::move(ch1)]() mutable {
    try {
      Session s(cfg1, std::move(c));
      s.ot().ot2_send(s, 32, msgs);
    } catch (...) {
      err = std::current_exception();
    }
  });
  try {
    Session s(cfg0, std::move(ch0));
    got = s.ot().ot2_recv(s, 32, bits);
  } catch (const std::exception&) {
    threw = true;
  }
  t.join();
  bool any_wrong = false;
  for (size_t i = 0; i < got.size() && i < n; ++i) {
    any_wrong = any_wrong || got[i] != (bits[i] ? msgs[i].m1 : msgs[i].m0);
  }
  CHECK((threw || err || any_wrong));
  for (auto* p : {&r1, &s1, &r2, &s2}) std::remove(p->c_str());
}

TEST_CASE("dealer fault injection corrupts exactly one batch") {
  SessionConfig cfg = backend_cfg(BackendKind::Dealer);
  cfg.inject_fault_at_batch = 0;
  size_t n = 16;
  std::vector<Ot2Pair> msgs(n);
  for (size_t i = 0; i < n; ++i) msgs[i] = {i, i + 100};
  std::vector<uint8_t> bits(n, 1);
  std::vector<uint64_t> got;
  // Injection is sender-side and the harness enables it only on party 0,
  // so party 0 plays the OT sender here.
  run_pair([&](Session& s) { s.ot().ot2_send(s, 32, msgs); },
           [&](Session& s) { got = s.ot().ot2_recv(s, 32, bits); }, cfg);
  size_t wrong = 0;
  for (size_t i = 0; i < n; ++i) {
    if (got[i] != msgs[i].m1) ++wrong;
  }
  CHECK(wrong == 1);
}

}  // TEST_SUITE
