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

#include <cmath>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "norm2pc/cost.hpp"

using namespace norm2pc;

namespace {

CostModelParams params(uint64_t n, int ell = 32, int lambda = 128,
                       int m = 4) {
  return CostModelParams{lambda, ell, n, m};
}

uint64_t sched(Protocol p, uint64_t n, int ell = 32) {
  return schedule_bits(p, params(n, ell));
}

uint64_t bound(Protocol p, uint64_t n, int ell = 32) {
  return analytic_bound(p, params(n, ell)).bits;
}

}  // namespace

TEST_SUITE("cost") {

TEST_CASE("comparison schedule constants") {
  // One l-1 bit comparison with radix 4: q leaf OTs of 2-bit payloads over
  // 16 entries, q-1 fold gates fed by 1-of-8 triples, 4 opening bits per
  // AND gate.
  CHECK(sched(Protocol::Msb, 1, 8) == 852 + 0);     // 7-bit compare
  CHECK(sched(Protocol::Msb, 1, 16) == 1984);       // 15-bit compare
  CHECK(sched(Protocol::Msb, 1, 32) == 4252);       // 31-bit compare
  CHECK(sched(Protocol::Msb, 1, 64) == 8792);       // 63-bit compare
}

TEST_CASE("comparison beats its closed-form bound at production widths") {
  CHECK(bound(Protocol::Msb, 1, 8) == 994);
  CHECK(bound(Protocol::Msb, 1, 16) == 2130);
  CHECK(bound(Protocol::Msb, 1, 32) == 4402);
  CHECK(bound(Protocol::Msb, 1, 64) == 8946);
  for (int ell : {8, 16, 32, 64}) {
    CHECK(sched(Protocol::Msb, 1, ell) < bound(Protocol::Msb, 1, ell));
  }
}

TEST_CASE("mux family is exact") {
  for (int ell : {8, 16, 32, 64}) {
    uint64_t expect = 2 * 128 + 2 * static_cast<uint64_t>(ell);
    auto b = analytic_bound(Protocol::BaseMux, params(1, ell));
    CHECK(b.exact);
    CHECK(b.bits == expect);
    CHECK(sched(Protocol::BaseMux, 1, ell) == expect);
    CHECK(sched(Protocol::AbsMux, 1, ell) == expect);
    CHECK(sched(Protocol::GenMux, 1, ell) == expect);
  }
  // The 320-bit signature value at l = 32, and the table batch.
  CHECK(sched(Protocol::AbsMux, 1, 32) == 320);
  CHECK(predict_table_mb(Protocol::AbsMux, params(uint64_t{1} << 16, 32)) ==
        doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("abs composition and its bound") {
  CHECK(sched(Protocol::Abs, 1, 32) == 4252 + 320);
  CHECK(sched(Protocol::Abs, 1, 64) == 8792 + 384);
  CHECK(bound(Protocol::Abs, 1, 32) == 4722);
  CHECK(bound(Protocol::Abs, 1, 64) == 9330);
  CHECK(sched(Protocol::Abs, 1, 32) < bound(Protocol::Abs, 1, 32));
  CHECK(sched(Protocol::Abs, 1, 64) < bound(Protocol::Abs, 1, 64));
}

TEST_CASE("the two bound forms agree") {
  // (lambda+14)(l-1) + (2 lambda + 2 l) == (lambda+16)(l+1) - 30 at
  // lambda = 128; the abs bound is the comparison bound plus one mux.
  for (int ell : {8, 16, 32, 64}) {
    uint64_t mill_b = bound(Protocol::Msb, 1, ell);
    uint64_t mux = 2 * 128 + 2 * static_cast<uint64_t>(ell);
    CHECK(mill_b + mux == bound(Protocol::Abs, 1, ell));
    CHECK(bound(Protocol::Abs, 1, ell) ==
          static_cast<uint64_t>(128 + 16) * (ell + 1) - 30);
  }
}

TEST_CASE("multiplication is 2l COT_l exactly") {
  for (int ell : {8, 16, 32, 64}) {
    uint64_t expect = 2ull * ell * (128 + ell);
    auto b = analytic_bound(Protocol::Mult, params(1, ell));
    CHECK(b.exact);
    CHECK(b.bits == expect);
    CHECK(sched(Protocol::Mult, 1, ell) == expect);
  }
  CHECK(sched(Protocol::Mult, 1, 32) == 10240);
}

TEST_CASE("and gate cost is one triple plus the opening") {
  auto b = analytic_bound(Protocol::And, params(5));
  CHECK(b.exact);
  CHECK(b.bits == 5 * (2 * (128 + 1) + 4));
  CHECK(sched(Protocol::And, 5) == b.bits);
}

TEST_CASE("norm schedules compose linearly") {
  uint64_t n = 1000;
  CHECK(sched(Protocol::L1, n) == n * sched(Protocol::Abs, 1));
  CHECK(sched(Protocol::L2Sq, n) == n * sched(Protocol::Mult, 1));
  CHECK(sched(Protocol::Adder, n) == sched(Protocol::L1, n));
  uint64_t max_step = sched(Protocol::Max, 2);
  CHECK(sched(Protocol::Max, n) == (n - 1) * max_step);
  CHECK(sched(Protocol::Min, n) == (n - 1) * max_step);
  CHECK(sched(Protocol::MaxNaive, n) == sched(Protocol::Max, n));
  CHECK(sched(Protocol::Linf, n) ==
        n * sched(Protocol::Abs, 1) + (n - 1) * max_step);
  CHECK(sched(Protocol::Max, 1) == 0);
  CHECK(sched(Protocol::Max, 0) == 0);
}

TEST_CASE("table row predictions at n = 2^16") {
  uint64_t n = uint64_t{1} << 16;
  CHECK(predict_table_mb(Protocol::Msb, params(n)) ==
        doctest::Approx(33.22).epsilon(0.01));
  CHECK(predict_table_mb(Protocol::L1, params(n)) ==
        doctest::Approx(35.72).epsilon(0.01));
  CHECK(predict_table_mb(Protocol::Linf, params(n)) ==
        doctest::Approx(71.44).epsilon(0.01));
  CHECK(predict_table_mb(Protocol::Mult, params(n)) ==
        doctest::Approx(80.0).epsilon(0.01));
  // Elementwise adder vs multiplier ratio per element.
  double ratio = static_cast<double>(sched(Protocol::Mult, 1)) /
                 static_cast<double>(sched(Protocol::Abs, 1));
  CHECK(ratio == doctest::Approx(2.2398).epsilon(0.001));
}

TEST_CASE("schedule stays under the strict bounds across params") {
  // Pinned to m_radix = 4: the closed-form comparison bound assumes the
  // production radix (the uniform-leaf schedule can exceed it at skewed
  // chunkings such as a 5-bit compare, which no supported ring hits).
  for (int ell : {8, 16, 32, 64}) {
    for (int lambda : {80, 128, 256}) {
      for (uint64_t n : {uint64_t{1}, uint64_t{3}, uint64_t{100}}) {
        CostModelParams p{lambda, ell, n, 4};
        for (auto proto : {Protocol::Msb, Protocol::Abs, Protocol::L1,
                           Protocol::Linf, Protocol::Adder}) {
          auto b = analytic_bound(proto, p);
          if (b.exact) {
            CHECK(schedule_bits(proto, p) == b.bits);
          } else {
            CAPTURE(ell);
            CAPTURE(lambda);
            CAPTURE(n);
            CHECK(schedule_bits(proto, p) < b.bits);
          }
        }
      }
    }
  }
}

TEST_CASE("assert_bounds passes on the schedule and fails when inflated") {
  for (auto proto : {Protocol::Msb, Protocol::Abs, Protocol::L1,
                     Protocol::Mult, Protocol::BaseMux}) {
    auto p = params(16);
    uint64_t honest = schedule_bits(proto, p);
    auto checks = assert_bounds(proto, p, honest);
    REQUIRE_FALSE(checks.empty());
    for (const auto& c : checks) CHECK(c.pass);
    auto inflated = assert_bounds(proto, p, honest + 8);
    bool any_fail = false;
    for (const auto& c : inflated) any_fail = any_fail || !c.pass;
    CHECK(any_fail);
  }
}

TEST_CASE("protocol names round trip") {
  for (auto p : all_protocols()) {
    CHECK(parse_protocol(protocol_name(p)) == p);
  }
  CHECK_THROWS(parse_protocol("bogus"));
}

TEST_CASE("report serializes to parseable json with the contract fields") {
  CostReport r;
  r.protocol = "l1";
  r.params = params(64);
  r.analytic_bits = analytic_bound(Protocol::L1, r.params).bits;
  r.scheduled_bits = schedule_bits(Protocol::L1, r.params);
  r.measured_bits = r.scheduled_bits;
  r.measured_bits_party[0] = r.scheduled_bits / 2;
  r.measured_bits_party[1] = r.scheduled_bits - r.scheduled_bits / 2;
  r.rounds = 7;
  r.wall_ms = 1.5;
  r.backend = "dealer";
  r.backend_test_grade = true;
  r.bound_checks = assert_bounds(Protocol::L1, r.params, r.measured_bits);
  r.blocks.emplace_back("mill", 42);

  auto j = nlohmann::json::parse(report_to_json(r));
  CHECK(j["protocol"] == "l1");
  CHECK(j["params"]["lambda"] == 128);
  CHECK(j["params"]["ell"] == 32);
  CHECK(j["params"]["n"] == 64);
  CHECK(j["params"]["m_radix"] == 4);
  CHECK(j["analytic_bits"] == r.analytic_bits);
  CHECK(j["measured_bits"] == r.measured_bits);
  CHECK(j["rounds"] == 7);
  CHECK(j["wall_ms"].get<double>() == doctest::Approx(1.5));
  CHECK(j["backend"] == "dealer");
  REQUIRE(j["bound_checks"].is_array());
  CHECK_FALSE(j["bound_checks"].empty());
  for (const auto& c : j["bound_checks"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("bound_bits"));
    CHECK(c.contains("measured_bits"));
    CHECK(c.contains("pass"));
  }
  CHECK(j["blocks"]["mill"] == 42);
}

}  // TEST_SUITE
