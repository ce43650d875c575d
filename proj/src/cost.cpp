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

#include "norm2pc/cost.hpp"

#include <array>
#include <utility>

#include "json.hpp"
#include "norm2pc/errors.hpp"
#include "norm2pc/millionaire.hpp"

namespace norm2pc {

namespace {

constexpr std::array<std::pair<Protocol, const char*>, 18> kNames = {{
    {Protocol::Mill, "mill"},
    {Protocol::Msb, "msb"},
    {Protocol::BaseMux, "base_mux"},
    {Protocol::AbsMux, "abs_mux"},
    {Protocol::GenMux, "gen_mux"},
    {Protocol::Abs, "abs"},
    {Protocol::Max, "max"},
    {Protocol::MaxNaive, "max_naive"},
    {Protocol::Min, "min"},
    {Protocol::Mult, "mult"},
    {Protocol::And, "and"},
    {Protocol::L1, "l1"},
    {Protocol::L2Sq, "l2sq"},
    {Protocol::L2, "l2"},
    {Protocol::Linf, "linf"},
    {Protocol::Adder, "adder"},
    {Protocol::AdderLayer, "adder_layer"},
    {Protocol::ConvLayer, "conv_layer"},
}};

// Per-instance schedule of the comparison on `bits`-bit inputs: one uniform
// 1-of-2^m OT with a 2-bit payload per chunk, one 1-of-8 OT with a 2-bit
// payload per tree gate (the correlated Beaver pair), 4 opening bits per
// evaluated AND.
uint64_t mill_instance_bits(int bits, int lambda, int m_radix) {
  auto plan = make_compare_plan(bits, m_radix);
  uint64_t leaf = otn_bits(lambda, 1 << m_radix, 2);
  uint64_t gate = otn_bits(lambda, 8, 2);
  return plan.leaves.size() * leaf +
         static_cast<uint64_t>(plan.gate_count()) * gate +
         static_cast<uint64_t>(plan.and_count()) * and_open_bits();
}

uint64_t msb_instance_bits(const CostModelParams& p) {
  return mill_instance_bits(p.ell - 1, p.lambda, p.m_radix);
}

uint64_t mux_instance_bits(const CostModelParams& p) {
  return 2 * cot_bits(p.lambda, p.ell);
}

uint64_t abs_instance_bits(const CostModelParams& p) {
  return msb_instance_bits(p) + mux_instance_bits(p);
}

uint64_t mult_instance_bits(const CostModelParams& p) {
  return 2ull * p.ell * cot_bits(p.lambda, p.ell);
}

// One tournament comparison: msb of the difference plus one base_mux.
uint64_t max_step_bits(const CostModelParams& p) {
  return msb_instance_bits(p) + mux_instance_bits(p);
}

// The reveal-and-reshare sqrt stub exchanges one 64-bit frame per party.
constexpr uint64_t kSqrtStubBits = 128;

// Closed-form bounds. The comparison bound per compared bit is
// (lambda + 14); the absolute-value / comparison-step bound is
// (lambda + 16)(ell + 1) - 30.
uint64_t mill_bound_bits(int bits, int lambda) {
  return static_cast<uint64_t>(lambda + 14) * bits;
}

uint64_t abs_bound_bits(const CostModelParams& p) {
  return static_cast<uint64_t>(p.lambda + 16) * (p.ell + 1) - 30;
}

}  // namespace

const char* protocol_name(Protocol p) {
  for (const auto& [proto, name] : kNames) {
    if (proto == p) return name;
  }
  throw UsageError("unknown protocol value");
}

Protocol parse_protocol(const std::string& name) {
  for (const auto& [proto, n] : kNames) {
    if (name == n) return proto;
  }
  throw UsageError("unknown protocol '" + name + "'");
}

std::vector<Protocol> all_protocols() {
  std::vector<Protocol> out;
  out.reserve(kNames.size());
  for (const auto& [proto, name] : kNames) out.push_back(proto);
  return out;
}

uint64_t schedule_bits(Protocol p, const CostModelParams& c) {
  uint64_t n = c.n;
  switch (p) {
    case Protocol::Mill:
      return n * mill_instance_bits(c.ell, c.lambda, c.m_radix);
    case Protocol::Msb:
      return n * msb_instance_bits(c);
    case Protocol::BaseMux:
    case Protocol::AbsMux:
    case Protocol::GenMux:
      return n * mux_instance_bits(c);
    case Protocol::Abs:
    case Protocol::Adder:
    case Protocol::AdderLayer:
      return n * abs_instance_bits(c);
    case Protocol::Max:
    case Protocol::MaxNaive:
    case Protocol::Min:
      return n < 2 ? 0 : (n - 1) * max_step_bits(c);
    case Protocol::Mult:
    case Protocol::L2Sq:
    case Protocol::ConvLayer:
      return n * mult_instance_bits(c);
    case Protocol::And:
      return n * (2ull * cot_bits(c.lambda, 1) + and_open_bits());
    case Protocol::L1:
      return n * abs_instance_bits(c);
    case Protocol::L2:
      return n * mult_instance_bits(c) + kSqrtStubBits;
    case Protocol::Linf:
      return n * abs_instance_bits(c) +
             (n < 2 ? 0 : (n - 1) * max_step_bits(c));
  }
  throw UsageError("unknown protocol value");
}

Bound analytic_bound(Protocol p, const CostModelParams& c) {
  uint64_t n = c.n;
  switch (p) {
    case Protocol::Mill:
      return {n * mill_bound_bits(c.ell, c.lambda), false};
    case Protocol::Msb:
      return {n * mill_bound_bits(c.ell - 1, c.lambda), false};
    case Protocol::BaseMux:
    case Protocol::AbsMux:
    case Protocol::GenMux:
      return {n * mux_instance_bits(c), true};
    case Protocol::Abs:
    case Protocol::Adder:
    case Protocol::AdderLayer:
    case Protocol::L1:
      return {n * abs_bound_bits(c), false};
    case Protocol::Max:
    case Protocol::MaxNaive:
    case Protocol::Min:
      return n < 2 ? Bound{0, true} : Bound{(n - 1) * abs_bound_bits(c), false};
    case Protocol::Mult:
    case Protocol::L2Sq:
    case Protocol::ConvLayer:
      return {n * mult_instance_bits(c), true};
    case Protocol::And:
      return {n * (bit_triple_bits(c.lambda) + and_open_bits()), true};
    case Protocol::L2:
      return {schedule_bits(Protocol::L2, c), true};
    case Protocol::Linf:
      return {n * abs_bound_bits(c) +
                  (n < 2 ? 0 : (n - 1) * abs_bound_bits(c)),
              false};
  }
  throw UsageError("unknown protocol value");
}

double predict_table_mb(Protocol p, const CostModelParams& c) {
  return static_cast<double>(schedule_bits(p, c)) / 8.0 / (1 << 20);
}

std::vector<BoundCheck> assert_bounds(Protocol p, const CostModelParams& c,
                                      uint64_t measured_bits) {
  std::vector<BoundCheck> out;

  BoundCheck sched;
  sched.name = "schedule";
  sched.bound_bits = schedule_bits(p, c);
  sched.measured_bits = measured_bits;
  sched.exact = true;
  sched.pass = measured_bits == sched.bound_bits;
  out.push_back(sched);

  Bound b = analytic_bound(p, c);
  BoundCheck top;
  top.name = b.exact ? std::string(protocol_name(p)) + "_exact"
                     : std::string(protocol_name(p)) + "_bound";
  top.bound_bits = b.bits;
  top.measured_bits = measured_bits;
  top.exact = b.exact;
  top.pass = b.exact ? measured_bits == b.bits : measured_bits < b.bits;
  out.push_back(top);
  return out;
}

std::string report_to_json(const CostReport& r) {
  nlohmann::json j;
  j["protocol"] = r.protocol;
  j["params"] = {{"lambda", r.params.lambda},
                 {"ell", r.params.ell},
                 {"n", r.params.n},
                 {"m_radix", r.params.m_radix}};
  j["analytic_bits"] = r.analytic_bits;
  j["analytic_exact"] = r.analytic_exact;
  j["scheduled_bits"] = r.scheduled_bits;
  j["measured_bits"] = r.measured_bits;
  j["measured_bits_party"] = {r.measured_bits_party[0],
                              r.measured_bits_party[1]};
  j["measured_mb"] = static_cast<double>(r.measured_bits) / 8.0 / (1 << 20);
  j["wire_bytes"] = r.wire_bytes;
  j["rounds"] = r.rounds;
  j["wall_ms"] = r.wall_ms;
  j["backend"] = r.backend;
  j["backend_test_grade"] = r.backend_test_grade;
  j["bound_checks"] = nlohmann::json::array();
  for (const auto& bc : r.bound_checks) {
    j["bound_checks"].push_back({{"name", bc.name},
                                 {"bound_bits", bc.bound_bits},
                                 {"measured_bits", bc.measured_bits},
                                 {"exact", bc.exact},
                                 {"pass", bc.pass}});
  }
  j["blocks"] = nlohmann::json::object();
  for (const auto& [name, bits] : r.blocks) {
    j["blocks"][name] = bits;
  }
  return j.dump(2);
}

}  // namespace norm2pc
