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

// norm2pc: two-party secure computation of L1 / squared L2 / Linf norms and
// the building blocks underneath them, with communication accounting.
//
//   norm2pc run     one protocol end to end (local pair or TCP endpoint)
//   norm2pc bench   sweep dimensions, emit CostReports / CSV summary
//   norm2pc verify  in-process runs against the plaintext oracle
//   norm2pc gen-bot write base-OT setup files for the iknp backend

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "norm2pc/blocks.hpp"
#include "norm2pc/bytes.hpp"
#include "norm2pc/cost.hpp"
#include "norm2pc/errors.hpp"
#include "norm2pc/norms.hpp"
#include "norm2pc/ot.hpp"
#include "norm2pc/runner.hpp"
#include "norm2pc/session.hpp"
#include "norm2pc/transport.hpp"

namespace n2 = norm2pc;

namespace {

struct CommonOpts {
  std::string protocol;
  int bits = 32;
  uint64_t dim = 8;
  int radix = 4;
  int lambda = 128;
  std::string backend = "dealer";
  uint64_t seed = 1;
  std::string base_ot;
  std::string layer_csv;   // "h,w,c_in,k,c_out,stride,pad"
  std::string layer_table;  // "cifar10-resnet32"
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_protocol = true) {
  if (with_protocol) {
    cmd->add_option("--protocol", o.protocol, "protocol name")->required();
  }
  cmd->add_option("--bits", o.bits, "ring width (8/16/32/64)")
      ->default_val(32);
  cmd->add_option("--dim", o.dim, "vector dimension / batch size")
      ->default_val(8);
  cmd->add_option("--radix", o.radix, "comparison radix m")->default_val(4);
  cmd->add_option("--lambda", o.lambda, "OT security parameter")
      ->default_val(128);
  cmd->add_option("--backend", o.backend, "dealer|iknp")->default_val("dealer");
  cmd->add_option("--seed", o.seed, "run seed")->default_val(1);
  cmd->add_option("--base-ot", o.base_ot,
                  "base-OT setup file for the iknp backend");
  cmd->add_option("--layer", o.layer_csv,
                  "layer geometry h,w,c_in,k,c_out,stride,pad");
}

n2::LayerSpec parse_layer(const std::string& csv) {
  std::vector<int> f;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) f.push_back(std::stoi(tok));
  if (f.size() != 7) {
    throw n2::UsageError("--layer expects h,w,c_in,k,c_out,stride,pad");
  }
  return n2::LayerSpec{f[0], f[1], f[2], f[3], f[4], f[5], f[6]};
}

n2::SessionConfig make_session_config(const CommonOpts& o, int party,
                                      long long inject_fault) {
  n2::SessionConfig cfg;
  cfg.party = party == 0 ? n2::Party::P0 : n2::Party::P1;
  cfg.backend = n2::parse_backend(o.backend);
  cfg.seed = o.seed;
  cfg.lambda = o.lambda;
  cfg.m_radix = o.radix;
  cfg.base_ot_file = o.base_ot;
  cfg.inject_fault_at_batch = inject_fault;
  return cfg;
}

// ------------------------------------------------------------------ CSV

std::vector<std::vector<long long>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw n2::UsageError("cannot open input file '" + path + "'");
  std::vector<std::vector<long long>> records;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::vector<long long> rec;
    std::stringstream ss(line);
    std::string tok;
    bool ok = true;
    while (std::getline(ss, tok, ',')) {
      size_t b = tok.find_first_not_of(" \t\r");
      size_t e = tok.find_last_not_of(" \t\r");
      if (b == std::string::npos) {
        ok = false;
        break;
      }
      try {
        size_t used = 0;
        long long v = std::stoll(tok.substr(b, e - b + 1), &used);
        if (used != e - b + 1) throw std::invalid_argument(tok);
        rec.push_back(v);
      } catch (const std::exception&) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      if (first) {
        first = false;  // tolerate one header row
        continue;
      }
      throw n2::UsageError("input file '" + path +
                           "': non-integer field in '" + line + "'");
    }
    first = false;
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<uint64_t> to_ring(const n2::Ring& ring,
                              const std::vector<long long>& rec) {
  std::vector<uint64_t> out(rec.size());
  for (size_t i = 0; i < rec.size(); ++i) {
    long long v = rec[i];
    if (ring.bits() < 64) {
      long long lo = -(1ll << (ring.bits() - 1));
      long long hi = (1ll << (ring.bits() - 1)) - 1;
      if (v < lo || v > hi) {
        throw n2::UsageError("input value " + std::to_string(v) +
                             " does not fit signed " +
                             std::to_string(ring.bits()) + "-bit range");
      }
    }
    out[i] = ring.from_signed(v);
  }
  return out;
}

std::vector<uint8_t> to_bits(const std::vector<long long>& rec,
                             const char* what) {
  std::vector<uint8_t> out(rec.size());
  for (size_t i = 0; i < rec.size(); ++i) {
    if (rec[i] != 0 && rec[i] != 1) {
      throw n2::UsageError(std::string(what) + " values must be 0 or 1");
    }
    out[i] = static_cast<uint8_t>(rec[i]);
  }
  return out;
}

// Vectors a party owns, in file order. Party 0: x (plus y for gen_mux,
// the image for layers); party 1: y / selector / filter.
struct OwnedSlots {
  bool x = false, y = false, sel = false;
};

OwnedSlots owned_by(n2::Protocol p, int party) {
  auto sh = n2::protocol_shape(p);
  OwnedSlots o;
  if (party == 0) {
    o.x = sh.uses_x;
    o.y = sh.uses_y && p == n2::Protocol::GenMux;
  } else {
    o.x = false;
    o.y = sh.uses_y && p != n2::Protocol::GenMux;
    o.sel = sh.uses_sel;
  }
  if (sh.private_inputs) {
    o = OwnedSlots{};
    (party == 0 ? o.x : o.y) = true;
  }
  return o;
}

// Fill this party's owned vectors from CSV records (or leave the synthetic
// instance intact when no file is given).
void load_owned_inputs(n2::ProtoInputs& in, n2::Protocol p, int party,
                       const n2::Ring& ring, const std::string& path,
                       uint64_t dim, const n2::LayerSpec& layer) {
  if (path.empty()) return;
  auto records = read_csv(path);
  auto o = owned_by(p, party);
  size_t next = 0;
  auto take = [&]() -> const std::vector<long long>& {
    if (next >= records.size()) {
      throw n2::UsageError("input file has too few records for protocol '" +
                           std::string(n2::protocol_name(p)) + "'");
    }
    return records[next++];
  };
  auto check_len = [&](size_t got, size_t want, const char* what) {
    if (got != want) {
      throw n2::UsageError(std::string(what) + " record has " +
                           std::to_string(got) + " fields, expected " +
                           std::to_string(want));
    }
  };
  if (o.x) {
    auto rec = take();
    check_len(rec.size(), n2::expected_len_x(p, dim, layer), "x");
    in.x = p == n2::Protocol::And
               ? std::vector<uint64_t>(to_bits(rec, "and").begin(),
                                       to_bits(rec, "and").end())
               : to_ring(ring, rec);
  }
  if (o.y) {
    auto rec = take();
    check_len(rec.size(), n2::expected_len_y(p, dim, layer), "y");
    in.y = p == n2::Protocol::And
               ? std::vector<uint64_t>(to_bits(rec, "and").begin(),
                                       to_bits(rec, "and").end())
               : to_ring(ring, rec);
  }
  if (o.sel) {
    auto rec = take();
    check_len(rec.size(), n2::expected_len_sel(p, dim), "selector");
    auto bits = to_bits(rec, "selector");
    in.sel.assign(bits.begin(), bits.end());
  }
}

// Local mode: one file carries every vector in canonical order.
void load_all_inputs(n2::ProtoInputs& in, n2::Protocol p, const n2::Ring& ring,
                     const std::string& path, uint64_t dim,
                     const n2::LayerSpec& layer) {
  if (path.empty()) return;
  load_owned_inputs(in, p, 0, ring, path, dim, layer);
  // Reuse the same file for party 1 slots, continuing after party 0's.
  auto records = read_csv(path);
  auto o0 = owned_by(p, 0);
  size_t skip = (o0.x ? 1 : 0) + (o0.y ? 1 : 0);
  auto o1 = owned_by(p, 1);
  size_t next = skip;
  auto take = [&]() -> const std::vector<long long>& {
    if (next >= records.size()) {
      throw n2::UsageError("input file has too few records for protocol '" +
                           std::string(n2::protocol_name(p)) + "'");
    }
    return records[next++];
  };
  if (o1.y) {
    auto rec = take();
    if (rec.size() != n2::expected_len_y(p, dim, layer)) {
      throw n2::UsageError("y record length mismatch");
    }
    in.y = p == n2::Protocol::And
               ? std::vector<uint64_t>(to_bits(rec, "and").begin(),
                                       to_bits(rec, "and").end())
               : to_ring(ring, rec);
  }
  if (o1.sel) {
    auto rec = take();
    if (rec.size() != n2::expected_len_sel(p, dim)) {
      throw n2::UsageError("selector record length mismatch");
    }
    auto bits = to_bits(rec, "selector");
    in.sel.assign(bits.begin(), bits.end());
  }
}

// ------------------------------------------------------------------ output

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw n2::UsageError("cannot write '" + path + "'");
  out << content;
}

void print_report_line(const n2::CostReport& r) {
  bool all_pass = true;
  for (const auto& bc : r.bound_checks) all_pass = all_pass && bc.pass;
  std::cout << r.protocol << " n=" << r.params.n << " ell=" << r.params.ell
            << " backend=" << r.backend << " measured_bits="
            << r.measured_bits << " ("
            << static_cast<double>(r.measured_bits) / 8.0 / (1 << 20)
            << " MB) rounds=" << r.rounds << " bounds="
            << (all_pass ? "pass" : "FAIL") << " wall_ms=" << r.wall_ms
            << "\n";
}

void print_output(const n2::Ring& ring, n2::Protocol p,
                  const std::vector<uint64_t>& vals) {
  bool bits = n2::protocol_shape(p).bit_output;
  std::cout << "output (" << vals.size() << " values):";
  size_t show = std::min<size_t>(vals.size(), 32);
  for (size_t i = 0; i < show; ++i) {
    if (bits) {
      std::cout << ' ' << (vals[i] & 1);
    } else {
      std::cout << ' ' << ring.to_signed(vals[i]);
    }
  }
  if (show < vals.size()) std::cout << " ...";
  std::cout << "\n";
}

uint64_t config_hash(const CommonOpts& o, uint64_t n_eff) {
  std::string canon = std::string("norm2pc|") + o.protocol + "|" +
                      std::to_string(o.bits) + "|" + std::to_string(n_eff) +
                      "|" + std::to_string(o.radix) + "|" + o.backend + "|" +
                      std::to_string(o.lambda) + "|" + o.layer_csv;
  return n2::fnv1a(canon);
}

// Exchange and compare the 9-byte config frame (hash + party id).
void handshake(n2::Session& s, uint64_t hash) {
  auto scope = s.scope("setup");
  std::vector<uint8_t> frame(9);
  for (int i = 0; i < 8; ++i) frame[i] = static_cast<uint8_t>(hash >> (8 * i));
  frame[8] = static_cast<uint8_t>(n2::idx(s.party()));
  s.send(frame, /*in_schedule=*/false);
  s.flush_round();
  auto got = s.recv(/*in_schedule=*/false);
  if (got.size() != 9) throw n2::UsageError("handshake: bad frame");
  uint64_t theirs = 0;
  for (int i = 0; i < 8; ++i) theirs |= uint64_t{got[i]} << (8 * i);
  if (theirs != hash) {
    throw n2::UsageError(
        "config mismatch: peers disagree on protocol/bits/dim/radix/backend");
  }
  if (got[8] == n2::idx(s.party())) {
    throw n2::UsageError("both endpoints claim party " +
                         std::to_string(int(got[8])));
  }
}

// ------------------------------------------------------------------ run

struct RunOpts {
  CommonOpts common;
  int party = -1;
  std::string listen, connect;
  std::string input;
  std::string report;
  bool reveal = false;
  long long inject_fault = -1;
  std::string sqrt;
};

std::pair<std::string, uint16_t> parse_endpoint(const std::string& ep) {
  auto pos = ep.rfind(':');
  if (pos == std::string::npos || pos + 1 >= ep.size()) {
    throw n2::UsageError("endpoint must be host:port, got '" + ep + "'");
  }
  int port = std::stoi(ep.substr(pos + 1));
  if (port < 1 || port > 65535) throw n2::UsageError("port out of range");
  return {ep.substr(0, pos), static_cast<uint16_t>(port)};
}

int do_run(const RunOpts& o) {
  n2::Ring ring(o.common.bits);
  n2::Protocol proto = n2::parse_protocol(o.common.protocol);
  auto sh = n2::protocol_shape(proto);
  n2::LayerSpec layer;
  if (sh.uses_layer) {
    if (o.common.layer_csv.empty()) {
      throw n2::UsageError("layer protocols need --layer");
    }
    layer = parse_layer(o.common.layer_csv);
  }
  uint64_t n_eff = n2::effective_n(proto, o.common.dim, layer, sh.uses_layer);
  n2::CostModelParams params{o.common.lambda, o.common.bits, n_eff,
                             o.common.radix};

  std::unique_ptr<n2::SqrtProvider> sqrt;
  if (o.sqrt == "plaintext-debug") {
    sqrt = n2::make_plaintext_sqrt();
    std::cerr << "note: plaintext-debug sqrt reveals the squared distance; "
                 "test use only\n";
  } else if (!o.sqrt.empty()) {
    throw n2::UsageError("unknown sqrt provider '" + o.sqrt + "'");
  }

  bool tcp = !o.listen.empty() || !o.connect.empty();
  if (!tcp) {
    // Local mode: both parties in-process.
    n2::Prng input_rng(o.common.seed * 31337 + 11);
    auto in = n2::make_inputs(proto, ring, o.common.dim,
                              sh.uses_layer ? &layer : nullptr, input_rng);
    load_all_inputs(in, proto, ring, o.input, o.common.dim, layer);

    auto cfg = make_session_config(o.common, 0, o.inject_fault);
    n2::RunOptions ropt;
    ropt.sqrt = sqrt.get();
    auto res = n2::run_local(proto, cfg, o.common.bits, in, ropt);
    print_report_line(res.report0);
    if (o.reveal) print_output(ring, proto, res.reconstructed);
    if (!o.report.empty()) {
      write_text_file(o.report, n2::report_to_json(res.report0));
    }
    return 0;
  }

  if (o.party != 0 && o.party != 1) {
    throw n2::UsageError("TCP mode needs --party 0 or --party 1");
  }
  if (!o.listen.empty() && !o.connect.empty()) {
    throw n2::UsageError("choose one of --listen / --connect");
  }
  std::unique_ptr<n2::Channel> ch;
  if (!o.listen.empty()) {
    auto [host, port] = parse_endpoint(o.listen);
    ch = n2::tcp_listen(host, port);
  } else {
    auto [host, port] = parse_endpoint(o.connect);
    ch = n2::tcp_connect(host, port);
  }
  auto cfg = make_session_config(o.common, o.party, o.inject_fault);
  n2::Session s(cfg, std::move(ch));
  handshake(s, config_hash(o.common, n_eff));

  n2::Prng input_rng(o.common.seed * 31337 + 11);
  auto in = n2::make_inputs(proto, ring, o.common.dim,
                            sh.uses_layer ? &layer : nullptr, input_rng);
  load_owned_inputs(in, proto, o.party, ring, o.input, o.common.dim, layer);

  auto view = n2::share_inputs(s, ring, proto, in, o.common.dim, layer);
  n2::RunOptions ropt;
  ropt.sqrt = sqrt.get();
  auto t0 = std::chrono::steady_clock::now();
  auto out = n2::run_protocol(s, ring, proto, view, layer, ropt);
  auto t1 = std::chrono::steady_clock::now();
  double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  auto report = n2::build_report(s, proto, params, ms);
  print_report_line(report);
  if (o.reveal) {
    auto plain = n2::reveal_output(s, ring, proto, out);
    print_output(ring, proto, plain);
  }
  if (!o.report.empty()) {
    write_text_file(o.report, n2::report_to_json(report));
  }
  return 0;
}

// ------------------------------------------------------------------ bench

struct BenchOpts {
  CommonOpts common;
  std::string dims = "2^8,2^14,2^16";
  std::string csv;
  std::string report_dir;
  bool predict_only = false;
  bool execute_layers = false;
};

uint64_t parse_dim_token(const std::string& tok) {
  auto caret = tok.find('^');
  if (caret != std::string::npos) {
    uint64_t base = std::stoull(tok.substr(0, caret));
    uint64_t exp = std::stoull(tok.substr(caret + 1));
    uint64_t v = 1;
    for (uint64_t i = 0; i < exp; ++i) v *= base;
    return v;
  }
  return std::stoull(tok);
}

std::vector<uint64_t> parse_dims(const std::string& csv) {
  std::vector<uint64_t> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_dim_token(tok));
  if (out.empty()) throw n2::UsageError("--dims is empty");
  return out;
}

void append_csv_row(std::ostream& os, const n2::CostReport& r,
                    const std::string& mode) {
  bool pass = true;
  for (const auto& bc : r.bound_checks) pass = pass && bc.pass;
  os << r.protocol << ',' << r.params.n << ',' << r.params.ell << ','
     << r.params.lambda << ',' << r.params.m_radix << ',' << r.backend << ','
     << mode << ',' << r.analytic_bits << ',' << r.scheduled_bits << ','
     << r.measured_bits << ','
     << static_cast<double>(r.measured_bits) / 8.0 / (1 << 20) << ','
     << r.rounds << ',' << r.wall_ms << ',' << (pass ? "pass" : "fail")
     << '\n';
}

constexpr const char* kCsvHeader =
    "protocol,n,ell,lambda,m_radix,backend,mode,analytic_bits,"
    "scheduled_bits,measured_bits,measured_mb,rounds,wall_ms,bounds\n";

n2::CostReport predicted_report(n2::Protocol p,
                                const n2::CostModelParams& params) {
  n2::CostReport r;
  r.protocol = n2::protocol_name(p);
  r.params = params;
  auto b = n2::analytic_bound(p, params);
  r.analytic_bits = b.bits;
  r.analytic_exact = b.exact;
  r.scheduled_bits = n2::schedule_bits(p, params);
  r.measured_bits = r.scheduled_bits;
  r.backend = "analytic";
  r.bound_checks = n2::assert_bounds(p, params, r.measured_bits);
  return r;
}

int do_bench(const BenchOpts& o) {
  std::ostringstream csv;
  csv << kCsvHeader;
  auto emit = [&](const n2::CostReport& r, const std::string& mode) {
    append_csv_row(csv, r, mode);
    append_csv_row(std::cout, r, mode);
    if (!o.report_dir.empty()) {
      std::string path = o.report_dir + "/" + r.protocol + "_n" +
                         std::to_string(r.params.n) + ".json";
      write_text_file(path, n2::report_to_json(r));
    }
  };
  std::cout << kCsvHeader;

  if (!o.common.layer_table.empty()) {
    if (o.common.layer_table != "cifar10-resnet32") {
      throw n2::UsageError("unknown layer table '" + o.common.layer_table +
                           "' (expected cifar10-resnet32)");
    }
    n2::Ring ring(o.common.bits);
    for (const auto& layer : n2::cifar10_resnet32_layers()) {
      for (auto proto :
           {n2::Protocol::AdderLayer, n2::Protocol::ConvLayer}) {
        n2::CostModelParams params{o.common.lambda, o.common.bits,
                                   layer.gathered_elems(), o.common.radix};
        if (!o.execute_layers) {
          emit(predicted_report(proto, params), "predicted");
          continue;
        }
        n2::Prng rng(o.common.seed * 31337 + 11);
        auto in = n2::make_inputs(proto, ring, 0, &layer, rng);
        auto cfg = make_session_config(o.common, 0, -1);
        auto res = n2::run_local(proto, cfg, o.common.bits, in);
        emit(res.report0, "executed");
      }
    }
    if (!o.csv.empty()) write_text_file(o.csv, csv.str());
    return 0;
  }

  n2::Protocol proto = n2::parse_protocol(o.common.protocol);
  if (n2::protocol_shape(proto).uses_layer) {
    throw n2::UsageError("bench layer protocols via --layers cifar10-resnet32");
  }
  n2::Ring ring(o.common.bits);
  for (uint64_t n : parse_dims(o.dims)) {
    n2::CostModelParams params{o.common.lambda, o.common.bits, n,
                               o.common.radix};
    if (o.predict_only) {
      emit(predicted_report(proto, params), "predicted");
      continue;
    }
    n2::Prng rng(o.common.seed * 31337 + 11 + n);
    auto in = n2::make_inputs(proto, ring, n, nullptr, rng);
    auto cfg = make_session_config(o.common, 0, -1);
    std::unique_ptr<n2::SqrtProvider> sqrt;
    n2::RunOptions ropt;
    if (proto == n2::Protocol::L2) {
      sqrt = n2::make_plaintext_sqrt();
      ropt.sqrt = sqrt.get();
    }
    auto res = n2::run_local(proto, cfg, o.common.bits, in, ropt);
    emit(res.report0, "executed");
  }
  if (!o.csv.empty()) write_text_file(o.csv, csv.str());
  return 0;
}

// ------------------------------------------------------------------ verify

struct VerifyOpts {
  CommonOpts common;
  std::string bits_list = "8,16,32";
  uint64_t trials = 100;
  uint64_t dim = 0;  // 0: vary per trial
  bool exhaustive_mill = false;
  long long inject_fault = -1;
};

std::vector<int> parse_bits_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  if (out.empty()) throw n2::UsageError("--bits list is empty");
  return out;
}

void dump_counterexample(const n2::Ring& ring, n2::Protocol p, uint64_t seed,
                         const n2::ProtoInputs& in,
                         const std::vector<uint64_t>& expect,
                         const n2::LocalRunResult& res) {
  auto dump_vec = [&](const char* name, const std::vector<uint64_t>& v,
                      bool as_signed) {
    std::cerr << "  " << name << " =";
    size_t show = std::min<size_t>(v.size(), 32);
    for (size_t i = 0; i < show; ++i) {
      std::cerr << ' '
                << (as_signed ? std::to_string(ring.to_signed(v[i]))
                              : std::to_string(v[i]));
    }
    if (show < v.size()) std::cerr << " ...";
    std::cerr << "\n";
  };
  std::cerr << "COUNTEREXAMPLE protocol=" << n2::protocol_name(p)
            << " ell=" << ring.bits() << " seed=" << seed << "\n";
  bool priv = n2::protocol_shape(p).private_inputs;
  dump_vec("x", in.x, !priv && p != n2::Protocol::And);
  if (!in.y.empty()) dump_vec("y", in.y, !priv && p != n2::Protocol::And);
  if (!in.sel.empty()) {
    std::vector<uint64_t> sel(in.sel.begin(), in.sel.end());
    dump_vec("sel", sel, false);
  }
  dump_vec("expected", expect, false);
  dump_vec("reconstructed", res.reconstructed, false);
  dump_vec("share0", res.out0, false);
  dump_vec("share1", res.out1, false);
}

int do_verify(const VerifyOpts& o) {
  std::vector<n2::Protocol> protos;
  if (o.common.protocol == "all") {
    protos = {n2::Protocol::Mill,   n2::Protocol::Msb,
              n2::Protocol::BaseMux, n2::Protocol::AbsMux,
              n2::Protocol::GenMux,  n2::Protocol::Abs,
              n2::Protocol::Max,     n2::Protocol::MaxNaive,
              n2::Protocol::Min,     n2::Protocol::And,
              n2::Protocol::Mult,    n2::Protocol::L1,
              n2::Protocol::L2Sq,    n2::Protocol::L2,
              n2::Protocol::Linf,    n2::Protocol::Adder,
              n2::Protocol::AdderLayer, n2::Protocol::ConvLayer};
  } else {
    protos = {n2::parse_protocol(o.common.protocol)};
  }
  auto bits_list = parse_bits_list(o.bits_list);
  n2::LayerSpec small_layer{4, 4, 2, 2, 3, 1, 1};

  uint64_t total = 0, failed = 0;
  for (auto proto : protos) {
    auto sh = n2::protocol_shape(proto);
    for (int bits : bits_list) {
      n2::Ring ring(bits);
      uint64_t trials = o.trials;
      if (sh.uses_layer) trials = std::min<uint64_t>(trials, 10);

      if (proto == n2::Protocol::Mill && bits == 8 && o.exhaustive_mill) {
        // Every (x, y) pair in one batched comparison.
        n2::ProtoInputs in;
        in.x.resize(65536);
        in.y.resize(65536);
        for (uint64_t x = 0; x < 256; ++x) {
          for (uint64_t y = 0; y < 256; ++y) {
            in.x[x * 256 + y] = x;
            in.y[x * 256 + y] = y;
          }
        }
        auto cfg = make_session_config(o.common, 0, o.inject_fault);
        auto res = n2::run_local(proto, cfg, bits, in);
        auto expect = n2::oracle_eval(proto, ring, in);
        total += 65536;
        uint64_t bad = 0;
        for (size_t i = 0; i < expect.size(); ++i) {
          if (expect[i] != res.reconstructed[i]) ++bad;
        }
        if (bad != 0) {
          failed += bad;
          dump_counterexample(ring, proto, o.common.seed, in, expect, res);
        }
        std::cout << "mill ell=8 exhaustive: " << (65536 - bad)
                  << "/65536 pass\n";
        continue;
      }

      uint64_t pass = 0;
      for (uint64_t t = 0; t < trials; ++t) {
        uint64_t seed = o.common.seed + t * 1000003 + bits;
        n2::Prng rng(seed * 31337 + 11);
        uint64_t dim = o.dim != 0 ? o.dim : 1 + rng.next_u64() % 64;
        auto in = n2::make_inputs(proto, ring, dim,
                                  sh.uses_layer ? &small_layer : nullptr, rng);
        auto cfg = make_session_config(o.common, 0, o.inject_fault);
        cfg.seed = seed;
        n2::RunOptions ropt;
        std::unique_ptr<n2::SqrtProvider> sqrt;
        if (proto == n2::Protocol::L2) {
          sqrt = n2::make_plaintext_sqrt();
          ropt.sqrt = sqrt.get();
        }
        auto res = n2::run_local(proto, cfg, bits, in, ropt);
        auto expect = n2::oracle_eval(proto, ring, in);
        ++total;
        if (expect == res.reconstructed) {
          ++pass;
        } else {
          ++failed;
          dump_counterexample(ring, proto, seed, in, expect, res);
          break;
        }
      }
      std::cout << n2::protocol_name(proto) << " ell=" << bits << ": " << pass
                << "/" << trials << " pass\n";
      if (failed != 0) break;
    }
    if (failed != 0) break;
  }
  if (failed != 0) {
    std::cerr << "verification FAILED\n";
    return 1;
  }
  std::cout << "verification OK (" << total << " trials)\n";
  return 0;
}

// ------------------------------------------------------------------ gen-bot

struct GenBotOpts {
  std::string out_party0, out_party1;
  int lambda = 128;
  uint64_t seed = 1;
};

int do_genbot(const GenBotOpts& o) {
  // Party 0 extends as sender and therefore consumes the base receiver
  // view; party 1 the base sender view.
  n2::write_base_ot_files(o.out_party0, o.out_party1, o.lambda, o.seed);
  std::cout << "wrote " << o.out_party0 << " (party 0) and " << o.out_party1
            << " (party 1), lambda=" << o.lambda << "\n";
  std::cout << "note: both views derive from --seed " << o.seed
            << "; simulation-grade setup, not a secure base-OT run\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"norm2pc: secure two-party norm computation"};
  app.require_subcommand(1);

  RunOpts run_opts;
  auto* run_cmd = app.add_subcommand("run", "execute one protocol");
  add_common(run_cmd, run_opts.common);
  run_cmd->add_option("--party", run_opts.party, "0 or 1 (TCP mode)");
  run_cmd->add_option("--listen", run_opts.listen, "host:port to accept on");
  run_cmd->add_option("--connect", run_opts.connect, "host:port to dial");
  run_cmd->add_option("--input", run_opts.input, "CSV input vectors");
  run_cmd->add_option("--report", run_opts.report, "write JSON CostReport");
  run_cmd->add_flag("--reveal", run_opts.reveal,
                    "exchange output shares and print the plaintext result");
  run_cmd->add_option("--inject-fault", run_opts.inject_fault,
                      "corrupt the i-th dealer OT reply (negative test)");
  run_cmd->add_option("--sqrt", run_opts.sqrt,
                      "sqrt provider for l2 (plaintext-debug)");

  BenchOpts bench_opts;
  auto* bench_cmd = app.add_subcommand("bench", "dimension sweep");
  add_common(bench_cmd, bench_opts.common, /*with_protocol=*/false);
  bench_cmd->add_option("--protocol", bench_opts.common.protocol,
                        "protocol name");
  bench_cmd->add_option("--dims", bench_opts.dims,
                        "comma list, 2^k accepted");
  bench_cmd->add_option("--csv", bench_opts.csv, "write CSV summary");
  bench_cmd->add_option("--report-dir", bench_opts.report_dir,
                        "write one JSON report per run");
  bench_cmd->add_flag("--predict-only", bench_opts.predict_only,
                      "analytic schedule only, no execution");
  bench_cmd->add_option("--layers", bench_opts.common.layer_table,
                        "built-in layer table (cifar10-resnet32)");
  bench_cmd->add_flag("--execute", bench_opts.execute_layers,
                      "execute layer benchmarks instead of predicting");

  VerifyOpts verify_opts;
  auto* verify_cmd =
      app.add_subcommand("verify", "plaintext-oracle verification");
  verify_cmd->add_option("--protocol", verify_opts.common.protocol,
                         "protocol name or 'all'")
      ->default_val("all");
  verify_cmd->add_option("--bits", verify_opts.bits_list,
                         "comma list of ring widths");
  verify_cmd->add_option("--trials", verify_opts.trials, "trials per config");
  verify_cmd->add_option("--dim", verify_opts.dim,
                         "fixed dimension (0: vary per trial)");
  verify_cmd->add_option("--radix", verify_opts.common.radix, "radix m");
  verify_cmd->add_option("--lambda", verify_opts.common.lambda, "lambda");
  verify_cmd->add_option("--backend", verify_opts.common.backend,
                         "dealer|iknp");
  verify_cmd->add_option("--seed", verify_opts.common.seed, "base seed");
  verify_cmd->add_flag("--exhaustive-mill", verify_opts.exhaustive_mill,
                       "enumerate all pairs for mill at ell=8");
  verify_cmd->add_option("--inject-fault", verify_opts.inject_fault,
                         "corrupt the i-th dealer OT reply (negative test)");

  GenBotOpts genbot_opts;
  auto* genbot_cmd =
      app.add_subcommand("gen-bot", "write base-OT setup files");
  genbot_cmd->add_option("--out-party0", genbot_opts.out_party0,
                         "setup file consumed by party 0")
      ->required();
  genbot_cmd->add_option("--out-party1", genbot_opts.out_party1,
                         "setup file consumed by party 1")
      ->required();
  genbot_cmd->add_option("--lambda", genbot_opts.lambda, "lambda")
      ->default_val(128);
  genbot_cmd->add_option("--seed", genbot_opts.seed, "derivation seed")
      ->default_val(1);

  try {
    app.parse(argc, argv);
    if (run_cmd->parsed()) return do_run(run_opts);
    if (bench_cmd->parsed()) return do_bench(bench_opts);
    if (verify_cmd->parsed()) return do_verify(verify_opts);
    if (genbot_cmd->parsed()) return do_genbot(genbot_opts);
    throw n2::UsageError("no subcommand");
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const n2::TransportError& e) {
    std::cerr << "transport error: " << e.what() << "\n";
    return 3;
  } catch (const n2::UsageError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const n2::UnsupportedError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const n2::ProtocolError& e) {
    std::cerr << "protocol failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
