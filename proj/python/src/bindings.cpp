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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "norm2pc/cost.hpp"
#include "norm2pc/norms.hpp"
#include "norm2pc/ot.hpp"
#include "norm2pc/runner.hpp"

namespace py = pybind11;
namespace n2 = norm2pc;

namespace {

using LayerTuple = std::tuple<int, int, int, int, int, int, int>;

n2::LayerSpec to_layer(const LayerTuple& t) {
  return n2::LayerSpec{std::get<0>(t), std::get<1>(t), std::get<2>(t),
                       std::get<3>(t), std::get<4>(t), std::get<5>(t),
                       std::get<6>(t)};
}

// Signed python ints -> ring residues, except for the raw-valued protocols
// (the comparison takes unsigned inputs, the AND gate takes bits).
std::vector<uint64_t> to_ring_vec(const n2::Ring& ring, n2::Protocol p,
                                  const std::vector<long long>& vals) {
  std::vector<uint64_t> out(vals.size());
  bool raw = p == n2::Protocol::Mill || p == n2::Protocol::And;
  for (size_t i = 0; i < vals.size(); ++i) {
    out[i] = raw ? ring.reduce(static_cast<uint64_t>(vals[i]))
                 : ring.from_signed(vals[i]);
  }
  return out;
}

std::vector<long long> from_ring_vec(const n2::Ring& ring, n2::Protocol p,
                                     const std::vector<uint64_t>& vals) {
  std::vector<long long> out(vals.size());
  bool bits = n2::protocol_shape(p).bit_output;
  for (size_t i = 0; i < vals.size(); ++i) {
    out[i] = bits ? static_cast<long long>(vals[i] & 1)
                  : ring.to_signed(vals[i]);
  }
  return out;
}

n2::ProtoInputs build_inputs(n2::Protocol p, const n2::Ring& ring,
                             uint64_t dim, uint64_t seed,
                             const std::optional<std::vector<long long>>& x,
                             const std::optional<std::vector<long long>>& y,
                             const std::optional<std::vector<int>>& sel,
                             const std::optional<LayerTuple>& layer) {
  n2::LayerSpec spec;
  bool has_layer = layer.has_value();
  if (has_layer) spec = to_layer(*layer);
  if (n2::protocol_shape(p).uses_layer && !has_layer) {
    throw n2::UsageError("layer protocols need layer=(h,w,c_in,k,c_out,"
                         "stride,pad)");
  }
  n2::Prng rng(seed * 31337 + 11);
  auto in = n2::make_inputs(p, ring, dim, has_layer ? &spec : nullptr, rng);
  if (x) in.x = to_ring_vec(ring, p, *x);
  if (y) in.y = to_ring_vec(ring, p, *y);
  if (sel) {
    in.sel.assign(sel->begin(), sel->end());
    for (auto b : in.sel) {
      if (b > 1) throw n2::UsageError("selector entries must be 0 or 1");
    }
  }
  return in;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "two-party secure norm computation core";

  py::register_exception<n2::UsageError>(m, "UsageError");
  py::register_exception<n2::UnsupportedError>(m, "UnsupportedError");
  py::register_exception<n2::ProtocolError>(m, "ProtocolError");

  m.def("protocols", [] {
    std::vector<std::string> names;
    for (auto p : n2::all_protocols()) names.push_back(n2::protocol_name(p));
    return names;
  });

  m.def(
      "run",
      [](const std::string& protocol, int bits, uint64_t dim, uint64_t seed,
         const std::string& backend, int radix, int lam,
         std::optional<std::vector<long long>> x,
         std::optional<std::vector<long long>> y,
         std::optional<std::vector<int>> sel, std::optional<LayerTuple> layer,
         bool debug_sqrt) {
        n2::Protocol p = n2::parse_protocol(protocol);
        n2::Ring ring(bits);
        auto in = build_inputs(p, ring, dim, seed, x, y, sel, layer);
        n2::SessionConfig cfg;
        cfg.seed = seed;
        cfg.backend = n2::parse_backend(backend);
        cfg.m_radix = radix;
        cfg.lambda = lam;
        n2::RunOptions opt;
        std::unique_ptr<n2::SqrtProvider> sqrt;
        if (debug_sqrt) {
          sqrt = n2::make_plaintext_sqrt();
          opt.sqrt = sqrt.get();
        }
        n2::LocalRunResult res;
        {
          py::gil_scoped_release release;
          res = n2::run_local(p, cfg, bits, in, opt);
        }
        py::dict out;
        out["output"] = from_ring_vec(ring, p, res.reconstructed);
        out["report_json"] = n2::report_to_json(res.report0);
        return out;
      },
      py::arg("protocol"), py::arg("bits") = 32, py::arg("dim") = 8,
      py::arg("seed") = 1, py::arg("backend") = "dealer", py::arg("radix") = 4,
      py::arg("lam") = 128, py::arg("x") = std::nullopt,
      py::arg("y") = std::nullopt, py::arg("sel") = std::nullopt,
      py::arg("layer") = std::nullopt, py::arg("debug_sqrt") = false);

  m.def(
      "oracle",
      [](const std::string& protocol, int bits, uint64_t dim, uint64_t seed,
         std::optional<std::vector<long long>> x,
         std::optional<std::vector<long long>> y,
         std::optional<std::vector<int>> sel,
         std::optional<LayerTuple> layer) {
        n2::Protocol p = n2::parse_protocol(protocol);
        n2::Ring ring(bits);
        auto in = build_inputs(p, ring, dim, seed, x, y, sel, layer);
        return from_ring_vec(ring, p, n2::oracle_eval(p, ring, in));
      },
      py::arg("protocol"), py::arg("bits") = 32, py::arg("dim") = 8,
      py::arg("seed") = 1, py::arg("x") = std::nullopt,
      py::arg("y") = std::nullopt, py::arg("sel") = std::nullopt,
      py::arg("layer") = std::nullopt);

  m.def(
      "predict",
      [](const std::string& protocol, int bits, uint64_t n, int lam,
         int radix) {
        n2::Protocol p = n2::parse_protocol(protocol);
        n2::CostModelParams params{lam, bits, n, radix};
        auto b = n2::analytic_bound(p, params);
        py::dict out;
        out["analytic_bits"] = b.bits;
        out["analytic_exact"] = b.exact;
        out["schedule_bits"] = n2::schedule_bits(p, params);
        out["schedule_mb"] = n2::predict_table_mb(p, params);
        return out;
      },
      py::arg("protocol"), py::arg("bits") = 32, py::arg("n") = 1,
      py::arg("lam") = 128, py::arg("radix") = 4);

  m.def("write_base_ot_files", &n2::write_base_ot_files,
        py::arg("receiver_path"), py::arg("sender_path"),
        py::arg("lam") = 128, py::arg("seed") = 1);
}
