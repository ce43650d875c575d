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

#include <vector>

#include "doctest.h"
#include "norm2pc/bytes.hpp"
#include "norm2pc/prng.hpp"

using namespace norm2pc;

TEST_SUITE("bytes") {

TEST_CASE("bit stream round trips mixed widths") {
  Prng rng(321);
  std::vector<std::pair<uint64_t, int>> fields;
  BitWriter w;
  for (int t = 0; t < 500; ++t) {
    int kbits = 1 + static_cast<int>(rng.next_u64() % 64);
    uint64_t v = rng.next_bits(kbits);
    fields.emplace_back(v, kbits);
    w.put(v, kbits);
  }
  auto buf = w.take();
  BitReader r(buf);
  for (auto [v, kbits] : fields) CHECK(r.get(kbits) == v);
}

TEST_CASE("stream length is the bit total rounded up to bytes") {
  BitWriter w;
  w.put(0b101, 3);
  w.put(0b11, 2);
  auto buf = w.take();
  REQUIRE(buf.size() == 1);
  CHECK(buf[0] == 0b11101);
}

TEST_CASE("reading past the end throws") {
  BitWriter w;
  w.put(0xff, 8);
  auto buf = w.take();
  BitReader r(buf);
  r.get(8);
  CHECK_THROWS_AS(r.get(1), ProtocolError);
}

TEST_CASE("u32 little endian round trip") {
  std::vector<uint8_t> out;
  put_u32_le(out, 0x12345678u);
  REQUIRE(out.size() == 4);
  CHECK(out[0] == 0x78);
  CHECK(out[3] == 0x12);
  CHECK(get_u32_le(out) == 0x12345678u);
}

TEST_CASE("fnv1a is deterministic and input sensitive") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a("norm2pc") == fnv1a("norm2pc"));
  CHECK(fnv1a("norm2pc") != fnv1a("norm2pd"));
  // Chaining equals one pass over the concatenation.
  CHECK(fnv1a("cd", fnv1a("ab")) == fnv1a("abcd"));
}

}  // TEST_SUITE
