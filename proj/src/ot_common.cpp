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

#include <cstring>
#include <fstream>

#include "norm2pc/errors.hpp"
#include "norm2pc/ot.hpp"
#include "norm2pc/prng.hpp"

namespace norm2pc {

namespace {

constexpr size_t kMagicLen = 12;  // strlen(kBaseOtMagic)

struct DerivedBase {
  BaseOtSenderView sender;
  BaseOtReceiverView receiver;
};

DerivedBase derive_base(int lambda, uint64_t seed) {
  // Domain-separated from session randomness so the same run seed can feed
  // both without overlapping streams.
  Prng prng(seed ^ 0xb07a5e7ull);
  DerivedBase d;
  d.sender.seed0.resize(lambda);
  d.sender.seed1.resize(lambda);
  d.receiver.choice.resize(lambda);
  d.receiver.seed.resize(lambda);
  for (int j = 0; j < lambda; ++j) {
    d.sender.seed0[j] = prng.next_block();
    d.sender.seed1[j] = prng.next_block();
    d.receiver.choice[j] = prng.next_bit();
    d.receiver.seed[j] =
        d.receiver.choice[j] ? d.sender.seed1[j] : d.sender.seed0[j];
  }
  return d;
}

class SeededBaseOtProvider : public BaseOtProvider {
 public:
  explicit SeededBaseOtProvider(uint64_t seed) : seed_(seed) {}

  BaseOtSenderView sender_view(int lambda) override {
    return derive_base(lambda, seed_).sender;
  }
  BaseOtReceiverView receiver_view(int lambda) override {
    return derive_base(lambda, seed_).receiver;
  }

 private:
  uint64_t seed_;
};

class FileBaseOtProvider : public BaseOtProvider {
 public:
  explicit FileBaseOtProvider(std::string path) : path_(std::move(path)) {}

  BaseOtSenderView sender_view(int lambda) override {
    auto [role, n, body] = read_body();
    if (role != 0) {
      throw UsageError("base-OT file " + path_ + " holds a receiver view");
    }
    if (n < lambda) throw UsageError("base-OT file has too few records");
    BaseOtSenderView v;
    v.seed0.resize(lambda);
    v.seed1.resize(lambda);
    const uint8_t* p = body.data();
    for (int j = 0; j < lambda; ++j) {
      std::memcpy(v.seed0[j].data(), p, 16);
      std::memcpy(v.seed1[j].data(), p + 16, 16);
      p += 32;
    }
    return v;
  }

  BaseOtReceiverView receiver_view(int lambda) override {
    auto [role, n, body] = read_body();
    if (role != 1) {
      throw UsageError("base-OT file " + path_ + " holds a sender view");
    }
    if (n < lambda) throw UsageError("base-OT file has too few records");
    BaseOtReceiverView v;
    v.choice.resize(lambda);
    v.seed.resize(lambda);
    const uint8_t* p = body.data();
    for (int j = 0; j < lambda; ++j) {
      v.choice[j] = *p & 1;
      std::memcpy(v.seed[j].data(), p + 1, 16);
      p += 17;
    }
    return v;
  }

 private:
  std::tuple<int, int, std::vector<uint8_t>> read_body() {
    std::ifstream f(path_, std::ios::binary);
    if (!f) throw UsageError("cannot open base-OT file: " + path_);
    char magic[kMagicLen];
    f.read(magic, kMagicLen);
    if (!f || std::memcmp(magic, kBaseOtMagic, kMagicLen) != 0) {
      throw UsageError("bad magic in base-OT file: " + path_);
    }
    uint8_t role = 0;
    uint8_t lam[4];
    f.read(reinterpret_cast<char*>(&role), 1);
    f.read(reinterpret_cast<char*>(lam), 4);
    if (!f) throw UsageError("truncated base-OT file: " + path_);
    int lambda = lam[0] | (lam[1] << 8) | (lam[2] << 16) | (lam[3] << 24);
    size_t rec = role == 0 ? 32 : 17;
    std::vector<uint8_t> body(static_cast<size_t>(lambda) * rec);
    f.read(reinterpret_cast<char*>(body.data()),
           static_cast<std::streamsize>(body.size()));
    if (!f) throw UsageError("truncated base-OT file: " + path_);
    return {role, lambda, std::move(body)};
  }

  std::string path_;
};

}  // namespace

std::unique_ptr<BaseOtProvider> make_seeded_base_ot_provider(uint64_t seed) {
  return std::make_unique<SeededBaseOtProvider>(seed);
}

std::unique_ptr<BaseOtProvider> make_file_base_ot_provider(
    const std::string& path) {
  return std::make_unique<FileBaseOtProvider>(path);
}

void write_base_ot_files(const std::string& receiver_path,
                         const std::string& sender_path, int lambda,
                         uint64_t seed) {
  auto d = derive_base(lambda, seed);
  auto header = [&](std::ofstream& f, uint8_t role) {
    f.write(kBaseOtMagic, kMagicLen);
    f.put(static_cast<char>(role));
    uint8_t lam[4] = {static_cast<uint8_t>(lambda),
                      static_cast<uint8_t>(lambda >> 8),
                      static_cast<uint8_t>(lambda >> 16),
                      static_cast<uint8_t>(lambda >> 24)};
    f.write(reinterpret_cast<char*>(lam), 4);
  };

  std::ofstream fs(sender_path, std::ios::binary);
  if (!fs) throw UsageError("cannot write base-OT file: " + sender_path);
  header(fs, 0);
  for (int j = 0; j < lambda; ++j) {
    fs.write(reinterpret_cast<const char*>(d.sender.seed0[j].data()), 16);
    fs.write(reinterpret_cast<const char*>(d.sender.seed1[j].data()), 16);
  }

  std::ofstream fr(receiver_path, std::ios::binary);
  if (!fr) throw UsageError("cannot write base-OT file: " + receiver_path);
  header(fr, 1);
  for (int j = 0; j < lambda; ++j) {
    fr.put(static_cast<char>(d.receiver.choice[j]));
    fr.write(reinterpret_cast<const char*>(d.receiver.seed[j].data()), 16);
  }
}

}  // namespace norm2pc
