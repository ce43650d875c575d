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

// Semi-honest extension OT. Two binary lanes (one per sender direction)
// carry 1-of-2 / correlated / random OT; two wide lanes carry 1-of-N OT via
// repetition-extended Walsh-Hadamard code words (pairwise distance is the
// security parameter). Base OTs for the first binary lane come from the
// setup provider; the remaining lanes bootstrap over it, tagged `setup`.
//
// Per batch of w transfers the receiver sends one column-matrix frame
// (lane width bits per transfer) and the sender one payload frame; those
// sizes are exactly the modeled schedule booked by the cost accountant.

#include <openssl/evp.h>

#include <array>
#include <cstring>

#include "norm2pc/bytes.hpp"
#include "norm2pc/cost.hpp"
#include "norm2pc/errors.hpp"
#include "norm2pc/ot.hpp"
#include "norm2pc/session.hpp"

namespace norm2pc {

namespace {

using Block = std::array<uint8_t, 16>;

uint64_t kmask(int kbits) {
  return kbits >= 64 ? ~uint64_t{0} : ((uint64_t{1} << kbits) - 1);
}

// AES-128 in counter mode keyed by `key`, producing the byte range
// [byte_off, byte_off + out.size()) of the key stream.
void prg_fill(const Block& key, uint64_t byte_off, std::span<uint8_t> out) {
  EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
  if (!ctx) throw ProtocolError("EVP context allocation failed");
  if (EVP_EncryptInit_ex(ctx, EVP_aes_128_ecb(), nullptr, key.data(),
                         nullptr) != 1) {
    EVP_CIPHER_CTX_free(ctx);
    throw ProtocolError("AES init failed");
  }
  EVP_CIPHER_CTX_set_padding(ctx, 0);
  uint64_t blk = byte_off / 16;
  size_t skip = byte_off % 16;
  size_t produced = 0;
  uint8_t inblk[16], outblk[16];
  int outl = 0;
  while (produced < out.size()) {
    std::memset(inblk, 0, sizeof(inblk));
    for (int b = 0; b < 8; ++b) inblk[b] = static_cast<uint8_t>(blk >> (8 * b));
    EVP_EncryptUpdate(ctx, outblk, &outl, inblk, 16);
    size_t take = std::min<size_t>(16 - skip, out.size() - produced);
    std::memcpy(out.data() + produced, outblk + skip, take);
    produced += take;
    skip = 0;
    ++blk;
  }
  EVP_CIPHER_CTX_free(ctx);
}

// SHA-256 over (domain, lane, index, row); callers truncate as needed.
std::array<uint8_t, 32> hash_row(int lane, uint64_t index,
                                 std::span<const uint8_t> row) {
  uint8_t header[16] = {'n', '2', 'p', 'H'};
  for (int b = 0; b < 4; ++b) header[4 + b] = static_cast<uint8_t>(lane >> (8 * b));
  for (int b = 0; b < 8; ++b) header[8 + b] = static_cast<uint8_t>(index >> (8 * b));
  std::vector<uint8_t> buf(sizeof(header) + row.size());
  std::memcpy(buf.data(), header, sizeof(header));
  std::memcpy(buf.data() + sizeof(header), row.data(), row.size());
  std::array<uint8_t, 32> out{};
  unsigned int outl = 0;
  if (EVP_Digest(buf.data(), buf.size(), out.data(), &outl, EVP_sha256(),
                 nullptr) != 1) {
    throw ProtocolError("SHA-256 failed");
  }
  return out;
}

uint64_t h64(int lane, uint64_t index, std::span<const uint8_t> row,
             int kbits) {
  auto d = hash_row(lane, index, row);
  uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= static_cast<uint64_t>(d[b]) << (8 * b);
  return v & kmask(kbits);
}

Block h_block(int lane, uint64_t index, std::span<const uint8_t> row) {
  auto d = hash_row(lane, index, row);
  Block out;
  std::memcpy(out.data(), d.data(), 16);
  return out;
}

// rows: w x rowbytes, bit j of row i at rows[i*rowbytes + j/8] bit (j%8).
// cols: nbits x wbytes, bit i of col j at cols[j*wbytes + i/8] bit (i%8).
std::vector<uint8_t> rows_to_cols(std::span<const uint8_t> rows, size_t w,
                                  size_t rowbytes) {
  size_t nbits = rowbytes * 8;
  size_t wbytes = (w + 7) / 8;
  std::vector<uint8_t> cols(nbits * wbytes, 0);
  for (size_t i = 0; i < w; ++i) {
    const uint8_t* row = rows.data() + i * rowbytes;
    for (size_t j = 0; j < nbits; ++j) {
      if ((row[j / 8] >> (j % 8)) & 1) {
        cols[j * wbytes + i / 8] |= static_cast<uint8_t>(1u << (i % 8));
      }
    }
  }
  return cols;
}

std::vector<uint8_t> cols_to_rows(std::span<const uint8_t> cols, size_t w,
                                  size_t nbits) {
  size_t wbytes = (w + 7) / 8;
  size_t rowbytes = nbits / 8;
  std::vector<uint8_t> rows(w * rowbytes, 0);
  for (size_t j = 0; j < nbits; ++j) {
    const uint8_t* col = cols.data() + j * wbytes;
    for (size_t i = 0; i < w; ++i) {
      if ((col[i / 8] >> (i % 8)) & 1) {
        rows[i * rowbytes + j / 8] |= static_cast<uint8_t>(1u << (j % 8));
      }
    }
  }
  return rows;
}

// Repetition-extended Walsh-Hadamard code word for choice v among n_msgs,
// laid out over `nbits` lane bits. Pairwise distance is nbits/2.
void fill_codeword(uint8_t* row, size_t rowbytes, int v, int n_msgs) {
  std::memset(row, 0, rowbytes);
  for (size_t j = 0; j < rowbytes * 8; ++j) {
    int a = static_cast<int>(j % static_cast<size_t>(n_msgs));
    if (__builtin_parity(static_cast<unsigned>(v & a))) {
      row[j / 8] |= static_cast<uint8_t>(1u << (j % 8));
    }
  }
}

// Extension sender state: base-OT receiver view (choice bits 's' plus the
// chosen seeds). Extension receiver state: the seed pairs.
struct LaneSender {
  bool ready = false;
  int lane = -1;
  std::vector<uint8_t> s_bits;  // nbits entries, 0/1
  std::vector<Block> seed;
  std::vector<uint8_t> s_packed;  // nbits/8 bytes
  uint64_t byte_off = 0;
  uint64_t inst = 0;
};

struct LaneReceiver {
  bool ready = false;
  int lane = -1;
  std::vector<Block> seed0, seed1;
  uint64_t byte_off = 0;
  uint64_t inst = 0;
};

class IknpBackend : public OtBackend {
 public:
  const char* name() const override { return "iknp"; }
  bool test_grade() const override { return false; }

  void ot2_send(Session& s, int kbits, std::span<const Ot2Pair> msgs) override {
    if (msgs.empty()) return;
    ensure_binary(s);
    size_t w = msgs.size();
    uint64_t base = bin_send_.inst;
    auto rows = ext_send(s, bin_send_, w);
    size_t rb = row_bytes(bin_send_);
    BitWriter wr;
    std::vector<uint8_t> alt(rb);
    for (size_t i = 0; i < w; ++i) {
      std::span<const uint8_t> q(rows.data() + i * rb, rb);
      xor_into(alt, q, bin_send_.s_packed);
      wr.put(msgs[i].m0 ^ h64(bin_send_.lane, base + i, q, kbits), kbits);
      wr.put(msgs[i].m1 ^ h64(bin_send_.lane, base + i, alt, kbits), kbits);
    }
    auto frame = wr.take();
    s.send(frame, /*in_schedule=*/false);
    s.flush_round();
    book(s, w, ot2_recv_bits(s.lambda(), kbits), ot2_send_bits(s.lambda(), kbits),
         true);
  }

  std::vector<uint64_t> ot2_recv(Session& s, int kbits,
                                 std::span<const uint8_t> bits) override {
    if (bits.empty()) return {};
    ensure_binary(s);
    size_t w = bits.size();
    uint64_t base = bin_recv_.inst;
    auto rows = ext_receive(s, bin_recv_, repeat_code_rows(bits, bin_recv_), w);
    size_t rb = row_bytes(bin_recv_);
    auto frame = s.recv(/*in_schedule=*/false);
    BitReader rd(frame);
    std::vector<uint64_t> out(w);
    for (size_t i = 0; i < w; ++i) {
      uint64_t e0 = rd.get(kbits), e1 = rd.get(kbits);
      std::span<const uint8_t> t(rows.data() + i * rb, rb);
      out[i] = ((bits[i] & 1) ? e1 : e0) ^ h64(bin_recv_.lane, base + i, t, kbits);
    }
    book(s, w, ot2_recv_bits(s.lambda(), kbits), ot2_send_bits(s.lambda(), kbits),
         false);
    return out;
  }

  std::vector<uint64_t> cot_send(Session& s, int kbits,
                                 std::span<const uint64_t> deltas,
                                 CorrSign sign) override {
    if (deltas.empty()) return {};
    ensure_binary(s);
    size_t w = deltas.size();
    uint64_t base = bin_send_.inst;
    auto rows = ext_send(s, bin_send_, w);
    size_t rb = row_bytes(bin_send_);
    const uint64_t mask = kmask(kbits);
    std::vector<uint64_t> randoms(w);
    BitWriter wr;
    std::vector<uint8_t> alt(rb);
    for (size_t i = 0; i < w; ++i) {
      std::span<const uint8_t> q(rows.data() + i * rb, rb);
      xor_into(alt, q, bin_send_.s_packed);
      randoms[i] = h64(bin_send_.lane, base + i, q, kbits);
      uint64_t h1 = h64(bin_send_.lane, base + i, alt, kbits);
      uint64_t corr = sign == CorrSign::Add
                          ? (deltas[i] + randoms[i] - h1) & mask
                          : (deltas[i] - randoms[i] - h1) & mask;
      wr.put(corr, kbits);
    }
    auto frame = wr.take();
    s.send(frame, /*in_schedule=*/false);
    s.flush_round();
    book(s, w, cot_recv_bits(s.lambda(), kbits), cot_send_bits(s.lambda(), kbits),
         true);
    return randoms;
  }

  std::vector<uint64_t> cot_recv(Session& s, int kbits,
                                 std::span<const uint8_t> bits,
                                 CorrSign sign) override {
    if (bits.empty()) return {};
    ensure_binary(s);
    size_t w = bits.size();
    uint64_t base = bin_recv_.inst;
    auto rows = ext_receive(s, bin_recv_, repeat_code_rows(bits, bin_recv_), w);
    size_t rb = row_bytes(bin_recv_);
    const uint64_t mask = kmask(kbits);
    auto frame = s.recv(/*in_schedule=*/false);
    BitReader rd(frame);
    std::vector<uint64_t> out(w);
    for (size_t i = 0; i < w; ++i) {
      uint64_t corr = rd.get(kbits);
      std::span<const uint8_t> t(rows.data() + i * rb, rb);
      uint64_t ht = h64(bin_recv_.lane, base + i, t, kbits);
      if (bits[i] & 1) {
        out[i] = (corr + ht) & mask;
      } else {
        out[i] = sign == CorrSign::Add ? ht : (0 - ht) & mask;
      }
    }
    book(s, w, cot_recv_bits(s.lambda(), kbits), cot_send_bits(s.lambda(), kbits),
         false);
    return out;
  }

  void otn_send(Session& s, int n_msgs, int kbits,
                std::span<const uint64_t> tables) override {
    if (tables.empty()) return;
    if (tables.size() % n_msgs != 0) {
      throw UsageError("1-of-N OT: table size not a multiple of N");
    }
    ensure_kk(s);
    size_t w = tables.size() / n_msgs;
    uint64_t base = kk_send_.inst;
    auto rows = ext_send(s, kk_send_, w);
    size_t rb = row_bytes(kk_send_);
    std::vector<uint8_t> code(rb), masked(rb);
    BitWriter wr;
    for (size_t i = 0; i < w; ++i) {
      std::span<const uint8_t> q(rows.data() + i * rb, rb);
      for (int v = 0; v < n_msgs; ++v) {
        fill_codeword(code.data(), rb, v, n_msgs);
        for (size_t b = 0; b < rb; ++b) {
          masked[b] = static_cast<uint8_t>(q[b] ^ (code[b] & kk_send_.s_packed[b]));
        }
        uint64_t h = h64(kk_send_.lane, base + i, masked, kbits);
        wr.put((tables[i * n_msgs + v] ^ h) & kmask(kbits), kbits);
      }
    }
    auto frame = wr.take();
    s.send(frame, /*in_schedule=*/false);
    s.flush_round();
    book(s, w, otn_recv_bits(s.lambda(), n_msgs, kbits),
         otn_send_bits(s.lambda(), n_msgs, kbits), true);
  }

  std::vector<uint64_t> otn_recv(Session& s, int n_msgs, int kbits,
                                 std::span<const uint8_t> choices) override {
    if (choices.empty()) return {};
    for (uint8_t c : choices) {
      if (c >= n_msgs) throw UsageError("1-of-N OT: choice out of range");
    }
    ensure_kk(s);
    size_t w = choices.size();
    uint64_t base = kk_recv_.inst;
    size_t rb = row_bytes(kk_recv_);
    std::vector<uint8_t> code_rows(w * rb);
    for (size_t i = 0; i < w; ++i) {
      fill_codeword(code_rows.data() + i * rb, rb, choices[i], n_msgs);
    }
    auto rows = ext_receive(s, kk_recv_, code_rows, w);
    auto frame = s.recv(/*in_schedule=*/false);
    BitReader rd(frame);
    std::vector<uint64_t> out(w);
    for (size_t i = 0; i < w; ++i) {
      uint64_t sel = 0;
      for (int v = 0; v < n_msgs; ++v) {
        uint64_t e = rd.get(kbits);
        if (v == choices[i]) sel = e;
      }
      std::span<const uint8_t> t(rows.data() + i * rb, rb);
      out[i] = sel ^ h64(kk_recv_.lane, base + i, t, kbits);
    }
    book(s, w, otn_recv_bits(s.lambda(), n_msgs, kbits),
         otn_send_bits(s.lambda(), n_msgs, kbits), false);
    return out;
  }

  std::vector<Ot2Pair> rot_send(Session& s, int kbits, size_t count) override {
    if (count == 0) return {};
    ensure_binary(s);
    uint64_t base = bin_send_.inst;
    auto rows = ext_send(s, bin_send_, count);
    size_t rb = row_bytes(bin_send_);
    std::vector<Ot2Pair> pairs(count);
    std::vector<uint8_t> alt(rb);
    for (size_t i = 0; i < count; ++i) {
      std::span<const uint8_t> q(rows.data() + i * rb, rb);
      xor_into(alt, q, bin_send_.s_packed);
      pairs[i] = {h64(bin_send_.lane, base + i, q, kbits),
                  h64(bin_send_.lane, base + i, alt, kbits)};
    }
    book(s, count, rot_recv_bits(s.lambda()), 0, true);
    return pairs;
  }

  std::vector<uint64_t> rot_recv(Session& s, int kbits,
                                 std::span<const uint8_t> bits) override {
    if (bits.empty()) return {};
    ensure_binary(s);
    uint64_t base = bin_recv_.inst;
    auto rows = ext_receive(s, bin_recv_, repeat_code_rows(bits, bin_recv_),
                            bits.size());
    size_t rb = row_bytes(bin_recv_);
    std::vector<uint64_t> out(bits.size());
    for (size_t i = 0; i < bits.size(); ++i) {
      std::span<const uint8_t> t(rows.data() + i * rb, rb);
      out[i] = h64(bin_recv_.lane, base + i, t, kbits);
    }
    book(s, bits.size(), rot_recv_bits(s.lambda()), 0, false);
    return out;
  }

 private:
  template <class Lane>
  static size_t row_bytes(const Lane& lane) {
    return lane.nbits / 8;
  }

  struct BinLane : LaneSender {
    size_t nbits = 0;
  };
  struct BinLaneR : LaneReceiver {
    size_t nbits = 0;
  };

  static void xor_into(std::vector<uint8_t>& out, std::span<const uint8_t> a,
                       std::span<const uint8_t> b) {
    for (size_t i = 0; i < out.size(); ++i) out[i] = a[i] ^ b[i];
  }

  // All-zero / all-one code rows for a vector of selection bits.
  static std::vector<uint8_t> repeat_code_rows(std::span<const uint8_t> bits,
                                               const BinLaneR& lane) {
    size_t rb = lane.nbits / 8;
    std::vector<uint8_t> rows(bits.size() * rb, 0);
    for (size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] & 1) std::memset(rows.data() + i * rb, 0xff, rb);
    }
    return rows;
  }

  // Receiver flow: derive both PRG column matrices, send the correction
  // matrix (lane.nbits columns of ceil(w/8) bytes), return rows of matrix T.
  template <class LaneR>
  std::vector<uint8_t> ext_receive(Session& s, LaneR& lane,
                                   std::span<const uint8_t> code_rows,
                                   size_t w) {
    size_t wbytes = (w + 7) / 8;
    auto code_cols = rows_to_cols(code_rows, w, lane.nbits / 8);
    std::vector<uint8_t> t_cols(lane.nbits * wbytes);
    std::vector<uint8_t> frame(lane.nbits * wbytes);
    std::vector<uint8_t> c1(wbytes);
    for (size_t j = 0; j < lane.nbits; ++j) {
      std::span<uint8_t> c0(t_cols.data() + j * wbytes, wbytes);
      prg_fill(lane.seed0[j], lane.byte_off, c0);
      prg_fill(lane.seed1[j], lane.byte_off, c1);
      uint8_t* u = frame.data() + j * wbytes;
      const uint8_t* code = code_cols.data() + j * wbytes;
      for (size_t b = 0; b < wbytes; ++b) u[b] = c0[b] ^ c1[b] ^ code[b];
    }
    s.send(frame, /*in_schedule=*/false);
    s.flush_round();
    lane.byte_off += wbytes;
    lane.inst += w;
    return cols_to_rows(t_cols, w, lane.nbits);
  }

  // Sender flow: read the correction matrix, return rows of matrix Q
  // (q_i = t_i xor (s AND code(c_i))).
  template <class LaneS>
  std::vector<uint8_t> ext_send(Session& s, LaneS& lane, size_t w) {
    size_t wbytes = (w + 7) / 8;
    auto frame = s.recv(/*in_schedule=*/false);
    if (frame.size() != lane.nbits * wbytes) {
      throw ProtocolError("extension OT: bad column matrix size");
    }
    std::vector<uint8_t> q_cols(lane.nbits * wbytes);
    for (size_t j = 0; j < lane.nbits; ++j) {
      std::span<uint8_t> q(q_cols.data() + j * wbytes, wbytes);
      prg_fill(lane.seed[j], lane.byte_off, q);
      if (lane.s_bits[j]) {
        const uint8_t* u = frame.data() + j * wbytes;
        for (size_t b = 0; b < wbytes; ++b) q[b] ^= u[b];
      }
    }
    lane.byte_off += wbytes;
    lane.inst += w;
    return cols_to_rows(q_cols, w, lane.nbits);
  }

  // 16-byte-message chosen OT over an established binary lane; used only to
  // bootstrap further lanes.
  void block_ot_send(Session& s, BinLane& lane,
                     std::span<const std::pair<Block, Block>> pairs) {
    uint64_t base = lane.inst;
    auto rows = ext_send(s, lane, pairs.size());
    size_t rb = row_bytes(lane);
    std::vector<uint8_t> frame(pairs.size() * 32);
    std::vector<uint8_t> alt(rb);
    for (size_t i = 0; i < pairs.size(); ++i) {
      std::span<const uint8_t> q(rows.data() + i * rb, rb);
      xor_into(alt, q, lane.s_packed);
      Block h0 = h_block(lane.lane, base + i, q);
      Block h1 = h_block(lane.lane, base + i, alt);
      for (int b = 0; b < 16; ++b) {
        frame[i * 32 + b] = pairs[i].first[b] ^ h0[b];
        frame[i * 32 + 16 + b] = pairs[i].second[b] ^ h1[b];
      }
    }
    s.send(frame, /*in_schedule=*/false);
    s.flush_round();
    book(s, pairs.size(), ot2_recv_bits(s.lambda(), 128),
         ot2_send_bits(s.lambda(), 128), true);
  }

  std::vector<Block> block_ot_recv(Session& s, BinLaneR& lane,
                                   std::span<const uint8_t> bits) {
    uint64_t base = lane.inst;
    auto rows = ext_receive(s, lane, repeat_code_rows(bits, lane), bits.size());
    size_t rb = row_bytes(lane);
    auto frame = s.recv(/*in_schedule=*/false);
    if (frame.size() != bits.size() * 32) {
      throw ProtocolError("bootstrap OT: bad frame");
    }
    std::vector<Block> out(bits.size());
    for (size_t i = 0; i < bits.size(); ++i) {
      std::span<const uint8_t> t(rows.data() + i * rb, rb);
      Block h = h_block(lane.lane, base + i, t);
      const uint8_t* e = frame.data() + i * 32 + (bits[i] ? 16 : 0);
      for (int b = 0; b < 16; ++b) out[i][b] = e[b] ^ h[b];
    }
    book(s, bits.size(), ot2_recv_bits(s.lambda(), 128),
         ot2_send_bits(s.lambda(), 128), false);
    return out;
  }

  void ensure_binary(Session& s) {
    if (binary_ready_) return;
    auto scope = s.scope("setup");
    int lambda = s.lambda();
    auto provider = s.config().base_ot_file.empty()
                        ? make_seeded_base_ot_provider(s.config().seed)
                        : make_file_base_ot_provider(s.config().base_ot_file);
    // Lane 0 transfers from party 0: P0 holds the base receiver view.
    if (s.party() == Party::P0) {
      auto v = provider->receiver_view(lambda);
      init_sender(bin_send_, 0, lambda, std::move(v.choice), std::move(v.seed));
    } else {
      auto v = provider->sender_view(lambda);
      init_receiver(bin_recv_, 0, lambda, std::move(v.seed0), std::move(v.seed1));
    }
    // Lane 1 transfers from party 1; its base OTs flow over lane 0.
    if (s.party() == Party::P0) {
      std::vector<std::pair<Block, Block>> pairs(lambda);
      BinLaneR r;
      std::vector<Block> s0(lambda), s1(lambda);
      for (int j = 0; j < lambda; ++j) {
        pairs[j] = {s.rng().next_block(), s.rng().next_block()};
        s0[j] = pairs[j].first;
        s1[j] = pairs[j].second;
      }
      block_ot_send(s, bin_send_, pairs);
      init_receiver(bin_recv_, 1, lambda, std::move(s0), std::move(s1));
    } else {
      std::vector<uint8_t> choice(lambda);
      for (auto& c : choice) c = s.rng().next_bit();
      auto seeds = block_ot_recv(s, bin_recv_, choice);
      init_sender(bin_send_, 1, lambda, std::move(choice), std::move(seeds));
    }
    binary_ready_ = true;
  }

  void ensure_kk(Session& s) {
    if (kk_ready_) return;
    ensure_binary(s);
    auto scope = s.scope("setup");
    int width = 2 * s.lambda();
    // Lane 2: P0 is the 1-of-N sender, so P0 base-receives over lane 1.
    bootstrap_kk(s, 2, Party::P0, width);
    // Lane 3: mirror image over lane 0.
    bootstrap_kk(s, 3, Party::P1, width);
    kk_ready_ = true;
  }

  void bootstrap_kk(Session& s, int lane_id, Party otn_sender, int width) {
    KkLaneS& snd = kk_send_;
    KkLaneR& rcv = kk_recv_;
    if (s.party() == otn_sender) {
      std::vector<uint8_t> choice(width);
      for (auto& c : choice) c = s.rng().next_bit();
      auto seeds = block_ot_recv(s, bin_recv_, choice);
      init_sender(snd, lane_id, width, std::move(choice), std::move(seeds));
    } else {
      std::vector<std::pair<Block, Block>> pairs(width);
      std::vector<Block> s0(width), s1(width);
      for (int j = 0; j < width; ++j) {
        pairs[j] = {s.rng().next_block(), s.rng().next_block()};
        s0[j] = pairs[j].first;
        s1[j] = pairs[j].second;
      }
      block_ot_send(s, bin_send_, pairs);
      init_receiver(rcv, lane_id, width, std::move(s0), std::move(s1));
    }
  }

  template <class LaneS>
  static void init_sender(LaneS& lane, int id, int nbits,
                          std::vector<uint8_t> s_bits,
                          std::vector<Block> seeds) {
    lane.lane = id;
    lane.nbits = static_cast<size_t>(nbits);
    lane.s_bits = std::move(s_bits);
    lane.seed = std::move(seeds);
    lane.s_packed.assign(nbits / 8, 0);
    for (int j = 0; j < nbits; ++j) {
      if (lane.s_bits[j]) lane.s_packed[j / 8] |= static_cast<uint8_t>(1u << (j % 8));
    }
    lane.ready = true;
  }

  template <class LaneR>
  static void init_receiver(LaneR& lane, int id, int nbits,
                            std::vector<Block> s0, std::vector<Block> s1) {
    lane.lane = id;
    lane.nbits = static_cast<size_t>(nbits);
    lane.seed0 = std::move(s0);
    lane.seed1 = std::move(s1);
    lane.ready = true;
  }

  static void book(Session& s, size_t count, uint64_t recv_part,
                   uint64_t send_part, bool i_am_sender) {
    Party sender = i_am_sender ? s.party() : other(s.party());
    s.add_sched(other(sender), count * recv_part);
    s.add_sched(sender, count * send_part);
  }

  struct KkLaneS : LaneSender {
    size_t nbits = 0;
  };
  struct KkLaneR : LaneReceiver {
    size_t nbits = 0;
  };

  bool binary_ready_ = false;
  bool kk_ready_ = false;
  BinLane bin_send_;
  BinLaneR bin_recv_;
  KkLaneS kk_send_;
  KkLaneR kk_recv_;
};

}  // namespace

std::unique_ptr<OtBackend> make_iknp_backend() {
  return std::make_unique<IknpBackend>();
}

}  // namespace norm2pc
