// Copyright 2026 The dualcore Authors
// SPDX-License-Identifier: Apache-2.0

// Known-answer corpus reader and runner.
//
// Corpus lines look like `<kind> name=hex name=hex ...` with kinds aes, ecb,
// cbc, ctr, gcm, xts, des and tdes. `in`/`out` give the encrypt direction and
// every vector is also checked in reverse. For gcm, `iv` is the counter block
// J0 and `tag` the expected tag.

#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dualcore/bytes.hpp"
#include "dualcore/des.hpp"
#include "dualcore/modes.hpp"

namespace dualcore {

struct KatVector {
  std::size_t line = 0;
  std::string kind;
  std::map<std::string, Bytes, std::less<>> fields;

  const Bytes& field(std::string_view name) const {
    const auto it = fields.find(name);
    if (it == fields.end()) throw DataError("missing field '" + std::string(name) + "'");
    return it->second;
  }
  bool has(std::string_view name) const { return fields.find(name) != fields.end(); }
};

inline constexpr std::string_view kKatKinds[] = {"aes", "ecb", "cbc", "ctr", "gcm", "xts", "des", "tdes"};

inline std::vector<KatVector> parse_kat_corpus(std::string_view text) {
  std::vector<KatVector> out;
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream tokens(line);
    KatVector v;
    v.line = line_no;
    if (!(tokens >> v.kind)) continue;
    if (std::find(std::begin(kKatKinds), std::end(kKatKinds), v.kind) == std::end(kKatKinds)) {
      throw DataError("corpus line " + std::to_string(line_no) + ": unknown kind '" + v.kind + "'");
    }
    std::string tok;
    while (tokens >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw DataError("corpus line " + std::to_string(line_no) + ": expected name=hex, got '" + tok + "'");
      }
      try {
        v.fields[tok.substr(0, eq)] = parse_hex(std::string_view(tok).substr(eq + 1));
      } catch (const ConfigError& e) {
        throw DataError("corpus line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    out.push_back(std::move(v));
  }
  if (out.empty()) throw DataError("known-answer corpus is empty");
  return out;
}

inline std::vector<KatVector> load_kat_corpus(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open known-answer corpus '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_kat_corpus(ss.str());
}

inline std::string default_kat_path() {
#ifdef DUALCORE_DATA_DIR
  return std::string(DUALCORE_DATA_DIR) + "/kat_vectors.txt";
#else
  return "data/kat_vectors.txt";
#endif
}

struct KatFailure {
  std::size_t line = 0;
  std::string kind;
  std::string detail;
};

struct KatReport {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::map<std::string, std::pair<std::size_t, std::size_t>> by_kind;  // kind -> (passed, total)
  std::vector<KatFailure> failures;

  std::size_t failed() const { return total - passed; }
  bool ok() const { return total > 0 && failed() == 0; }
};

namespace kat_detail {

inline std::string check(const char* what, std::span<const std::uint8_t> got, std::span<const std::uint8_t> want) {
  if (std::equal(got.begin(), got.end(), want.begin(), want.end())) return {};
  return std::string(what) + ": got " + to_hex(got) + ", want " + to_hex(want);
}

inline Block64 block64(const Bytes& b) { return parse_hex_exact<8>(to_hex(b)); }

// Empty string on success, otherwise the first mismatch.
inline std::string run_one(const KatVector& v, const SBoxTables& tables) {
  const Bytes& in = v.field("in");
  const Bytes& want = v.field("out");
  if (v.kind == "des" || v.kind == "tdes") {
    const bool single = v.kind == "des";
    const DesKey64 k1{block64(v.field(single ? "key" : "k1"))};
    const DesKey64 k2 = single ? k1 : DesKey64{block64(v.field("k2"))};
    const DesKey64 k3 = single ? k1 : DesKey64{block64(v.field("k3"))};
    const TripleDes cipher(k1, k2, k3);
    std::string err = check("encrypt", tdes_process(in, cipher, Direction::kEncrypt), want);
    if (err.empty()) err = check("decrypt", tdes_process(want, cipher, Direction::kDecrypt), in);
    return err;
  }

  const AesKey key = AesKey::from_hex(to_hex(v.field("key")));
  if (v.kind == "aes") {
    const Aes aes(key, tables);
    std::string err = check("encrypt", aes.encrypt(load_block(in)), want);
    if (err.empty()) err = check("decrypt", aes.decrypt(load_block(want)), in);
    return err;
  }

  ModeConfig cfg;
  cfg.key1 = key;
  cfg.mode = *parse_mode_name(v.kind);
  if (v.has("iv")) cfg.iv = parse_hex_exact<16>(to_hex(v.field("iv")));
  if (cfg.mode == Mode::kXts) cfg.key2 = AesKey::from_hex(to_hex(v.field("key2")));

  if (cfg.mode == Mode::kGcm) {
    const GcmResult r = gcm_process(in, cfg, tables);
    std::string err = check("encrypt", r.data, want);
    if (err.empty()) err = check("tag", r.tag, v.field("tag"));
    if (err.empty()) {
      const auto back = gcm_decrypt_verified(want, parse_hex_exact<16>(to_hex(v.field("tag"))), cfg, tables);
      err = back ? check("decrypt", *back, in) : "decrypt: tag verification failed";
    }
    return err;
  }
  std::string err = check("encrypt", process_buffer(in, cfg, tables), want);
  if (err.empty()) {
    cfg.direction = Direction::kDecrypt;
    err = check("decrypt", process_buffer(want, cfg, tables), in);
  }
  return err;
}

}  // namespace kat_detail

// Forward S-box with one entry damaged (S[0x00] gets its low bit flipped); the
// inverse table is left alone. Used to confirm the corpus catches the fault.
inline SBoxTables corrupted_sbox() {
  SBoxTables t = standard_sbox();
  t.forward[0x00] ^= 0x01;
  return t;
}

// `tables` lets callers inject a faulty S-box to confirm the corpus notices.
inline KatReport run_kat(const std::vector<KatVector>& vectors, const SBoxTables& tables = standard_sbox()) {
  if (vectors.empty()) throw DataError("known-answer corpus is empty");
  KatReport report;
  for (const auto& v : vectors) {
    std::string err;
    try {
      err = kat_detail::run_one(v, tables);
    } catch (const std::exception& e) {
      err = std::string("error: ") + e.what();
    }
    ++report.total;
    auto& [pass, total] = report.by_kind[v.kind];
    ++total;
    if (err.empty()) {
      ++report.passed;
      ++pass;
    } else {
      report.failures.push_back({v.line, v.kind, err});
    }
  }
  return report;
}

}  // namespace dualcore
