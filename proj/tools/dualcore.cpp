// Copyright 2026 The dualcore Authors
// SPDX-License-Identifier: Apache-2.0

// dualcore: encrypt/decrypt files, run the known-answer corpus, print the
// throughput model and replay port stimulus.
//
// Exit status: 0 success, 1 unexpected error, 2 usage or configuration error,
// 3 data error (bad input, GCM tag mismatch, malformed stimulus or corpus),
// 4 known-answer failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "dualcore/kat.hpp"
#include "dualcore/modes.hpp"
#include "dualcore/perf.hpp"
#include "dualcore/port.hpp"
#include "dualcore/stimulus.hpp"

namespace {

using namespace dualcore;

enum ExitCode : int { kOk = 0, kUnexpected = 1, kUsage = 2, kData = 3, kKatFailure = 4 };

struct CliConfig {
  std::string mode;
  int key_size = 0;  // 0: taken from the width of --key1
  std::string key1, key2, key3, iv;
  std::string in = "-";
  std::string out = "-";
  double clock_hz = 450e6;
  std::size_t blocks = 1000;
  bool csv = false;
  std::string corpus;
  bool corrupt_sbox = false;
  std::string port = "aes";
  std::string lanes;
};

Bytes read_input(const std::string& path) {
  if (path == "-") {
    std::cin >> std::noskipws;
    return Bytes(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open input '" + path + "'");
  return Bytes(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

void write_output(const std::string& path, std::span<const std::uint8_t> data) {
  if (path == "-") {
    std::cout.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open output '" + path + "'");
  f.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

void write_text(const std::string& path, const std::string& text) {
  write_output(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

AesKey parse_aes_key(const std::string& hex, const char* flag, std::optional<KeySize> size) {
  const Bytes raw = parse_hex(hex);
  const int bits = static_cast<int>(raw.size() * 8);
  if (bits != 128 && bits != 192 && bits != 256) {
    throw ConfigError(std::string(flag) + " must be 128, 192 or 256 bits, got " + std::to_string(bits));
  }
  const KeySize ks = key_size_from_bits(bits);
  if (size && *size != ks) {
    throw ConfigError(std::string(flag) + " is " + std::to_string(bits) + " bits but --key-size is " +
                      std::to_string(key_bits(*size)));
  }
  return AesKey(ks, raw);
}

DesKey64 parse_des_key(const std::string& hex, const char* flag) {
  if (hex.empty()) throw ConfigError(std::string(flag) + " is required for 3des");
  try {
    return DesKey64::from_hex(hex);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(flag) + ": " + e.what());
  }
}

std::string parity_report(std::uint8_t write_error) {
  std::ostringstream os;
  os << "write_error=" << ((write_error >> 2) & 1) << ((write_error >> 1) & 1) << (write_error & 1) << " (";
  bool first = true;
  for (int i = 0; i < 3; ++i) {
    if (write_error & (1 << i)) {
      os << (first ? "" : ", ") << "key" << i + 1;
      first = false;
    }
  }
  os << ")";
  return os.str();
}

int run_tdes(const CliConfig& c, Direction dir) {
  const DesKey64 k1 = parse_des_key(c.key1, "--key1");
  const DesKey64 k2 = parse_des_key(c.key2, "--key2");
  const DesKey64 k3 = parse_des_key(c.key3, "--key3");
  if (c.key_size != 0 && c.key_size != 192) throw ConfigError("3des uses three 64-bit keys; --key-size must be 192");
  if (!c.iv.empty()) std::cerr << "warning: --iv is ignored in 3des (the 3DES datapath runs ECB)\n";
  if (const std::uint8_t we = tdes_parity_errors(k1, k2, k3); we != 0) {
    std::cerr << "warning: 3DES key parity error, " << parity_report(we) << "; continuing\n";
  }
  const Bytes in = read_input(c.in);
  write_output(c.out, tdes_process(in, TripleDes(k1, k2, k3), dir));
  return kOk;
}

int cmd_crypt(const CliConfig& c, Direction dir) {
  if (c.mode == "3des") return run_tdes(c, dir);
  const auto mode = parse_mode_name(c.mode);
  if (!mode) throw ConfigError("unknown mode '" + c.mode + "'");
  if (c.key1.empty()) throw ConfigError("--key1 is required");
  if (!c.key3.empty()) throw ConfigError("--key3 is only used in 3des");

  std::optional<KeySize> size;
  if (c.key_size != 0) size = key_size_from_bits(c.key_size);
  ModeConfig cfg;
  cfg.mode = *mode;
  cfg.direction = dir;
  cfg.key1 = parse_aes_key(c.key1, "--key1", size);
  if (!c.key2.empty()) cfg.key2 = parse_aes_key(c.key2, "--key2", cfg.key1.size());
  if (*mode == Mode::kEcb) {
    if (!c.iv.empty()) throw ConfigError("--iv is not used in ecb mode");
  } else {
    if (c.iv.empty()) throw ConfigError("--iv (128 bits) is required in " + c.mode + " mode");
    try {
      cfg.iv = parse_hex_exact<16>(c.iv);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("--iv: ") + e.what());
    }
  }
  cfg.validate();

  const Bytes in = read_input(c.in);
  if (*mode == Mode::kGcm && dir == Direction::kDecrypt) {
    if (in.size() < kBlockBytes) throw DataError("GCM input must end with a 128-bit tag");
    const std::span<const std::uint8_t> all(in);
    const auto ct = all.first(in.size() - kBlockBytes);
    const Block128 tag = load_block(all, ct.size());
    const auto pt = gcm_decrypt_verified(ct, tag, cfg);
    if (!pt) throw DataError("GCM tag mismatch; no plaintext written");
    write_output(c.out, *pt);
    return kOk;
  }
  write_output(c.out, process_buffer(in, cfg));
  return kOk;
}

int cmd_kat(const CliConfig& c) {
  const std::string path = c.corpus.empty() ? default_kat_path() : c.corpus;
  const auto vectors = load_kat_corpus(path);
  const SBoxTables tables = c.corrupt_sbox ? corrupted_sbox() : standard_sbox();
  const KatReport report = run_kat(vectors, tables);
  for (const auto& f : report.failures) {
    std::cout << "FAIL line " << f.line << " [" << f.kind << "] " << f.detail << '\n';
  }
  for (const auto& [kind, counts] : report.by_kind) {
    std::cout << kind << ": " << counts.first << "/" << counts.second << " passed\n";
  }
  std::cout << "total: " << report.passed << "/" << report.total << " passed, " << report.failed() << " failed\n";
  return report.ok() ? kOk : kKatFailure;
}

int cmd_bench(const CliConfig& c) {
  PerfConfig cfg;
  cfg.clock_hz = c.clock_hz;
  cfg.stream_blocks = c.blocks;
  const auto rows = report_table(cfg);
  std::cout << (c.csv ? format_table_csv(rows) : format_table_text(rows, cfg));
  return kOk;
}

std::string read_text(const std::string& path) {
  const Bytes b = read_input(path);
  return std::string(b.begin(), b.end());
}

void print_diagnostics(const std::vector<PortDiagnostic>& diags) {
  for (const auto& d : diags) std::cerr << "diagnostic cycle=" << d.cycle << ": " << d.message << '\n';
}

int cmd_trace(const CliConfig& c) {
  const std::string text = read_text(c.in);
  if (c.port == "tdes") {
    if (!c.lanes.empty()) throw ConfigError("--lanes applies to the aes port only");
    const auto stim = parse_tdes_stimulus(text);
    TdesCore core;
    const auto r = run_transaction(core, stim);
    write_text(c.out, format_tdes_trace(r.outputs));
    print_diagnostics(r.diagnostics);
    return kOk;
  }
  if (c.port != "aes") throw ConfigError("--port must be aes or tdes");
  const auto stim = parse_aes_stimulus(text);
  AesCore core;
  const auto r = run_transaction(core, stim);
  write_text(c.out, format_aes_trace(r.outputs));
  if (!c.lanes.empty()) write_text(c.lanes, core.lane_trace().to_csv());
  print_diagnostics(r.diagnostics);
  return kOk;
}

void add_crypt_options(CLI::App* sub, CliConfig& c) {
  sub->add_option("--mode", c.mode, "Cipher mode")
      ->required()
      ->check(CLI::IsMember({"gcm", "cbc", "ctr", "ecb", "xts", "3des"}));
  sub->add_option("--key-size", c.key_size, "AES key size in bits (default: width of --key1)")
      ->check(CLI::IsMember({128, 192, 256}));
  sub->add_option("--key1", c.key1, "K1 as hex (AES key, or first 3DES key)");
  sub->add_option("--key2", c.key2, "K2 as hex (XTS tweak key, or second 3DES key)");
  sub->add_option("--key3", c.key3, "K3 as hex (third 3DES key)");
  sub->add_option("--iv", c.iv, "128-bit IV: CBC IV, CTR initial counter, GCM J0, XTS tweak");
  sub->add_option("--in", c.in, "Input file, - for stdin")->capture_default_str();
  sub->add_option("--out", c.out, "Output file, - for stdout")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CliConfig c;
  CLI::App app{"dual-lane AES and 3DES core model"};
  app.require_subcommand(1);

  auto* enc = app.add_subcommand("encrypt", "Encrypt a file; GCM appends the 16-octet tag");
  add_crypt_options(enc, c);
  auto* dec = app.add_subcommand("decrypt", "Decrypt a file; GCM verifies the trailing tag first");
  add_crypt_options(dec, c);

  auto* kat = app.add_subcommand("kat", "Run the known-answer corpus");
  kat->add_option("--corpus", c.corpus, "Corpus file (default: bundled corpus)");
  kat->add_flag("--corrupt-sbox", c.corrupt_sbox, "Run with a faulty AES S-box");

  auto* bench = app.add_subcommand("bench", "Print the throughput model next to the reference table");
  bench->add_option("--clock", c.clock_hz, "Clock frequency in Hz")->capture_default_str();
  bench->add_option("--blocks", c.blocks, "Blocks per simulated stream")->capture_default_str();
  bench->add_flag("--csv", c.csv, "CSV output");

  auto* trace = app.add_subcommand("trace", "Replay a stimulus file through a port and print the output trace");
  trace->add_option("--port", c.port, "Port to drive")->check(CLI::IsMember({"aes", "tdes"}))->capture_default_str();
  trace->add_option("--in", c.in, "Stimulus file, - for stdin")->capture_default_str();
  trace->add_option("--out", c.out, "Trace file, - for stdout")->capture_default_str();
  trace->add_option("--lanes", c.lanes, "Also write the per-cycle lane trace (CSV) to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*enc) return cmd_crypt(c, Direction::kEncrypt);
    if (*dec) return cmd_crypt(c, Direction::kDecrypt);
    if (*kat) return cmd_kat(c);
    if (*bench) return cmd_bench(c);
    if (*trace) return cmd_trace(c);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kUnexpected;
  }
  return kUsage;
}
