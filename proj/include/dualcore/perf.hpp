// Copyright 2026 The dualcore Authors
// SPDX-License-Identifier: Apache-2.0

// Throughput model built on the cycle counts of the dual-lane engine and the
// 3DES pipeline, with the published reference figures alongside for
// comparison.

#pragma once

#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dualcore/des.hpp"
#include "dualcore/dual_engine.hpp"

namespace dualcore {

enum class Algorithm { kTdes, kAesCbc, kAesCtr, kAesEcb, kAesGcm, kAesXts };

inline std::string algorithm_label(Algorithm a) {
  switch (a) {
    case Algorithm::kTdes: return "3DES";
    case Algorithm::kAesCbc: return "AES-CBC";
    case Algorithm::kAesCtr: return "AES-CTR";
    case Algorithm::kAesEcb: return "AES-ECB";
    case Algorithm::kAesGcm: return "AES-GCM";
    case Algorithm::kAesXts: return "AES-XTS";
  }
  return "?";
}

inline std::optional<Mode> algorithm_mode(Algorithm a) {
  switch (a) {
    case Algorithm::kAesCbc: return Mode::kCbc;
    case Algorithm::kAesCtr: return Mode::kCtr;
    case Algorithm::kAesEcb: return Mode::kEcb;
    case Algorithm::kAesGcm: return Mode::kGcm;
    case Algorithm::kAesXts: return Mode::kXts;
    case Algorithm::kTdes: break;
  }
  return std::nullopt;
}

inline int block_bits(Algorithm a) { return a == Algorithm::kTdes ? 64 : 128; }

struct PerfConfig {
  double clock_hz = 450e6;
  std::size_t stream_blocks = 1000;

  void validate() const {
    if (!(clock_hz > 0)) throw ConfigError("clock frequency must be positive");
    if (stream_blocks < 100) throw ConfigError("steady-state measurement needs at least 100 blocks");
  }
};

// Cycles from the first load until the last block leaves. AES modes are
// simulated on the dual-lane engine; 3DES uses the pipeline timing.
inline std::uint64_t cycles_for_stream(Algorithm alg, KeySize ks, std::size_t n_blocks) {
  if (n_blocks == 0) throw ConfigError("a stream needs at least one block");
  if (alg == Algorithm::kTdes) return TdesPipelineTiming::stream_cycles(n_blocks);
  ModeConfig cfg;
  cfg.mode = *algorithm_mode(alg);
  cfg.key1 = AesKey(ks, Bytes(static_cast<std::size_t>(key_bytes(ks)), 0));
  if (cfg.mode == Mode::kXts) cfg.key2 = cfg.key1;
  const std::vector<Block128> blocks(n_blocks);
  return run_stream(blocks, cfg).total_cycles;
}

inline double throughput_mbps(Algorithm alg, KeySize ks, const PerfConfig& cfg = {}) {
  cfg.validate();
  const double cycles = static_cast<double>(cycles_for_stream(alg, ks, cfg.stream_blocks));
  return block_bits(alg) * static_cast<double>(cfg.stream_blocks) * cfg.clock_hz / cycles / 1e6;
}

// Limit as the stream length grows: one block per issue interval.
inline double steady_state_mbps(Algorithm alg, KeySize ks, double clock_hz = 450e6) {
  if (alg == Algorithm::kTdes) return 64.0 * clock_hz / TdesPipelineTiming::kIssueInterval / 1e6;
  return 128.0 * clock_hz * effective_blocks_per_cycle(*algorithm_mode(alg), ks).value() / 1e6;
}

struct PerfRow {
  Algorithm algorithm = Algorithm::kAesEcb;
  int key_bits = 128;
  double model_mbps = 0;
  double reference_mbps = 0;  // published reference at 450 MHz

  std::string label() const { return algorithm_label(algorithm); }
  // Relative gap of the model to the reference, in percent of the reference.
  double gap_percent() const { return (model_mbps - reference_mbps) / reference_mbps * 100.0; }
};

struct ReferenceRow {
  Algorithm algorithm;
  KeySize key_size;
  double mbps;
};

// Published performance table (450 MHz), in its row order.
inline const std::vector<ReferenceRow>& reference_rows() {
  static const std::vector<ReferenceRow> rows{
      {Algorithm::kTdes, KeySize::k192, 3297.28},      {Algorithm::kAesCbc, KeySize::k128, 6949.888},
      {Algorithm::kAesCbc, KeySize::k192, 5886.976},   {Algorithm::kAesCbc, KeySize::k256, 5168.128},
      {Algorithm::kAesCtr, KeySize::k128, 11759.616},  {Algorithm::kAesCtr, KeySize::k192, 9803.776},
      {Algorithm::kAesCtr, KeySize::k256, 8406.016},   {Algorithm::kAesEcb, KeySize::k128, 12566.528},
      {Algorithm::kAesEcb, KeySize::k192, 10478.592},  {Algorithm::kAesEcb, KeySize::k256, 9373.696},
      {Algorithm::kAesGcm, KeySize::k128, 11759.616},  {Algorithm::kAesGcm, KeySize::k192, 9803.776},
      {Algorithm::kAesGcm, KeySize::k256, 8406.016},
  };
  return rows;
}

inline std::vector<PerfRow> report_table(const PerfConfig& cfg = {}) {
  cfg.validate();
  std::vector<PerfRow> rows;
  for (const auto& ref : reference_rows()) {
    PerfRow row;
    row.algorithm = ref.algorithm;
    row.key_bits = key_bits(ref.key_size);  // 3DES: 3 x 64
    row.model_mbps = throughput_mbps(ref.algorithm, ref.key_size, cfg);
    row.reference_mbps = ref.mbps;
    rows.push_back(row);
  }
  return rows;
}

inline std::string format_table_csv(const std::vector<PerfRow>& rows) {
  std::ostringstream os;
  os << "algorithm,key_bits,model_mbps,reference_mbps,gap_percent\n" << std::fixed;
  for (const auto& r : rows) {
    os << r.label() << ',' << r.key_bits << ',' << std::setprecision(3) << r.model_mbps << ',' << r.reference_mbps << ','
       << std::setprecision(2) << r.gap_percent() << '\n';
  }
  return os.str();
}

inline std::string format_table_text(const std::vector<PerfRow>& rows, const PerfConfig& cfg = {}) {
  std::ostringstream os;
  os << "clock " << cfg.clock_hz / 1e6 << " MHz, " << cfg.stream_blocks << " blocks per stream\n";
  os << std::left << std::setw(10) << "algorithm" << std::right << std::setw(6) << "key" << std::setw(14) << "model Mbps"
     << std::setw(14) << "ref Mbps" << std::setw(9) << "gap %" << '\n'
     << std::fixed;
  for (const auto& r : rows) {
    os << std::left << std::setw(10) << r.label() << std::right << std::setw(6) << r.key_bits << std::setw(14)
       << std::setprecision(3) << r.model_mbps << std::setw(14) << r.reference_mbps << std::setw(9) << std::setprecision(2)
       << r.gap_percent() << '\n';
  }
  return os.str();
}

}  // namespace dualcore
