// Copyright 2026 The dualcore Authors
// SPDX-License-Identifier: Apache-2.0

// Encrypts a short message with AES-256-GCM twice: once with the whole-buffer
// mode functions and once through the cycle-level port, then prints when each
// port write happened and checks the two agree.

#include <cstdio>
#include <string>

#include "dualcore/port.hpp"

int main() {
  using namespace dualcore;

  ModeConfig cfg;
  cfg.mode = Mode::kGcm;
  cfg.key1 = AesKey::from_hex("000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f");
  cfg.iv = gcm_j0_from_nonce(parse_hex("cafebabefacedbaddecaf888"));

  const std::string message = "Flow-through dual-lane AES, one round per cycle.";
  const Bytes pt(message.begin(), message.end());

  const GcmResult reference = gcm_process(pt, cfg);
  std::printf("ciphertext %s\ntag        %s\n", to_hex(reference.data).c_str(), to_hex(reference.tag).c_str());

  const AesTransaction txn = AesTransaction::single(cfg, pt);
  AesCore core;
  const auto result = run_transaction(core, build_stimulus(txn));
  for (std::size_t c = 0; c < result.outputs.size(); ++c) {
    const PortOutputs& o = result.outputs[c];
    if (o.write) std::printf("cycle %3zu  write %s\n", c, to_hex(o.q).c_str());
    if (o.done) std::printf("cycle %3zu  done\n", c);
  }

  const bool match = collect_q(result.outputs) == expected_port_output(txn);
  std::printf("port output %s the mode functions\n", match ? "matches" : "DIFFERS FROM");
  return match ? 0 : 1;
}
