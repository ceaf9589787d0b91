// Copyright 2026 The dualcore Authors
// SPDX-License-Identifier: Apache-2.0

// Shared helpers for the test suites: seeded generators and hex literals.

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "dualcore/bytes.hpp"
#include "dualcore/des.hpp"
#include "dualcore/key_schedule.hpp"

namespace dualcore::testing {

using Rng = std::mt19937_64;

inline std::uint8_t random_octet(Rng& rng) { return static_cast<std::uint8_t>(rng() & 0xff); }

inline Bytes random_bytes(Rng& rng, std::size_t n) {
  Bytes b(n);
  for (auto& x : b) x = random_octet(rng);
  return b;
}

template <std::size_t N>
std::array<std::uint8_t, N> random_array(Rng& rng) {
  std::array<std::uint8_t, N> a{};
  for (auto& x : a) x = random_octet(rng);
  return a;
}

inline Block128 random_block(Rng& rng) { return random_array<16>(rng); }

inline AesKey random_key(Rng& rng, KeySize ks) {
  return AesKey(ks, random_bytes(rng, static_cast<std::size_t>(key_bytes(ks))));
}

inline DesKey64 random_des_key(Rng& rng) { return {random_array<8>(rng)}; }

inline Block128 block_hex(std::string_view hex) { return parse_hex_exact<16>(hex); }
inline Block64 block64_hex(std::string_view hex) { return parse_hex_exact<8>(hex); }

inline constexpr KeySize kAllKeySizes[] = {KeySize::k128, KeySize::k192, KeySize::k256};

}  // namespace dualcore::testing
