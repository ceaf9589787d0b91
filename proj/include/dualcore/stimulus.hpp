// Copyright 2026 The dualcore Authors
// SPDX-License-Identifier: Apache-2.0

// Text form of port stimulus and port output traces.
//
// One line per clock. A line holds whitespace-separated `name=value` pairs in
// hexadecimal; signals not named keep their value from the previous line. The
// pseudo-signal `repeat=N` (hex) applies the line for N cycles. `#` starts a
// comment and blank lines are skipped, so a cycle that changes nothing is
// written as `repeat=1`. Values wider than their signal are masked to its
// width.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dualcore/bytes.hpp"
#include "dualcore/port.hpp"

namespace dualcore {

class StimulusError : public DataError {
 public:
  StimulusError(std::size_t line, const std::string& what)
      : DataError("stimulus line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

template <typename T>
struct SignalField {
  std::string_view name;
  int width = 1;  // bits
  // Values travel as big-endian octet strings of ceil(width/8) octets.
  std::function<void(T&, const Bytes&)> set;
  std::function<Bytes(const T&)> get;
};

namespace stim_detail {

inline std::size_t width_bytes(int width) { return static_cast<std::size_t>((width + 7) / 8); }

// Parses a hex number right-aligned into `width` bits.
inline std::optional<Bytes> parse_value(std::string_view hex, int width) {
  if (hex.size() > 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) hex.remove_prefix(2);
  if (hex.empty()) return std::nullopt;
  Bytes out(width_bytes(width), 0);
  std::size_t nibble = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it, ++nibble) {
    const int v = hex_digit(*it);
    if (v < 0) return std::nullopt;
    const std::size_t byte = nibble / 2;
    if (byte >= out.size()) continue;  // beyond the signal: masked away
    out[out.size() - 1 - byte] |= static_cast<std::uint8_t>(nibble % 2 == 0 ? v : v << 4);
  }
  if (width % 8 != 0) out[0] &= static_cast<std::uint8_t>((1u << (width % 8)) - 1);
  return out;
}

inline std::string format_value(const Bytes& v, int width) {
  const std::string hex = to_hex(v);
  const std::size_t digits = static_cast<std::size_t>((width + 3) / 4);
  return hex.substr(hex.size() - digits);
}

inline Bytes narrow(std::uint8_t v) { return Bytes{v}; }

template <typename T>
SignalField<T> flag(std::string_view name, bool T::*member) {
  return {name, 1, [member](T& t, const Bytes& v) { t.*member = (v.back() & 1) != 0; },
          [member](const T& t) { return narrow(t.*member ? 1 : 0); }};
}

template <typename T>
SignalField<T> small(std::string_view name, int width, std::uint8_t T::*member) {
  const auto mask = static_cast<std::uint8_t>((1u << width) - 1);
  return {name, width, [member, mask](T& t, const Bytes& v) { t.*member = v.back() & mask; },
          [member, mask](const T& t) { return narrow(t.*member & mask); }};
}

template <typename T, std::size_t N>
SignalField<T> wide(std::string_view name, std::array<std::uint8_t, N> T::*member) {
  return {name, static_cast<int>(N * 8),
          [member](T& t, const Bytes& v) { std::copy(v.begin(), v.end(), (t.*member).begin()); },
          [member](const T& t) { return Bytes((t.*member).begin(), (t.*member).end()); }};
}

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace stim_detail

inline const std::vector<SignalField<PortInputs>>& aes_input_fields() {
  using namespace stim_detail;
  using P = PortInputs;
  static const std::vector<SignalField<P>> fields{
      flag<P>("reset_n", &P::reset_n), flag<P>("cen", &P::cen),          small<P>("mode", 3, &P::mode),
      flag<P>("encrypt", &P::encrypt), small<P>("ks", 2, &P::ks),        flag<P>("new_iv", &P::new_iv),
      flag<P>("cts", &P::cts),         flag<P>("start", &P::start),      wide<P>("d", &P::d),
      wide<P>("k1", &P::k1),           wide<P>("k2", &P::k2),            wide<P>("iv", &P::iv),
      small<P>("be", 4, &P::be),       flag<P>("endc", &P::endc),        flag<P>("icg_disable", &P::icg_disable),
  };
  return fields;
}

inline const std::vector<SignalField<PortOutputs>>& aes_output_fields() {
  using namespace stim_detail;
  using P = PortOutputs;
  static const std::vector<SignalField<P>> fields{
      flag<P>("read", &P::read),       wide<P>("q", &P::q),       flag<P>("write", &P::write),
      wide<P>("fk", &P::fk),           flag<P>("fkvalid", &P::fkvalid), flag<P>("done", &P::done),
  };
  return fields;
}

inline const std::vector<SignalField<TdesPortInputs>>& tdes_input_fields() {
  using namespace stim_detail;
  using P = TdesPortInputs;
  static const std::vector<SignalField<P>> fields{
      flag<P>("reset_n", &P::reset_n), wide<P>("d", &P::d),         wide<P>("k1", &P::k1),
      wide<P>("k2", &P::k2),           wide<P>("k3", &P::k3),       wide<P>("iv", &P::iv),
      flag<P>("encrypt", &P::encrypt), flag<P>("start", &P::start), flag<P>("endc", &P::endc),
      flag<P>("pt_valid", &P::pt_valid),
  };
  return fields;
}

inline const std::vector<SignalField<TdesPortOutputs>>& tdes_output_fields() {
  using namespace stim_detail;
  using P = TdesPortOutputs;
  static const std::vector<SignalField<P>> fields{
      flag<P>("pt_ready", &P::pt_ready), wide<P>("q", &P::q), flag<P>("write_enable", &P::write_enable),
      flag<P>("done", &P::done),         small<P>("write_error", 3, &P::write_error),
  };
  return fields;
}

template <typename T>
std::vector<T> parse_signal_lines(std::string_view text, const std::vector<SignalField<T>>& fields) {
  std::vector<T> cycles;
  T current{};
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = stim_detail::trim(line);
    if (line.empty()) continue;

    std::uint64_t repeat = 1;
    std::istringstream tokens{std::string(line)};
    std::string tok;
    while (tokens >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0) throw StimulusError(line_no, "expected name=value, got '" + tok + "'");
      const std::string name = tok.substr(0, eq);
      const std::string value = tok.substr(eq + 1);
      if (name == "repeat") {
        const auto v = stim_detail::parse_value(value, 32);
        if (!v) throw StimulusError(line_no, "bad repeat count '" + value + "'");
        repeat = 0;
        for (auto b : *v) repeat = (repeat << 8) | b;
        if (repeat == 0) throw StimulusError(line_no, "repeat count must be at least 1");
        continue;
      }
      const auto it = std::find_if(fields.begin(), fields.end(), [&](const auto& f) { return f.name == name; });
      if (it == fields.end()) throw StimulusError(line_no, "unknown signal '" + name + "'");
      const auto v = stim_detail::parse_value(value, it->width);
      if (!v) throw StimulusError(line_no, "bad hex value '" + value + "' for " + name);
      it->set(current, *v);
    }
    for (std::uint64_t i = 0; i < repeat; ++i) cycles.push_back(current);
  }
  return cycles;
}

// Writes only the signals that changed, folding identical cycles into repeat=.
template <typename T>
std::string format_signal_lines(std::span<const T> cycles, const std::vector<SignalField<T>>& fields) {
  std::ostringstream os;
  T prev{};
  std::size_t i = 0;
  while (i < cycles.size()) {
    std::size_t run = 1;
    while (i + run < cycles.size() && cycles[i + run] == cycles[i]) ++run;
    std::string line;
    for (const auto& f : fields) {
      const Bytes v = f.get(cycles[i]);
      if (v != f.get(prev)) {
        if (!line.empty()) line += ' ';
        line += std::string(f.name) + "=" + stim_detail::format_value(v, f.width);
      }
    }
    if (run > 1 || line.empty()) {
      if (!line.empty()) line += ' ';
      std::ostringstream r;
      r << std::hex << run;
      line += "repeat=" + r.str();
    }
    os << line << '\n';
    prev = cycles[i];
    i += run;
  }
  return os.str();
}

// Full output trace: every signal on every line, prefixed with the cycle.
template <typename T>
std::string format_output_trace(std::span<const T> cycles, const std::vector<SignalField<T>>& fields) {
  std::ostringstream os;
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    os << "cycle=" << std::hex << c << std::dec;
    for (const auto& f : fields) os << ' ' << f.name << '=' << stim_detail::format_value(f.get(cycles[c]), f.width);
    os << '\n';
  }
  return os.str();
}

inline std::vector<PortInputs> parse_aes_stimulus(std::string_view text) {
  return parse_signal_lines(text, aes_input_fields());
}
inline std::vector<TdesPortInputs> parse_tdes_stimulus(std::string_view text) {
  return parse_signal_lines(text, tdes_input_fields());
}
inline std::string format_aes_stimulus(std::span<const PortInputs> cycles) {
  return format_signal_lines(cycles, aes_input_fields());
}
inline std::string format_tdes_stimulus(std::span<const TdesPortInputs> cycles) {
  return format_signal_lines(cycles, tdes_input_fields());
}
inline std::string format_aes_trace(std::span<const PortOutputs> cycles) {
  return format_output_trace(cycles, aes_output_fields());
}
inline std::string format_tdes_trace(std::span<const TdesPortOutputs> cycles) {
  return format_output_trace(cycles, tdes_output_fields());
}

}  // namespace dualcore
