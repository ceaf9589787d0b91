// Copyright 2026 The dualcore Authors
// SPDX-License-Identifier: Apache-2.0

// Signal-level model of the core: the AES port, the separate 3DES port and the
// internal state machine that walks each stream from key loading through data
// processing to the Done pulse. One call to `cycle` is one rising clock edge.
//
// AES stream timeline for a start on cycle s with Nr rounds:
//   s                 Idle, start sampled; mode, keys and IV latched
//   s+1 .. s+Nr+1     LoadKeys, one round key emitted per cycle; FKvalid rises
//                     on the last of these cycles and stays up until Done
//   s+Nr+2 ..         Process: Read = Cen, one 128-bit word consumed per read
//   after EndC        Drain until the last Write, then one cycle of Done
//
// Cen=0 only stops input; blocks already accepted keep moving through the
// lanes. EndC marks the final word of the stream in every AES mode. In GCM the
// tag follows the last data word on Q as one extra write.

#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "dualcore/bytes.hpp"
#include "dualcore/des.hpp"
#include "dualcore/dual_engine.hpp"
#include "dualcore/gf128.hpp"
#include "dualcore/key_schedule.hpp"
#include "dualcore/modes.hpp"

namespace dualcore {

// AES port inputs. Narrow fields are stored in a byte and masked to their
// width whenever the core samples them.
struct PortInputs {
  bool reset_n = true;
  bool cen = false;
  std::uint8_t mode = 0;  // 3 bits
  bool encrypt = true;
  std::uint8_t ks = 0;  // 2 bits
  bool new_iv = false;
  bool cts = false;
  bool start = false;
  Block128 d{};
  Word256 k1{};
  Word256 k2{};
  Block128 iv{};
  std::uint8_t be = 15;  // 4 bits
  bool endc = false;
  bool icg_disable = false;  // accepted, no functional effect

  friend bool operator==(const PortInputs&, const PortInputs&) = default;
};

struct PortOutputs {
  bool read = false;
  Block128 q{};
  bool write = false;
  Word256 fk{};
  bool fkvalid = false;
  bool done = false;

  friend bool operator==(const PortOutputs&, const PortOutputs&) = default;
};

struct TdesPortInputs {
  bool reset_n = true;
  Block64 d{};
  Block64 k1{};
  Block64 k2{};
  Block64 k3{};
  Block64 iv{};
  bool encrypt = true;
  bool start = false;
  bool endc = false;
  bool pt_valid = false;

  friend bool operator==(const TdesPortInputs&, const TdesPortInputs&) = default;
};

struct TdesPortOutputs {
  bool pt_ready = false;
  Block64 q{};
  bool write_enable = false;
  bool done = false;
  std::uint8_t write_error = 0;  // 3 bits, bit i = parity failure of key i+1

  friend bool operator==(const TdesPortOutputs&, const TdesPortOutputs&) = default;
};

enum class CoreState { kIdle, kLoadKeys, kProcess, kDrain, kDone };

inline const char* core_state_name(CoreState s) {
  switch (s) {
    case CoreState::kIdle: return "idle";
    case CoreState::kLoadKeys: return "load_keys";
    case CoreState::kProcess: return "process";
    case CoreState::kDrain: return "drain";
    case CoreState::kDone: return "done";
  }
  return "?";
}

// A protocol problem noticed by the model. The core keeps running.
struct PortDiagnostic {
  std::uint64_t cycle = 0;
  std::string message;

  friend bool operator==(const PortDiagnostic&, const PortDiagnostic&) = default;
};

namespace port_detail {

// EngineJob::tag layout: kind in the low byte, valid output length above it.
enum JobKind : std::uint32_t { kData = 0, kHashKey = 1, kCounterZero = 2, kSteal = 3, kMerge = 4 };

constexpr std::uint32_t make_tag(JobKind kind, std::size_t len) {
  return static_cast<std::uint32_t>(kind) | static_cast<std::uint32_t>(len << 8);
}
constexpr JobKind tag_kind(std::uint32_t tag) { return static_cast<JobKind>(tag & 0xff); }
constexpr std::size_t tag_len(std::uint32_t tag) { return tag >> 8; }

struct Word {
  Block128 data{};
  std::size_t len = kBlockBytes;
  bool new_iv = false;
  bool steal = false;    // XTS: last full block, a partial block follows
  bool partial = false;  // XTS: trailing partial block of a data unit
  Block128 iv{};
};

}  // namespace port_detail

class AesCore {
 public:
  explicit AesCore(const SBoxTables& tables = standard_sbox()) : tables_(&tables) {}

  PortOutputs cycle(const PortInputs& in) {
    PortOutputs out;
    const std::uint64_t now = cycle_++;
    if (!in.reset_n) {
      reset();
      return out;
    }
    bool start_ignored = false;
    if (in.start && state_ != CoreState::kIdle) {
      diag(now, std::string("start ignored in state ") + core_state_name(state_));
      start_ignored = true;
    }

    switch (state_) {
      case CoreState::kIdle:
        if (in.start) begin_stream(in, now);
        break;
      case CoreState::kLoadKeys:
        load_key_cycle();
        break;
      case CoreState::kProcess:
      case CoreState::kDrain:
        process_cycle(in, now, start_ignored, out);
        break;
      case CoreState::kDone:
        out.done = true;
        out.fkvalid = true;
        out.fk = fk_.bus;
        reset();
        return out;
    }
    if (fkvalid_) {
      out.fkvalid = true;
      out.fk = fk_.bus;
    }
    return out;
  }

  void reset() {
    const SBoxTables* tables = tables_;
    const std::uint64_t c = cycle_;
    auto diags = std::move(diagnostics_);
    auto trace = std::move(lane_trace_);
    *this = AesCore(*tables);
    cycle_ = c;
    diagnostics_ = std::move(diags);
    lane_trace_ = std::move(trace);
  }

  CoreState state() const { return state_; }
  std::uint64_t cycle_count() const { return cycle_; }
  const std::optional<ModeConfig>& config() const { return cfg_; }
  const std::vector<PortDiagnostic>& diagnostics() const { return diagnostics_; }
  std::vector<PortDiagnostic> take_diagnostics() {
    std::vector<PortDiagnostic> d;
    d.swap(diagnostics_);
    return d;
  }
  // Lane activity of every Process/Drain cycle, stamped with port cycles.
  const CycleTrace& lane_trace() const { return lane_trace_; }
  const KeyStreamState* key_stream() const { return key_stream_ ? &*key_stream_ : nullptr; }

 private:
  using Word = port_detail::Word;

  void diag(std::uint64_t now, std::string msg) { diagnostics_.push_back({now, std::move(msg)}); }

  void begin_stream(const PortInputs& in, std::uint64_t now) {
    const auto mode = decode_mode(in.mode & 0x7);
    const auto ks = decode_key_size(in.ks & 0x3);
    if (!mode) {
      diag(now, "undefined mode code " + std::to_string(in.mode & 0x7) + "; start ignored");
      return;
    }
    if (!ks) {
      diag(now, "undefined key size code " + std::to_string(in.ks & 0x3) + "; start ignored");
      return;
    }
    ModeConfig cfg;
    cfg.mode = *mode;
    cfg.direction = in.encrypt ? Direction::kEncrypt : Direction::kDecrypt;
    cfg.key1 = AesKey::from_bus(in.k1, *ks);
    if (*mode == Mode::kXts) cfg.key2 = AesKey::from_bus(in.k2, *ks);
    cfg.iv = in.iv;
    cfg_ = cfg;
    key_stream_ = stream_init(cfg.key1, *tables_);
    emitted_keys_.clear();
    state_ = CoreState::kLoadKeys;
  }

  void load_key_cycle() {
    emitted_keys_.push_back(stream_next(*key_stream_));
    if (!key_stream_->exhausted()) return;
    KeySchedule schedule(cfg_->key_size(), std::move(emitted_keys_));
    fk_ = final_round_key(schedule);
    fkvalid_ = true;
    EngineConfig ec{std::move(schedule), lane_direction(*cfg_), cfg_->mode == Mode::kCbc, cfg_->iv};
    engine_.emplace(std::move(ec), *tables_);
    builder_.emplace(*cfg_, *tables_);
    if (cfg_->mode == Mode::kXts) tweak_ = builder_->tweak();
    if (cfg_->mode == Mode::kGcm) {
      push_job(Block128{}, Block128{}, port_detail::make_tag(port_detail::kHashKey, 0));
      push_job(cfg_->iv, Block128{}, port_detail::make_tag(port_detail::kCounterZero, 0));
    }
    state_ = CoreState::kProcess;
  }

  void push_job(const Block128& in, const Block128& post, std::uint32_t tag) {
    EngineJob job;
    job.aes_in = in;
    job.post_xor = post;
    job.index = jobs_issued_++;
    job.tag = tag;
    engine_->push(job);
  }

  void process_cycle(const PortInputs& in, std::uint64_t now, bool start_ignored, PortOutputs& out) {
    if (state_ == CoreState::kProcess && in.cen && !start_ignored) {
      out.read = true;
      accept(in, now);
    }

    CycleRecord rec = engine_->step();
    rec.cycle = now;
    lane_trace_.append(std::move(rec));
    for (const auto& done : engine_->take_completed()) complete(done);
    maybe_emit_tag();

    if (!write_queue_.empty()) {
      out.q = write_queue_.front();
      out.write = true;
      write_queue_.pop_front();
    }
    if (state_ == CoreState::kDrain && stream_finished()) state_ = CoreState::kDone;
  }

  void accept(const PortInputs& in, std::uint64_t now) {
    const Mode mode = cfg_->mode;
    Word w;
    w.new_iv = in.new_iv;
    w.iv = in.iv;
    const std::size_t be_len = static_cast<std::size_t>(in.be & 0x0f) + 1;
    const bool endc = in.endc;
    if (mode == Mode::kCtr || mode == Mode::kGcm) {
      if (endc) w.len = be_len;
    } else if (mode == Mode::kXts) {
      if (expect_partial_) w.len = be_len;
    } else if (endc && be_len != kBlockBytes) {
      diag(now, std::string("Be ignored in ") + std::string(mode_name(mode)) + " mode; final block taken as full");
    }
    if (mode == Mode::kXts && expect_partial_ && be_len == kBlockBytes) {
      diag(now, "block after Cts must be partial (Be < 15)");
    }
    w.data = mask_block(in.d, w.len);
    if (mode == Mode::kXts) {
      if (in.cts && endc) diag(now, "Cts on the final word: no partial block follows");
      if (in.cts && expect_partial_) diag(now, "Cts on a partial block ignored");
      w.partial = expect_partial_;
      w.steal = in.cts && !endc && !expect_partial_;
      expect_partial_ = w.steal;
    }
    if (endc) {
      ended_ = true;
      state_ = CoreState::kDrain;
      if (mode == Mode::kGcm) tag_pending_ = true;
    }
    if (waiting_for_steal()) {
      held_.push_back(w);
    } else {
      dispatch(w);
    }
  }

  bool waiting_for_steal() const { return partial_.has_value(); }

  void dispatch(const Word& w) {
    switch (cfg_->mode) {
      case Mode::kXts: dispatch_xts(w); return;
      case Mode::kGcm:
        gcm_bytes_ += w.len;
        if (cfg_->direction == Direction::kDecrypt) ghash_pending_.push_back(w.data);
        [[fallthrough]];
      default: {
        EngineJob job = builder_->next(w.data);
        job.index = jobs_issued_++;
        job.tag = port_detail::make_tag(port_detail::kData, w.len);
        engine_->push(job);
        ++data_jobs_;
        return;
      }
    }
  }

  void dispatch_xts(const Word& w) {
    const bool enc = cfg_->direction == Direction::kEncrypt;
    if (reload_tweak_) {
      tweak_ = Aes(*cfg_->key2, *tables_).encrypt(w.iv);
      reload_tweak_ = false;
    }
    if (w.partial) {
      // Trailing partial block of the data unit; merged once the stolen block is back.
      partial_ = w;
      try_merge();
    } else if (w.steal) {
      const Block128 next = xts_mul_alpha(tweak_);
      const Block128 first = enc ? tweak_ : next;
      second_tweak_ = enc ? next : tweak_;
      push_job(xor_blocks(w.data, first), first, port_detail::make_tag(port_detail::kSteal, kBlockBytes));
      ++data_jobs_;
      tweak_ = next;
    } else {
      push_job(xor_blocks(w.data, tweak_), tweak_, port_detail::make_tag(port_detail::kData, kBlockBytes));
      ++data_jobs_;
      tweak_ = xts_mul_alpha(tweak_);
    }
    if (w.new_iv) reload_tweak_ = true;
  }

  void try_merge() {
    if (!partial_ || !stolen_) return;
    const std::size_t tail = partial_->len;
    Block128 merged = *stolen_;
    std::copy_n(partial_->data.begin(), tail, merged.begin());
    push_job(xor_blocks(merged, second_tweak_), second_tweak_, port_detail::make_tag(port_detail::kMerge, tail));
    ++data_jobs_;
    steal_tail_ = mask_block(*stolen_, tail);
    partial_.reset();
    stolen_.reset();
    while (!held_.empty() && !waiting_for_steal()) {
      const Word w = held_.front();
      held_.pop_front();
      dispatch(w);
    }
  }

  void complete(const EngineOutput& o) {
    using namespace port_detail;
    switch (tag_kind(o.tag)) {
      case kHashKey: ghash_.emplace(o.data); return;
      case kCounterZero: ej0_ = o.data; return;
      case kSteal:
        ++data_done_;
        stolen_ = o.data;
        try_merge();
        return;
      case kMerge:
        ++data_done_;
        write_queue_.push_back(o.data);
        write_queue_.push_back(steal_tail_);
        return;
      case kData: {
        ++data_done_;
        const Block128 q = mask_block(o.data, tag_len(o.tag));
        if (ghash_) {
          if (cfg_->direction == Direction::kEncrypt) {
            ghash_->update_block(q);
          } else {
            ghash_->update_block(ghash_pending_.front());
            ghash_pending_.pop_front();
          }
        }
        write_queue_.push_back(q);
        return;
      }
    }
  }

  void maybe_emit_tag() {
    if (!tag_pending_ || data_done_ != data_jobs_ || !ej0_ || !ghash_) return;
    ghash_->update_block(mode_detail::gcm_length_block(0, gcm_bytes_));
    write_queue_.push_back(xor_blocks(ghash_->digest(), *ej0_));
    tag_pending_ = false;
  }

  bool stream_finished() const {
    return ended_ && engine_->idle() && write_queue_.empty() && held_.empty() && !partial_ && !tag_pending_;
  }

  const SBoxTables* tables_;
  CoreState state_ = CoreState::kIdle;
  std::uint64_t cycle_ = 0;
  std::optional<ModeConfig> cfg_;
  std::optional<KeyStreamState> key_stream_;
  std::vector<RoundKey> emitted_keys_;
  FinalKey fk_{};
  bool fkvalid_ = false;
  std::optional<DualEngine> engine_;
  std::optional<BlockJobBuilder> builder_;
  std::size_t jobs_issued_ = 0;
  std::size_t data_jobs_ = 0;
  std::size_t data_done_ = 0;
  bool ended_ = false;
  std::deque<Block128> write_queue_;
  std::deque<Word> held_;

  // GCM
  std::optional<Ghash> ghash_;
  std::optional<Block128> ej0_;
  std::deque<Block128> ghash_pending_;
  std::size_t gcm_bytes_ = 0;
  bool tag_pending_ = false;

  // XTS
  Block128 tweak_{};
  Block128 second_tweak_{};
  bool reload_tweak_ = false;
  bool expect_partial_ = false;
  std::optional<Word> partial_;
  std::optional<Block128> stolen_;
  Block128 steal_tail_{};

  std::vector<PortDiagnostic> diagnostics_;
  CycleTrace lane_trace_;
};

// 3DES port. Start latches the three keys and reports their parity on
// Write_error from the same cycle until Done; processing is not blocked by a
// parity failure. Pt_ready is high when the issue slot is free, a word moves
// on a cycle with Pt_valid and Pt_ready both high, and its result appears on Q
// with Write_enable 48 cycles later. Iv is latched but unused: the pipelined
// datapath runs ECB.
class TdesCore {
 public:
  TdesPortOutputs cycle(const TdesPortInputs& in) {
    TdesPortOutputs out;
    const std::uint64_t now = cycle_++;
    if (!in.reset_n) {
      reset();
      return out;
    }
    if (in.start && state_ != CoreState::kIdle) {
      diagnostics_.push_back({now, std::string("start ignored in state ") + core_state_name(state_)});
    }
    switch (state_) {
      case CoreState::kIdle:
        if (in.start) {
          const DesKey64 k1{in.k1}, k2{in.k2}, k3{in.k3};
          cipher_.emplace(k1, k2, k3);
          direction_ = in.encrypt ? Direction::kEncrypt : Direction::kDecrypt;
          iv_ = in.iv;
          write_error_ = tdes_parity_errors(k1, k2, k3);
          state_ = CoreState::kProcess;
          out.write_error = write_error_;
        }
        return out;
      case CoreState::kDone:
        out.done = true;
        out.write_error = write_error_;
        state_ = CoreState::kIdle;
        write_error_ = 0;
        return out;
      default: break;
    }

    out.write_error = write_error_;
    if (state_ == CoreState::kProcess) {
      out.pt_ready = !last_issue_ || now - *last_issue_ >= TdesPipelineTiming::kIssueInterval;
      if (out.pt_ready && in.pt_valid) {
        in_flight_.push_back({now + TdesPipelineTiming::kLatency, cipher_->process(in.d, direction_)});
        last_issue_ = now;
        if (in.endc) state_ = CoreState::kDrain;
      }
    }
    if (!in_flight_.empty() && in_flight_.front().due == now) {
      out.q = in_flight_.front().data;
      out.write_enable = true;
      in_flight_.pop_front();
    }
    if (state_ == CoreState::kDrain && in_flight_.empty()) state_ = CoreState::kDone;
    return out;
  }

  void reset() {
    const std::uint64_t c = cycle_;
    auto diags = std::move(diagnostics_);
    *this = TdesCore();
    cycle_ = c;
    diagnostics_ = std::move(diags);
  }

  CoreState state() const { return state_; }
  std::uint64_t cycle_count() const { return cycle_; }
  const Block64& latched_iv() const { return iv_; }
  const std::vector<PortDiagnostic>& diagnostics() const { return diagnostics_; }
  std::vector<PortDiagnostic> take_diagnostics() {
    std::vector<PortDiagnostic> d;
    d.swap(diagnostics_);
    return d;
  }

 private:
  struct InFlight {
    std::uint64_t due;
    Block64 data;
  };

  CoreState state_ = CoreState::kIdle;
  std::uint64_t cycle_ = 0;
  std::optional<TripleDes> cipher_;
  Direction direction_ = Direction::kEncrypt;
  Block64 iv_{};
  std::uint8_t write_error_ = 0;
  std::optional<std::uint64_t> last_issue_;
  std::deque<InFlight> in_flight_;
  std::vector<PortDiagnostic> diagnostics_;
};

using CoreFsm = AesCore;

inline AesCore port_reset(const SBoxTables& tables = standard_sbox()) { return AesCore(tables); }
inline TdesCore tdes_port_reset() { return TdesCore(); }
inline PortOutputs port_cycle(AesCore& fsm, const PortInputs& in) { return fsm.cycle(in); }
inline TdesPortOutputs tdes_port_cycle(TdesCore& fsm, const TdesPortInputs& in) { return fsm.cycle(in); }

template <typename Outputs>
struct TransactionResult {
  std::vector<Outputs> outputs;
  std::vector<PortDiagnostic> diagnostics;

  friend bool operator==(const TransactionResult&, const TransactionResult&) = default;
};

inline TransactionResult<PortOutputs> run_transaction(AesCore& fsm, std::span<const PortInputs> stimulus) {
  TransactionResult<PortOutputs> r;
  r.outputs.reserve(stimulus.size());
  for (const auto& in : stimulus) r.outputs.push_back(fsm.cycle(in));
  r.diagnostics = fsm.take_diagnostics();
  return r;
}

inline TransactionResult<TdesPortOutputs> run_transaction(TdesCore& fsm, std::span<const TdesPortInputs> stimulus) {
  TransactionResult<TdesPortOutputs> r;
  r.outputs.reserve(stimulus.size());
  for (const auto& in : stimulus) r.outputs.push_back(fsm.cycle(in));
  r.diagnostics = fsm.take_diagnostics();
  return r;
}

// ---------------------------------------------------------------------------
// Stimulus construction and output collection.

// One XTS data unit; other modes use a single unit. The first unit runs under
// ModeConfig::iv, later units under their own `iv`.
struct DataUnit {
  Bytes data;
  Block128 iv{};
};

struct AesTransaction {
  ModeConfig cfg;
  std::vector<DataUnit> units;

  static AesTransaction single(const ModeConfig& cfg, Bytes data) { return {cfg, {DataUnit{std::move(data), cfg.iv}}}; }

  std::size_t word_count() const {
    std::size_t n = 0;
    for (const auto& u : units) n += (u.data.size() + kBlockBytes - 1) / kBlockBytes;
    return n;
  }
};

struct StimulusOptions {
  // Number of Cen=0 cycles to insert before each data word; missing entries are 0.
  std::vector<int> bubbles;
  // Idle cycles appended after EndC, on top of the computed drain budget.
  int tail_cycles = 0;
};

// Generous bound on the cycles from EndC to Done.
inline int drain_budget(const AesTransaction& t) {
  const int nr = num_rounds(t.cfg.key_size());
  return static_cast<int>(t.word_count() + 4) * nr + 8;
}

inline std::vector<PortInputs> build_stimulus(const AesTransaction& t, const StimulusOptions& opt = {}) {
  t.cfg.validate();
  if (t.units.empty() || t.word_count() == 0) throw DataError("a port transaction needs at least one data word");
  const Mode mode = t.cfg.mode;
  for (const auto& u : t.units) {
    const std::size_t tail = u.data.size() % kBlockBytes;
    if (mode == Mode::kXts && u.data.size() < kBlockBytes) throw DataError("XTS data unit shorter than 128 bits");
    if ((mode == Mode::kEcb || mode == Mode::kCbc) && tail != 0) {
      throw DataError("ECB/CBC data must be a multiple of 128 bits");
    }
  }
  if (mode != Mode::kXts && t.units.size() != 1) throw ConfigError("only XTS streams carry several data units");
  if ((mode == Mode::kCtr || mode == Mode::kGcm) && t.units[0].data.empty()) throw DataError("empty stream");

  std::vector<PortInputs> stim;
  PortInputs base;
  base.mode = encode_mode(mode);
  base.encrypt = t.cfg.direction == Direction::kEncrypt;
  base.ks = encode_key_size(t.cfg.key_size());
  base.k1 = t.cfg.key1.to_bus();
  if (t.cfg.key2) base.k2 = t.cfg.key2->to_bus();
  base.iv = t.cfg.iv;

  PortInputs start = base;
  start.start = true;
  stim.push_back(start);
  for (int i = 0; i < num_rounds(t.cfg.key_size()) + 1; ++i) stim.push_back(base);

  std::size_t word = 0;
  const std::size_t total = t.word_count();
  for (std::size_t ui = 0; ui < t.units.size(); ++ui) {
    const auto& unit = t.units[ui];
    const std::size_t n = unit.data.size();
    const std::size_t blocks = (n + kBlockBytes - 1) / kBlockBytes;
    const std::size_t tail = n % kBlockBytes;
    for (std::size_t b = 0; b < blocks; ++b, ++word) {
      PortInputs in = base;
      if (ui > 0) in.iv = unit.iv;
      const int bubbles = word < opt.bubbles.size() ? opt.bubbles[word] : 0;
      for (int k = 0; k < bubbles; ++k) stim.push_back(in);
      in.cen = true;
      in.d = load_block(unit.data, b * kBlockBytes);
      const bool last_of_unit = b + 1 == blocks;
      const bool last = word + 1 == total;
      if (last_of_unit && tail != 0) in.be = static_cast<std::uint8_t>(tail - 1);
      if (mode == Mode::kXts) {
        in.cts = tail != 0 && b + 2 == blocks;
        in.new_iv = last_of_unit;
      }
      in.endc = last;
      stim.push_back(in);
    }
  }
  PortInputs idle = base;
  idle.iv = t.units.back().iv;
  if (t.units.size() == 1) idle.iv = t.cfg.iv;
  for (int i = 0; i < drain_budget(t) + opt.tail_cycles; ++i) stim.push_back(idle);
  return stim;
}

// The bytes the port is expected to write: each data word's result padded to
// 128 bits (octets past Be read as zero), plus the GCM tag.
inline Bytes expected_port_output(const AesTransaction& t, const SBoxTables& tables = standard_sbox()) {
  Bytes out;
  auto append_padded = [&out](const Bytes& b) {
    out.insert(out.end(), b.begin(), b.end());
    out.resize((out.size() + kBlockBytes - 1) / kBlockBytes * kBlockBytes, 0);
  };
  const ModeConfig& cfg = t.cfg;
  switch (cfg.mode) {
    case Mode::kGcm: {
      const GcmResult r = gcm_process(t.units[0].data, cfg, tables);
      append_padded(r.data);
      out.insert(out.end(), r.tag.begin(), r.tag.end());
      break;
    }
    case Mode::kXts:
      for (std::size_t i = 0; i < t.units.size(); ++i) {
        ModeConfig unit_cfg = cfg;
        if (i > 0) unit_cfg.iv = t.units[i].iv;
        append_padded(xts_process(t.units[i].data, unit_cfg, tables));
      }
      break;
    default: append_padded(process_buffer(t.units[0].data, cfg, tables)); break;
  }
  return out;
}

inline Bytes collect_q(std::span<const PortOutputs> outputs) {
  Bytes q;
  for (const auto& o : outputs) {
    if (o.write) q.insert(q.end(), o.q.begin(), o.q.end());
  }
  return q;
}

// 3DES stimulus: start, then one word per Pt_ready with Pt_valid held high.
struct TdesTransaction {
  DesKey64 k1, k2, k3;
  Direction direction = Direction::kEncrypt;
  Block64 iv{};
  Bytes data;  // multiple of 64 bits
};

inline std::vector<TdesPortInputs> build_tdes_stimulus(const TdesTransaction& t) {
  if (t.data.empty() || t.data.size() % kTdesBlockBytes != 0) {
    throw DataError("3DES data must be a non-empty multiple of 64 bits");
  }
  TdesPortInputs base;
  base.k1 = t.k1.bytes;
  base.k2 = t.k2.bytes;
  base.k3 = t.k3.bytes;
  base.iv = t.iv;
  base.encrypt = t.direction == Direction::kEncrypt;
  std::vector<TdesPortInputs> stim;
  TdesPortInputs start = base;
  start.start = true;
  stim.push_back(start);
  const std::size_t blocks = t.data.size() / kTdesBlockBytes;
  for (std::size_t b = 0; b < blocks; ++b) {
    TdesPortInputs in = base;
    in.pt_valid = true;
    in.d = load_block64(t.data, b * kTdesBlockBytes);
    in.endc = b + 1 == blocks;
    // The slot opens every kIssueInterval cycles; hold the word for that long.
    for (int k = 0; k < TdesPipelineTiming::kIssueInterval; ++k) stim.push_back(in);
  }
  for (int i = 0; i < TdesPipelineTiming::kLatency + 4; ++i) stim.push_back(base);
  return stim;
}

inline Bytes collect_q(std::span<const TdesPortOutputs> outputs) {
  Bytes q;
  for (const auto& o : outputs) {
    if (o.write_enable) q.insert(q.end(), o.q.begin(), o.q.end());
  }
  return q;
}

}  // namespace dualcore
