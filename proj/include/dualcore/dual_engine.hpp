// Copyright 2026 The dualcore Authors
// SPDX-License-Identifier: Apache-2.0

// Cycle-accurate model of the two AES lanes and their control.
//
// Each lane executes one AES round per clock, so a block occupies a lane for
// Nr cycles (10/12/14). Lane 1 is loaded `stagger` = Nr/2 cycles after lane 0,
// after which the lanes alternate and one block leaves the output multiplexer
// every `stagger` cycles. CBC is stateful and runs on lane 0 alone.
//
// Timing convention: a block loaded on cycle t has its initial AddRoundKey
// applied on load, performs round k during cycle t+k-1 and is emitted on cycle
// t+Nr. An emit and a new load may share a cycle on the same lane.

#pragma once

#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dualcore/aes.hpp"
#include "dualcore/bytes.hpp"
#include "dualcore/modes.hpp"

namespace dualcore {

// Work item for one lane. The chain flag implements CBC encryption: the chain
// register is XORed into the input at load and replaced by the output at emit,
// which is valid only because CBC keeps to a single serial lane.
struct EngineJob {
  Block128 aes_in{};
  Block128 post_xor{};
  bool chain = false;
  std::size_t index = 0;
  std::uint32_t tag = 0;  // owner-defined
};

struct EngineOutput {
  std::size_t index = 0;
  Block128 data{};
  std::uint64_t cycle = 0;
  std::uint32_t tag = 0;
};

struct LaneState {
  bool busy = false;
  AesState state;
  EngineJob job;
  int rounds_done = 0;
  int rounds_total = 0;
  std::uint64_t load_cycle = 0;
};

struct CycleRecord {
  std::uint64_t cycle = 0;
  std::string lane0;
  std::string lane1;
  std::optional<std::size_t> in_idx;
  std::optional<std::size_t> out_idx;

  friend bool operator==(const CycleRecord&, const CycleRecord&) = default;
};

// Append-only per-cycle log; serializes as `cycle,lane0_event,lane1_event,in_idx,out_idx`.
class CycleTrace {
 public:
  void append(CycleRecord r) { records_.push_back(std::move(r)); }
  const std::vector<CycleRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  std::string to_csv(bool header = true) const {
    std::ostringstream os;
    if (header) os << "cycle,lane0_event,lane1_event,in_idx,out_idx\n";
    for (const auto& r : records_) {
      os << r.cycle << ',' << r.lane0 << ',' << r.lane1 << ',';
      if (r.in_idx) os << *r.in_idx;
      os << ',';
      if (r.out_idx) os << *r.out_idx;
      os << '\n';
    }
    return os.str();
  }

  friend bool operator==(const CycleTrace&, const CycleTrace&) = default;

 private:
  std::vector<CycleRecord> records_;
};

struct EngineConfig {
  KeySchedule schedule;
  Direction cipher_direction = Direction::kEncrypt;
  bool single_lane = false;
  Block128 chain_init{};
};

class DualEngine {
 public:
  explicit DualEngine(EngineConfig cfg, const SBoxTables& tables = standard_sbox())
      : cfg_(std::move(cfg)), tables_(&tables), chain_(cfg_.chain_init) {
    rounds_total_ = cfg_.schedule.rounds();
    stagger_ = (rounds_total_ + 1) / 2;
    for (auto& lane : lanes_) lane.rounds_total = rounds_total_;
  }

  void push(const EngineJob& job) { pending_.push_back(job); }

  // Advances one clock and returns what happened on it.
  CycleRecord step() {
    CycleRecord rec;
    rec.cycle = cycle_;
    std::array<std::string, 2> events;

    for (std::size_t i = 0; i < lanes_.size(); ++i) {
      LaneState& lane = lanes_[i];
      if (!lane.busy) continue;
      if (lane.rounds_done == lane.rounds_total) {
        emit(lane);
        rec.out_idx = lane.job.index;
        events[i] = "emit";
      } else {
        events[i] = "r" + std::to_string(lane.rounds_done);
      }
    }

    if (auto lane_id = lane_for_load()) {
      LaneState& lane = lanes_[*lane_id];
      load(lane, pending_.front());
      pending_.pop_front();
      rec.in_idx = lane.job.index;
      events[*lane_id] = events[*lane_id].empty() ? "load" : events[*lane_id] + "+load";
    }

    for (auto& lane : lanes_) {
      if (!lane.busy) continue;
      ++lane.rounds_done;
      lane.state = cfg_.cipher_direction == Direction::kEncrypt
                       ? aes_encrypt_round(lane.state, cfg_.schedule, lane.rounds_done, *tables_)
                       : aes_decrypt_round(lane.state, cfg_.schedule, lane.rounds_done, *tables_);
    }

    rec.lane0 = std::move(events[0]);
    rec.lane1 = std::move(events[1]);
    ++cycle_;
    return rec;
  }

  bool idle() const { return pending_.empty() && !lanes_[0].busy && !lanes_[1].busy; }

  std::vector<EngineOutput> take_completed() {
    std::vector<EngineOutput> out;
    out.swap(completed_);
    return out;
  }
  const std::vector<EngineOutput>& completed() const { return completed_; }

  int stagger() const { return stagger_; }
  int rounds_total() const { return rounds_total_; }
  bool single_lane() const { return cfg_.single_lane; }
  std::uint64_t cycle() const { return cycle_; }
  std::size_t pending() const { return pending_.size(); }
  const LaneState& lane(int i) const { return lanes_[static_cast<std::size_t>(i)]; }
  const KeySchedule& schedule() const { return cfg_.schedule; }

 private:
  std::optional<std::size_t> lane_for_load() const {
    if (pending_.empty()) return std::nullopt;
    if (cfg_.single_lane) return lanes_[0].busy ? std::nullopt : std::optional<std::size_t>(0);
    if (last_load_ && cycle_ - *last_load_ < static_cast<std::uint64_t>(stagger_)) return std::nullopt;
    if (!lanes_[0].busy) return 0;
    if (!lanes_[1].busy) return 1;
    return std::nullopt;
  }

  void load(LaneState& lane, const EngineJob& job) {
    lane.busy = true;
    lane.job = job;
    lane.rounds_done = 0;
    lane.load_cycle = cycle_;
    Block128 in = job.aes_in;
    if (job.chain) xor_into(in, chain_);
    lane.state = cfg_.cipher_direction == Direction::kEncrypt ? aes_encrypt_initial(in, cfg_.schedule)
                                                              : aes_decrypt_initial(in, cfg_.schedule);
    last_load_ = cycle_;
  }

  void emit(LaneState& lane) {
    EngineOutput out;
    out.index = lane.job.index;
    out.tag = lane.job.tag;
    out.cycle = cycle_;
    out.data = xor_blocks(lane.state.to_block(), lane.job.post_xor);
    if (lane.job.chain) chain_ = out.data;
    completed_.push_back(out);
    lane.busy = false;
  }

  EngineConfig cfg_;
  const SBoxTables* tables_;
  Block128 chain_;
  int rounds_total_ = 0;
  int stagger_ = 0;
  std::array<LaneState, 2> lanes_{};
  std::deque<EngineJob> pending_;
  std::vector<EngineOutput> completed_;
  std::optional<std::uint64_t> last_load_;
  std::uint64_t cycle_ = 0;
};

// Lanes run the forward cipher for CTR and GCM regardless of direction.
inline Direction lane_direction(const ModeConfig& cfg) {
  return (cfg.mode == Mode::kCtr || cfg.mode == Mode::kGcm) ? Direction::kEncrypt : cfg.direction;
}

inline DualEngine engine_new(const ModeConfig& cfg, const SBoxTables& tables = standard_sbox()) {
  cfg.validate();
  EngineConfig ec{expand_key(cfg.key1, tables), lane_direction(cfg), cfg.mode == Mode::kCbc, cfg.iv};
  return DualEngine(std::move(ec), tables);
}

inline CycleRecord engine_step(DualEngine& engine) { return engine.step(); }

// Turns full 128-bit blocks into lane jobs for each mode.
class BlockJobBuilder {
 public:
  explicit BlockJobBuilder(const ModeConfig& cfg, const SBoxTables& tables = standard_sbox())
      : mode_(cfg.mode), direction_(cfg.direction), chain_(cfg.iv) {
    switch (cfg.mode) {
      case Mode::kCtr: counter_ = cfg.iv; break;
      case Mode::kGcm: counter_ = inc32(cfg.iv); break;
      case Mode::kXts: tweak_ = Aes(*cfg.key2, tables).encrypt(cfg.iv); break;
      default: break;
    }
  }

  EngineJob next(const Block128& in) {
    EngineJob job;
    job.index = index_++;
    switch (mode_) {
      case Mode::kEcb: job.aes_in = in; break;
      case Mode::kCbc:
        job.aes_in = in;
        if (direction_ == Direction::kEncrypt) {
          job.chain = true;
        } else {
          job.post_xor = chain_;
          chain_ = in;
        }
        break;
      case Mode::kCtr:
      case Mode::kGcm:
        job.aes_in = counter_;
        job.post_xor = in;
        counter_ = inc32(counter_);
        break;
      case Mode::kXts:
        job.aes_in = xor_blocks(in, tweak_);
        job.post_xor = tweak_;
        tweak_ = xts_mul_alpha(tweak_);
        break;
    }
    return job;
  }

  const Block128& counter() const { return counter_; }
  const Block128& tweak() const { return tweak_; }
  void set_tweak(const Block128& t) { tweak_ = t; }
  std::size_t issued() const { return index_; }

 private:
  Mode mode_;
  Direction direction_;
  Block128 chain_;
  Block128 counter_{};
  Block128 tweak_{};
  std::size_t index_ = 0;
};

struct StreamResult {
  std::vector<Block128> outputs;
  std::uint64_t total_cycles = 0;
  CycleTrace trace;
};

// Feeds a stream of whole blocks through the lanes until the last one leaves.
inline StreamResult run_stream(std::span<const Block128> blocks, const ModeConfig& cfg,
                               const SBoxTables& tables = standard_sbox()) {
  StreamResult result;
  if (blocks.empty()) return result;
  DualEngine engine = engine_new(cfg, tables);
  BlockJobBuilder builder(cfg, tables);
  for (const auto& b : blocks) engine.push(builder.next(b));
  while (!engine.idle()) result.trace.append(engine.step());
  for (const auto& out : engine.take_completed()) {
    result.outputs.push_back(out.data);
    result.total_cycles = out.cycle;
  }
  return result;
}

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t n, std::int64_t d) {
    const std::int64_t g = std::gcd(n, d);
    return {n / g, d / g};
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend Rational operator/(Rational a, Rational b) { return make(a.num * b.den, a.den * b.num); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

// Steady-state issue rate: one block per stagger cycles on two lanes, one per
// Nr cycles on the lone CBC lane.
inline Rational effective_blocks_per_cycle(Mode mode, KeySize ks) {
  const int rounds = num_rounds(ks);
  return is_dual_lane(mode) ? Rational::make(1, (rounds + 1) / 2) : Rational::make(1, rounds);
}

inline Rational effective_blocks_per_cycle(const ModeConfig& cfg) {
  return effective_blocks_per_cycle(cfg.mode, cfg.key_size());
}

}  // namespace dualcore
