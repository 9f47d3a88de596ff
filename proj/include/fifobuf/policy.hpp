#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "fifobuf/buffer.hpp"

namespace fifobuf {

enum class PolicyId { npo, po, lpo, lpo_p, srpt };

std::string_view to_string(PolicyId id);
/// Parses the CLI spelling ("npo", "po", "lpo", "lpo_p", "srpt").
std::optional<PolicyId> parse_policy(std::string_view name);
const std::vector<PolicyId>& all_policies();
/// True for the policies that deliver packets in admission order.
bool is_fifo(PolicyId id);

struct AdmissionDecision {
  enum class Kind { accept, drop, push_out };

  Kind kind = Kind::drop;
  PacketId victim = -1;  // meaningful only for push_out

  static AdmissionDecision accept() { return {Kind::accept, -1}; }
  static AdmissionDecision drop() { return {Kind::drop, -1}; }
  static AdmissionDecision push_out(PacketId victim) { return {Kind::push_out, victim}; }

  bool operator==(const AdmissionDecision&) const = default;
};

/// Which zero-residual packets may leave in the transmission phase.
enum class TransmitGate { open, closed, marked_only };

struct ProcessingPlan {
  std::vector<PacketId> selected;
  TransmitGate gate = TransmitGate::open;
};

/// Lazy push-out phases: Fill drives residuals down to one without
/// transmitting; Drain transmits the marked packets.
struct LpoMode {
  enum class Phase { fill, drain };

  Phase phase = Phase::fill;
  int marked = 0;  // packets marked when the current drain began

  static LpoMode fill() { return {Phase::fill, 0}; }
  static LpoMode drain(int m) { return {Phase::drain, m}; }
  bool draining() const { return phase == Phase::drain; }

  bool operator==(const LpoMode&) const = default;
};

struct LpoStep {
  ProcessingPlan plan;
  LpoMode next_mode;
  bool mark_all = false;  // the caller marks every buffered packet before processing
};

// Admission rules. All are pure functions of the buffer and the arrival.
AdmissionDecision npo_on_arrival(const BufferState& state, const Packet& p);
AdmissionDecision po_on_arrival(const BufferState& state, const Packet& p);
AdmissionDecision lpo_on_arrival(const BufferState& state, const Packet& p);
AdmissionDecision lpo_p_on_arrival(const BufferState& state, const Packet& p,
                                   std::span<const PacketId> in_process);
AdmissionDecision srpt_on_arrival(const BufferState& state, const Packet& p);

// Processing selection.
ProcessingPlan fifo_select_processing(const BufferState& state, int cores);
inline ProcessingPlan po_select_processing(const BufferState& state, int cores) {
  return fifo_select_processing(state, cores);
}
LpoStep lpo_select_processing(const BufferState& state, LpoMode mode, int cores);
ProcessingPlan srpt_select_processing(const BufferState& state, int cores);

/// Stateful adapter the engine drives once per arrival and once per
/// processing phase. Implementations delegate to the pure rules above.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual std::string name() const = 0;
  /// Packets are delivered in admission order.
  virtual bool fifo() const { return true; }
  virtual AdmissionDecision on_arrival(const BufferState& state, const Packet& p) = 0;
  /// May set Packet::marked on buffered packets.
  virtual ProcessingPlan plan_processing(BufferState& state, int cores) = 0;
};

std::unique_ptr<Policy> make_policy(PolicyId id);

class NpoPolicy final : public Policy {
 public:
  std::string name() const override { return "npo"; }
  AdmissionDecision on_arrival(const BufferState& state, const Packet& p) override {
    return npo_on_arrival(state, p);
  }
  ProcessingPlan plan_processing(BufferState& state, int cores) override {
    return fifo_select_processing(state, cores);
  }
};

class PoPolicy final : public Policy {
 public:
  std::string name() const override { return "po"; }
  AdmissionDecision on_arrival(const BufferState& state, const Packet& p) override {
    return po_on_arrival(state, p);
  }
  ProcessingPlan plan_processing(BufferState& state, int cores) override {
    return fifo_select_processing(state, cores);
  }
};

class LpoPolicy : public Policy {
 public:
  std::string name() const override { return "lpo"; }
  AdmissionDecision on_arrival(const BufferState& state, const Packet& p) override {
    return lpo_on_arrival(state, p);
  }
  ProcessingPlan plan_processing(BufferState& state, int cores) override;
  LpoMode mode() const { return mode_; }

 private:
  LpoMode mode_ = LpoMode::fill();
};

/// Lazy push-out that never evicts a packet selected in the most recent
/// processing phase.
class LpoPPolicy final : public LpoPolicy {
 public:
  std::string name() const override { return "lpo_p"; }
  AdmissionDecision on_arrival(const BufferState& state, const Packet& p) override;
  ProcessingPlan plan_processing(BufferState& state, int cores) override;

 private:
  std::vector<PacketId> in_process_;
};

/// Shortest-remaining-work-first push-out reference. Not order constrained.
class SrptPolicy final : public Policy {
 public:
  std::string name() const override { return "srpt"; }
  bool fifo() const override { return false; }
  AdmissionDecision on_arrival(const BufferState& state, const Packet& p) override {
    return srpt_on_arrival(state, p);
  }
  ProcessingPlan plan_processing(BufferState& state, int cores) override {
    return srpt_select_processing(state, cores);
  }
};

/// Admits packet i (in trace order) iff accept_mask[i] and there is room;
/// processes FIFO and work-conserving. Replays offline schedules.
class ScriptedPolicy final : public Policy {
 public:
  explicit ScriptedPolicy(std::vector<bool> accept_mask) : mask_(std::move(accept_mask)) {}
  std::string name() const override { return "scripted"; }
  AdmissionDecision on_arrival(const BufferState& state, const Packet& p) override;
  ProcessingPlan plan_processing(BufferState& state, int cores) override {
    return fifo_select_processing(state, cores);
  }

 private:
  std::vector<bool> mask_;
};

}  // namespace fifobuf
