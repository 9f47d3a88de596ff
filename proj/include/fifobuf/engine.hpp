#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fifobuf/policy.hpp"
#include "fifobuf/trace.hpp"

namespace fifobuf {

struct RunOptions {
  bool record_events = false;
  bool record_occupancy = false;
  // Verify capacity, conservation, per-phase selection limits and the
  // push-out work reduction on every slot; violations throw std::logic_error.
  bool check_invariants = true;
};

struct PushOutEvent {
  PacketId victim;
  PacketId incoming;

  bool operator==(const PushOutEvent&) const = default;
};

struct SlotEvents {
  int slot = 0;
  std::vector<PacketId> admitted;
  std::vector<PacketId> dropped_on_arrival;
  std::vector<PushOutEvent> pushed_out;
  std::vector<PacketId> processed;
  std::vector<PacketId> transmitted;
  // Buffer contents (ids, HOL first) and their residuals after transmission.
  std::vector<PacketId> buffer_ids;
  std::vector<int> buffer_residuals;

  bool operator==(const SlotEvents&) const = default;
};

struct SimulationResult {
  std::string policy;
  int buffer = 0;
  int cores = 0;
  int final_slot = 0;
  long long total_packets = 0;
  long long transmitted_count = 0;
  long long dropped_count = 0;
  long long pushout_count = 0;
  long long admitted_count = 0;
  long long remaining = 0;
  // Admission order and delivery order, by packet id (recorded with events).
  std::vector<PacketId> admission_order;
  std::vector<PacketId> delivery_order;
  std::vector<SlotEvents> events;
  std::vector<int> occupancy;  // after the transmission phase of each slot
};

/// Runs `trace` against `policy` on a buffer of `buffer` slots served by
/// `cores` processors. Packet ids are the arrival indices in the trace.
/// Slots run from 1 until the trace is exhausted and the buffer is empty.
SimulationResult run(const Trace& trace, Policy& policy, int buffer, int cores,
                     const RunOptions& options = {});
SimulationResult run(const Trace& trace, PolicyId policy, int buffer, int cores,
                     const RunOptions& options = {});

/// Transmission slots of the run, one entry per transmitted packet (needs
/// record_events).
std::vector<int> transmission_slots(const SimulationResult& result);

/// Per-period transmission counts for periods [1 + j*len, (j+1)*len].
std::vector<long long> per_period_counts(const SimulationResult& result, int period_length,
                                         int periods);

}  // namespace fifobuf
