#include "fifobuf/engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fifobuf {

namespace {

void fail(const std::string& what, int slot) {
  throw std::logic_error("slot " + std::to_string(slot) + ": " + what);
}

}  // namespace

SimulationResult run(const Trace& trace, Policy& policy, int buffer, int cores,
                     const RunOptions& options) {
  if (buffer < 1) throw std::invalid_argument("buffer size must be >= 1");
  if (cores < 1) throw std::invalid_argument("core count must be >= 1");
  require_valid(trace);

  SimulationResult result;
  result.policy = policy.name();
  result.buffer = buffer;
  result.cores = cores;
  result.total_packets = static_cast<long long>(trace.size());

  BufferState state(buffer);
  const auto& arrivals = trace.arrivals;
  std::size_t next = 0;
  int slot = 0;

  while (next < arrivals.size() || !state.empty()) {
    ++slot;
    if (state.empty() && arrivals[next].slot > slot) {
      // Nothing buffered and nothing arriving: jump to the next arrival.
      if (options.record_occupancy) result.occupancy.resize(arrivals[next].slot - 1, 0);
      slot = arrivals[next].slot;
    }

    SlotEvents ev;
    ev.slot = slot;

    // (i) arrivals, offered one at a time in trace order.
    for (; next < arrivals.size() && arrivals[next].slot == slot; ++next) {
      const Packet p = Packet::arriving(static_cast<PacketId>(next), slot, arrivals[next].work);
      const AdmissionDecision d = policy.on_arrival(state, p);
      switch (d.kind) {
        case AdmissionDecision::Kind::accept:
          if (state.full()) fail("accept into a full buffer", slot);
          state.admit(p);
          ++result.admitted_count;
          if (options.record_events) ev.admitted.push_back(p.id);
          break;
        case AdmissionDecision::Kind::drop:
          ++result.dropped_count;
          if (options.record_events) ev.dropped_on_arrival.push_back(p.id);
          break;
        case AdmissionDecision::Kind::push_out: {
          if (!state.full()) fail("push-out with free buffer space", slot);
          const Packet* victim = state.find(d.victim);
          if (victim == nullptr) fail("push-out victim not buffered", slot);
          if (options.check_invariants) {
            // The arrival must carry strictly less work than it evicts, so
            // the total residual work drops by residual(victim) - work(p).
            const long long before = buffer_stats(state).total_residual;
            if (!(victim->residual_work > p.required_work)) fail("push-out without strict work gain", slot);
            const long long after = before - victim->residual_work + p.required_work;
            if (!(after < before)) fail("push-out did not reduce total residual work", slot);
          }
          state.remove(d.victim);
          state.admit(p);
          ++result.admitted_count;
          ++result.pushout_count;
          if (options.record_events) {
            ev.admitted.push_back(p.id);
            ev.pushed_out.push_back({d.victim, p.id});
          }
          break;
        }
      }
      if (options.record_events && d.kind != AdmissionDecision::Kind::drop) {
        result.admission_order.push_back(p.id);
      }
    }
    if (options.check_invariants && state.occupancy() > buffer) fail("buffer over capacity", slot);

    // (ii) assignment and processing: one cycle per selected packet.
    const ProcessingPlan plan = policy.plan_processing(state, cores);
    if (static_cast<int>(plan.selected.size()) > cores) fail("more packets selected than cores", slot);
    for (std::size_t i = 0; i < plan.selected.size(); ++i) {
      const PacketId id = plan.selected[i];
      if (options.check_invariants &&
          std::find(plan.selected.begin(), plan.selected.begin() + static_cast<std::ptrdiff_t>(i), id) !=
              plan.selected.begin() + static_cast<std::ptrdiff_t>(i)) {
        fail("packet selected twice", slot);
      }
      Packet* p = state.find(id);
      if (p == nullptr) fail("selected packet not buffered", slot);
      if (p->residual_work < 1) fail("selected packet has no residual work", slot);
      --p->residual_work;
    }
    if (options.record_events) ev.processed = plan.selected;

    // (iii) transmission of finished packets the gate lets through.
    auto& q = state.packets();
    for (auto it = q.begin(); it != q.end();) {
      const bool done = it->residual_work == 0;
      const bool allowed = plan.gate == TransmitGate::open ||
                           (plan.gate == TransmitGate::marked_only && it->marked);
      if (done && allowed) {
        ++result.transmitted_count;
        if (options.record_events) {
          ev.transmitted.push_back(it->id);
          result.delivery_order.push_back(it->id);
        }
        it = q.erase(it);
      } else {
        ++it;
      }
    }

    if (options.record_occupancy) result.occupancy.push_back(state.occupancy());
    if (options.record_events) {
      for (const auto& p : q) {
        ev.buffer_ids.push_back(p.id);
        ev.buffer_residuals.push_back(p.residual_work);
      }
      result.events.push_back(std::move(ev));
    }
  }

  result.final_slot = slot;
  result.remaining = state.occupancy();
  if (options.check_invariants) {
    if (result.admitted_count != result.transmitted_count + result.pushout_count + result.remaining) {
      throw std::logic_error("conservation violated: admitted != transmitted + pushed out + remaining");
    }
    if (result.admitted_count + result.dropped_count != result.total_packets) {
      throw std::logic_error("conservation violated: admitted + dropped != arrivals");
    }
  }
  return result;
}

SimulationResult run(const Trace& trace, PolicyId policy, int buffer, int cores, const RunOptions& options) {
  auto p = make_policy(policy);
  return run(trace, *p, buffer, cores, options);
}

std::vector<int> transmission_slots(const SimulationResult& result) {
  std::vector<int> slots;
  for (const auto& ev : result.events) {
    slots.insert(slots.end(), ev.transmitted.size(), ev.slot);
  }
  return slots;
}

std::vector<long long> per_period_counts(const SimulationResult& result, int period_length, int periods) {
  if (period_length < 1) throw std::invalid_argument("period length must be >= 1");
  std::vector<long long> counts(static_cast<std::size_t>(std::max(periods, 0)), 0);
  for (const auto& ev : result.events) {
    const auto j = static_cast<std::size_t>((ev.slot - 1) / period_length);
    if (j < counts.size()) counts[j] += static_cast<long long>(ev.transmitted.size());
  }
  return counts;
}

}  // namespace fifobuf
