#include "fifobuf/policy.hpp"

#include <algorithm>
#include <array>

namespace fifobuf {

namespace {

constexpr std::array<std::pair<PolicyId, std::string_view>, 5> kPolicyNames{{
    {PolicyId::npo, "npo"},
    {PolicyId::po, "po"},
    {PolicyId::lpo, "lpo"},
    {PolicyId::lpo_p, "lpo_p"},
    {PolicyId::srpt, "srpt"},
}};

// First-from-HOL packet of maximal residual among those `eligible` accepts;
// the arrival replaces it iff its work is strictly smaller.
template <typename Eligible>
AdmissionDecision push_out_rule(const BufferState& state, const Packet& p, Eligible eligible) {
  if (!state.full()) return AdmissionDecision::accept();
  const Packet* victim = nullptr;
  for (const auto& q : state.packets()) {
    if (!eligible(q)) continue;
    if (victim == nullptr || q.residual_work > victim->residual_work) victim = &q;
  }
  if (victim != nullptr && p.required_work < victim->residual_work) {
    return AdmissionDecision::push_out(victim->id);
  }
  return AdmissionDecision::drop();
}

}  // namespace

std::string_view to_string(PolicyId id) {
  for (const auto& [pid, name] : kPolicyNames) {
    if (pid == id) return name;
  }
  return "?";
}

std::optional<PolicyId> parse_policy(std::string_view name) {
  for (const auto& [pid, n] : kPolicyNames) {
    if (n == name) return pid;
  }
  return std::nullopt;
}

const std::vector<PolicyId>& all_policies() {
  static const std::vector<PolicyId> ids{PolicyId::npo, PolicyId::po, PolicyId::lpo, PolicyId::lpo_p,
                                         PolicyId::srpt};
  return ids;
}

bool is_fifo(PolicyId id) { return id != PolicyId::srpt; }

AdmissionDecision npo_on_arrival(const BufferState& state, const Packet&) {
  return state.full() ? AdmissionDecision::drop() : AdmissionDecision::accept();
}

AdmissionDecision po_on_arrival(const BufferState& state, const Packet& p) {
  return push_out_rule(state, p, [](const Packet&) { return true; });
}

AdmissionDecision lpo_on_arrival(const BufferState& state, const Packet& p) {
  return po_on_arrival(state, p);
}

AdmissionDecision lpo_p_on_arrival(const BufferState& state, const Packet& p,
                                   std::span<const PacketId> in_process) {
  return push_out_rule(state, p, [&](const Packet& q) {
    return std::find(in_process.begin(), in_process.end(), q.id) == in_process.end();
  });
}

AdmissionDecision srpt_on_arrival(const BufferState& state, const Packet& p) {
  return po_on_arrival(state, p);
}

ProcessingPlan fifo_select_processing(const BufferState& state, int cores) {
  ProcessingPlan plan;
  const auto& q = state.packets();
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(std::max(cores, 0)), q.size());
  plan.selected.reserve(n);
  for (std::size_t i = 0; i < n; ++i) plan.selected.push_back(q[i].id);
  plan.gate = TransmitGate::open;
  return plan;
}

LpoStep lpo_select_processing(const BufferState& state, LpoMode mode, int cores) {
  const auto& q = state.packets();
  LpoStep step;
  const auto marked_left =
      static_cast<int>(std::count_if(q.begin(), q.end(), [](const Packet& p) { return p.marked; }));

  if (mode.draining() && marked_left == 0) mode = LpoMode::fill();

  if (!mode.draining() && !q.empty() &&
      std::all_of(q.begin(), q.end(), [](const Packet& p) { return p.residual_work == 1; })) {
    // Every packet is down to its last cycle: this iteration drains.
    step.mark_all = true;
    mode = LpoMode::drain(state.occupancy());
  }

  step.plan.selected.reserve(std::min<std::size_t>(static_cast<std::size_t>(std::max(cores, 0)), q.size()));
  if (mode.draining()) {
    for (const auto& p : q) {
      if (static_cast<int>(step.plan.selected.size()) >= cores) break;
      if (p.marked || step.mark_all) step.plan.selected.push_back(p.id);
    }
    step.plan.gate = TransmitGate::marked_only;
  } else {
    for (const auto& p : q) {
      if (static_cast<int>(step.plan.selected.size()) >= cores) break;
      if (p.residual_work > 1) step.plan.selected.push_back(p.id);
    }
    step.plan.gate = TransmitGate::closed;
  }
  step.next_mode = mode;
  return step;
}

ProcessingPlan srpt_select_processing(const BufferState& state, int cores) {
  const auto& q = state.packets();
  ProcessingPlan plan;
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(std::max(cores, 0)), q.size());
  plan.selected.reserve(n);
  // Repeated minimum scan; strict < keeps the earliest admission on ties.
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = q.size();
    for (std::size_t i = 0; i < q.size(); ++i) {
      const bool taken = std::find(plan.selected.begin(), plan.selected.end(), q[i].id) != plan.selected.end();
      if (!taken && (best == q.size() || q[i].residual_work < q[best].residual_work)) best = i;
    }
    plan.selected.push_back(q[best].id);
  }
  plan.gate = TransmitGate::open;
  return plan;
}

ProcessingPlan LpoPolicy::plan_processing(BufferState& state, int cores) {
  auto step = lpo_select_processing(state, mode_, cores);
  if (step.mark_all) {
    for (auto& p : state.packets()) p.marked = true;
  }
  mode_ = step.next_mode;
  return std::move(step.plan);
}

AdmissionDecision LpoPPolicy::on_arrival(const BufferState& state, const Packet& p) {
  return lpo_p_on_arrival(state, p, in_process_);
}

ProcessingPlan LpoPPolicy::plan_processing(BufferState& state, int cores) {
  auto plan = LpoPolicy::plan_processing(state, cores);
  in_process_ = plan.selected;
  return plan;
}

AdmissionDecision ScriptedPolicy::on_arrival(const BufferState& state, const Packet& p) {
  const auto i = static_cast<std::size_t>(p.id);
  if (i < mask_.size() && mask_[i] && !state.full()) return AdmissionDecision::accept();
  return AdmissionDecision::drop();
}

std::unique_ptr<Policy> make_policy(PolicyId id) {
  switch (id) {
    case PolicyId::npo: return std::make_unique<NpoPolicy>();
    case PolicyId::po: return std::make_unique<PoPolicy>();
    case PolicyId::lpo: return std::make_unique<LpoPolicy>();
    case PolicyId::lpo_p: return std::make_unique<LpoPPolicy>();
    case PolicyId::srpt: return std::make_unique<SrptPolicy>();
  }
  throw std::invalid_argument("unknown policy id");
}

}  // namespace fifobuf
