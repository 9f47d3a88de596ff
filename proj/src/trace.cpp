#include "fifobuf/trace.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fifobuf {

int Trace::max_work() const {
  int m = 0;
  for (const auto& a : arrivals) m = std::max(m, a.work);
  return m;
}

long long Trace::total_work() const {
  long long total = 0;
  for (const auto& a : arrivals) total += a.work;
  return total;
}

Trace Trace::from_bursts(const std::vector<std::pair<int, std::vector<int>>>& bursts,
                         std::optional<int> k) {
  Trace t;
  for (const auto& [slot, works] : bursts) {
    for (int w : works) t.arrivals.push_back({slot, w});
  }
  t.k = k;
  return t;
}

std::vector<TraceViolation> validate_trace(const Trace& trace) {
  std::vector<TraceViolation> out;
  int prev_slot = 0;
  for (std::size_t i = 0; i < trace.arrivals.size(); ++i) {
    const auto& a = trace.arrivals[i];
    if (a.slot < 1) {
      out.push_back({TraceViolationKind::slot_not_positive, i,
                     "arrival " + std::to_string(i) + ": slot " + std::to_string(a.slot) + " < 1"});
    }
    if (a.slot < prev_slot) {
      out.push_back({TraceViolationKind::slot_decreasing, i,
                     "arrival " + std::to_string(i) + ": slot " + std::to_string(a.slot) +
                         " after slot " + std::to_string(prev_slot)});
    }
    prev_slot = std::max(prev_slot, a.slot);
    if (a.work < 1) {
      out.push_back({TraceViolationKind::work_not_positive, i,
                     "arrival " + std::to_string(i) + ": non-positive work " + std::to_string(a.work)});
    } else if (trace.k && a.work > *trace.k) {
      out.push_back({TraceViolationKind::work_exceeds_k, i,
                     "arrival " + std::to_string(i) + ": work " + std::to_string(a.work) +
                         " exceeds k=" + std::to_string(*trace.k)});
    }
  }
  return out;
}

void require_valid(const Trace& trace) {
  const auto violations = validate_trace(trace);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid trace:";
  for (const auto& v : violations) msg << "\n  " << v.message;
  throw std::invalid_argument(msg.str());
}

}  // namespace fifobuf
