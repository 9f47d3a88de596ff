#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace fifobuf {

/// One packet arrival: the slot it shows up in and its required work.
struct Arrival {
  int slot = 1;
  int work = 1;

  bool operator==(const Arrival&) const = default;
};

/// A time-ordered arrival sequence. Arrivals sharing a slot are offered to
/// the buffer in the order they appear here.
struct Trace {
  std::vector<Arrival> arrivals;
  // Upper bound on any work in the trace, when the producer knows it.
  std::optional<int> k;
  std::string generator = "manual";
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 0;

  std::size_t size() const { return arrivals.size(); }
  bool empty() const { return arrivals.empty(); }
  int last_slot() const { return arrivals.empty() ? 0 : arrivals.back().slot; }
  int max_work() const;
  long long total_work() const;

  /// Builds a trace from per-slot bursts, e.g. {{1, {2, 2, 1}}, {4, {1}}}.
  static Trace from_bursts(const std::vector<std::pair<int, std::vector<int>>>& bursts,
                           std::optional<int> k = std::nullopt);
};

enum class TraceViolationKind { slot_not_positive, slot_decreasing, work_not_positive, work_exceeds_k };

struct TraceViolation {
  TraceViolationKind kind;
  std::size_t index;  // position in Trace::arrivals
  std::string message;
};

/// Returns every violation found; an empty vector means the trace is valid.
std::vector<TraceViolation> validate_trace(const Trace& trace);

/// Throws std::invalid_argument listing the violations, if any.
void require_valid(const Trace& trace);

}  // namespace fifobuf
