#pragma once

#include <cstdint>
#include <vector>

#include "fifobuf/trace.hpp"

namespace fifobuf {

struct OracleLimits {
  std::size_t max_packets = 14;
  std::size_t max_states = 2'000'000;
  // Also branch on evicting each buffered packet when an arrival finds the
  // buffer full. Only used to confirm that eviction never helps offline.
  bool allow_pushout = false;
};

struct OracleResult {
  long long throughput = 0;
  // Per-packet accept decisions achieving `throughput` (trace order). Empty
  // when the search ran with allow_pushout.
  std::vector<bool> accept_mask;
  std::uint64_t explored = 0;
};

/// Best throughput of any offline FIFO, work-conserving schedule that only
/// accepts or rejects at arrival. Throws std::length_error when the trace
/// exceeds the limits.
OracleResult offline_opt_bruteforce(const Trace& trace, int buffer, int cores,
                                    const OracleLimits& limits = {});

}  // namespace fifobuf
