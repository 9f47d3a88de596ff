#pragma once

#include <cstdint>
#include <vector>

#include "fifobuf/trace.hpp"

namespace fifobuf {

/// Two-state ON/OFF arrival process. OFF slots draw Poisson(lambda_off)
/// packets, ON slots a uniform count in [on_count_min, on_count_max]. Every
/// packet's work is uniform on [1, k].
struct MmppParams {
  double lambda_off = 0.3;
  int on_count_min = 3;
  int on_count_max = 6;
  double p_on_to_off = 0.2;
  double p_off_to_on = 0.05;
  int k = 1;

  void validate() const;  // throws std::invalid_argument
  double stationary_on() const { return p_off_to_on / (p_on_to_off + p_off_to_on); }
  double mean_on_count() const { return 0.5 * (on_count_min + on_count_max); }
  /// Long-run mean packets per slot.
  double effective_rate() const;
  /// Long-run mean work per slot, effective_rate() * (k + 1) / 2.
  double offered_load() const { return effective_rate() * (k + 1) / 2.0; }
};

struct MmppSample {
  Trace trace;
  std::vector<bool> on;  // chain state of each slot, index 0 = slot 1
};

/// The chain starts OFF and transitions after each slot's arrivals are drawn.
MmppSample gen_mmpp_with_states(const MmppParams& params, int slots, std::uint64_t seed);
Trace gen_mmpp(const MmppParams& params, int slots, std::uint64_t seed);

}  // namespace fifobuf
