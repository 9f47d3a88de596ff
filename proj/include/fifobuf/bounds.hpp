#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fifobuf {

enum class BoundId {
  npo_tight_k,
  lpo_upper_ln,
  lpo_p_upper_log2,
  lb_pushout_kgeb,
  lb_po_kltb,
  lb_lpo_kltb,
  lb_log_recursive,
};

std::string_view to_string(BoundId id);
/// Accepts the upper-case ids (NPO_TIGHT_K, LPO_UPPER_LN, ...).
std::optional<BoundId> parse_bound(std::string_view name);
const std::vector<BoundId>& all_bounds();

struct BoundValue {
  double value = 0.0;
  // Asymptotic terms left out of `value`, e.g. "o(B)/B"; empty if exact.
  std::string dropped_terms;
};

/// Closed-form competitive-ratio bounds. Requires k >= 1 and B >= 1.
BoundValue bound_value(BoundId id, int k, int buffer);

}  // namespace fifobuf
