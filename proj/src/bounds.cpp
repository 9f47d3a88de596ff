#include "fifobuf/bounds.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace fifobuf {

namespace {

constexpr std::array<std::pair<BoundId, std::string_view>, 7> kNames{{
    {BoundId::npo_tight_k, "NPO_TIGHT_K"},
    {BoundId::lpo_upper_ln, "LPO_UPPER_LN"},
    {BoundId::lpo_p_upper_log2, "LPO_P_UPPER_LOG2"},
    {BoundId::lb_pushout_kgeb, "LB_PUSHOUT_KGEB"},
    {BoundId::lb_po_kltb, "LB_PO_KLTB"},
    {BoundId::lb_lpo_kltb, "LB_LPO_KLTB"},
    {BoundId::lb_log_recursive, "LB_LOG_RECURSIVE"},
}};

// floor(log_B k) in integers; base 1 has no logarithm, treat it as 0.
int floor_log(int base, int k) {
  if (base < 2) return 0;
  int e = 0;
  long long p = base;
  while (p <= k) {
    ++e;
    p *= base;
  }
  return e;
}

}  // namespace

std::string_view to_string(BoundId id) {
  for (const auto& [b, name] : kNames) {
    if (b == id) return name;
  }
  return "?";
}

std::optional<BoundId> parse_bound(std::string_view name) {
  for (const auto& [b, n] : kNames) {
    if (n == name) return b;
  }
  return std::nullopt;
}

const std::vector<BoundId>& all_bounds() {
  static const std::vector<BoundId> all{BoundId::npo_tight_k,     BoundId::lpo_upper_ln, BoundId::lpo_p_upper_log2,
                                        BoundId::lb_pushout_kgeb, BoundId::lb_po_kltb,   BoundId::lb_lpo_kltb,
                                        BoundId::lb_log_recursive};
  return all;
}

BoundValue bound_value(BoundId id, int k, int buffer) {
  if (k < 1 || buffer < 1) throw std::invalid_argument("bounds need k >= 1 and B >= 1");
  const double kd = k;
  const double b = buffer;
  switch (id) {
    case BoundId::npo_tight_k: return {kd, ""};
    case BoundId::lpo_upper_ln: return {std::log(kd) + 3.0, "o(B)/B"};
    case BoundId::lpo_p_upper_log2: return {std::log2(kd) + 3.0 + (b - 1.0) / b, ""};
    case BoundId::lb_pushout_kgeb: return {2.0 * (b - 1.0) / b, ""};  // 2(1 - 1/B)
    case BoundId::lb_po_kltb: return {2.0 * kd / (kd + 1.0), ""};
    case BoundId::lb_lpo_kltb: return {(2.0 * kd - 1.0) / kd, ""};
    case BoundId::lb_log_recursive: return {floor_log(buffer, k) + 1.0, "O(1/B)"};
  }
  throw std::invalid_argument("unknown bound id");
}

}  // namespace fifobuf
