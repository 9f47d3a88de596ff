#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fifobuf/policy.hpp"
#include "fifobuf/rational.hpp"
#include "fifobuf/trace.hpp"

namespace fifobuf {

/// Worst-case arrival patterns for the online policies.
///
/// Offsets inside a period count processing cycles elapsed since the period
/// began: an arrival at offset t lands in slot `period_start + t`, after t
/// processing phases. The first period starts at slot 1.
enum class Construction {
  po_vs_lpo,      // PO transmits 3/2 of LPO
  lpo_vs_po,      // LPO transmits 5/4 of PO
  npo_tight,      // NPO loses a factor of k
  kgeb,           // push-out lower bound 2(1 - 1/B) when k >= B
  po_kltb,        // PO lower bound 2k/(k+1) when k < B
  lpo_kltb,       // LPO lower bound (2k-1)/k when k < B
  log_recursive,  // nested heavy-head construction, ratio grows with the level
};

std::string_view to_string(Construction c);
/// Accepts the upper-case ids used on the command line (PO_VS_LPO, ...).
std::optional<Construction> parse_construction(std::string_view name);
const std::vector<Construction>& all_constructions();

struct ConstructionParams {
  int buffer = 10;
  int k = 2;
  int cores = 1;
  int periods = 1;  // iterations for npo_tight
  int level = 0;    // nesting depth for log_recursive
};

struct AdversarialTrace {
  Trace trace;
  Construction construction = Construction::po_vs_lpo;
  ConstructionParams params;
  int period_length = 0;
  PolicyId target = PolicyId::po;
  // The comparator is either another online policy or an offline accept
  // mask replayed FIFO and work-conserving.
  std::optional<PolicyId> reference_policy;
  std::vector<bool> reference_mask;
  // Throughput claimed over the whole trace.
  Rational claimed_target;
  Rational claimed_reference;
  // Claimed per period; equal to the totals divided by `periods` for the
  // periodic constructions, unset for npo_tight.
  std::optional<Rational> claimed_target_per_period;
  std::optional<Rational> claimed_reference_per_period;
  std::vector<std::string> notes;
};

/// Heavy work used by level `level` of log_recursive for a buffer of size B.
long long log_recursive_heavy_work(int buffer, int level);

/// Throws std::invalid_argument when the construction's preconditions fail.
AdversarialTrace gen_adversarial(Construction construction, const ConstructionParams& params);

}  // namespace fifobuf
