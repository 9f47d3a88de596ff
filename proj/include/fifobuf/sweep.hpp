#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fifobuf/mmpp.hpp"
#include "fifobuf/policy.hpp"

namespace fifobuf {

enum class SweepParam { k, buffer, cores };

std::string_view to_string(SweepParam p);
std::optional<SweepParam> parse_sweep_param(std::string_view name);

struct SweepConfig {
  SweepParam param = SweepParam::k;
  int from = 1;
  int to = 40;
  int step = 1;
  int k = 5;
  int buffer = 10;
  int cores = 1;
  std::vector<PolicyId> policies{PolicyId::npo, PolicyId::po, PolicyId::lpo};
  PolicyId reference = PolicyId::srpt;
  int slots = 200'000;
  int runs = 5;
  std::uint64_t seed = 1;
  MmppParams traffic;  // k is overridden per point
  // 0 = one worker per hardware thread.
  unsigned workers = 0;

  void validate() const;
  std::vector<int> points() const;
};

/// Mixes (master seed, point index, run index) into a run seed with
/// splitmix64, so the traffic of a run does not depend on the policy list.
std::uint64_t derive_seed(std::uint64_t master, std::size_t point, std::size_t run);

struct ResultRow {
  std::string policy;
  int k = 0;
  int buffer = 0;
  int cores = 0;
  std::uint64_t seed = 0;
  long long transmitted = 0;
  long long reference = 0;
  double ratio = 0.0;
};

struct AggregateRow {
  std::string policy;
  int x = 0;  // value of the swept parameter
  int k = 0;
  int buffer = 0;
  int cores = 0;
  long long transmitted = 0;  // summed over runs
  long long reference = 0;
  double mean_ratio = 0.0;
  double std_ratio = 0.0;  // population standard deviation over runs
};

struct ResultTable {
  SweepParam param = SweepParam::k;
  std::vector<std::string> policies;  // listed policies, then the reference
  std::string reference;
  std::vector<ResultRow> rows;           // point-major, run-minor, policy order
  std::vector<AggregateRow> aggregates;  // point-major, policy order

  const AggregateRow* aggregate(std::string_view policy, int x) const;
};

/// Throughput ratio against the reference; 0/0 counts as 1. Throws
/// std::domain_error for a positive numerator over a zero reference.
double throughput_ratio(long long transmitted, long long reference);

ResultTable sweep(const SweepConfig& config);

/// Default grids: k in [1,40] with B in {5,15,40}; B in [1,40] with k in
/// {3,5,10}; C in [1,10] with (k,B) in {(5,5),(5,10),(25,10)}.
std::vector<SweepConfig> default_sweeps();

}  // namespace fifobuf
