#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fifobuf/adversarial.hpp"
#include "fifobuf/policy.hpp"

namespace fifobuf {

struct VerificationReport {
  std::string check;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json claimed;
  nlohmann::json measured;
  nlohmann::json tolerance;
  bool pass = false;
  // Reported for information; does not decide a suite's outcome.
  bool informational = false;
  // Replayable counterexample (trace JSON lines) when a property failed.
  std::string counterexample;

  nlohmann::json to_json() const;
};

struct ConstructionMeasurement {
  AdversarialTrace adversarial;
  PolicyId target = PolicyId::po;
  long long target_throughput = 0;
  long long reference_throughput = 0;
  std::vector<long long> target_per_period;
  std::vector<long long> reference_per_period;
  double ratio() const;  // reference / target
};

/// Generates the construction and simulates the target policy and its
/// comparator (another policy or the replayed offline schedule).
ConstructionMeasurement measure_construction(Construction construction,
                                             const ConstructionParams& params,
                                             std::optional<PolicyId> target = std::nullopt);

struct ConstructionTolerance {
  // Measured ratio must reach min_fraction * claimed ratio and, when set,
  // stay within max_fraction * claimed ratio.
  double min_fraction = 0.97;
  std::optional<double> max_fraction;
};

/// Per-construction slack for rounding and O(1) per-period effects.
ConstructionTolerance default_tolerance(Construction construction);

/// Compares the measured ratio (reference over target) with the claim.
VerificationReport verify_construction(Construction construction, const ConstructionParams& params,
                                       std::optional<PolicyId> target = std::nullopt,
                                       std::optional<ConstructionTolerance> tolerance = std::nullopt);

struct MicroConfig {
  int count = 200;
  std::uint64_t seed = 1;
  int max_packets = 10;
  int max_slots = 10;
};

/// Random micro instances checked against the brute-force offline optimum.
/// Reports: FIFO dominance, the k-factor for NPO, mask replay and the
/// informational comparisons (SRPT against the oracle, LPO bounds).
std::vector<VerificationReport> verify_micro(const MicroConfig& config);

/// The fixed golden set of adversarial checks.
std::vector<VerificationReport> golden_constructions();

/// Runs the default sweep grids at `slots` slots per run and checks that no
/// per-point standard deviation of a ratio exceeds 0.05.
VerificationReport golden_sweep_deviation(int slots, int runs = 5);

/// True when every non-informational report passed.
bool all_pass(const std::vector<VerificationReport>& reports);

}  // namespace fifobuf
