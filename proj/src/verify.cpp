#include "fifobuf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "fifobuf/bounds.hpp"
#include "fifobuf/engine.hpp"
#include "fifobuf/oracle.hpp"
#include "fifobuf/sweep.hpp"
#include "fifobuf/trace_io.hpp"

namespace fifobuf {

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j = {{"check", check},     {"params", params},       {"claimed", claimed},
                      {"measured", measured}, {"tolerance", tolerance}, {"pass", pass}};
  if (informational) j["informational"] = true;
  if (!counterexample.empty()) j["counterexample"] = counterexample;
  return j;
}

bool all_pass(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const VerificationReport& r) { return r.pass || r.informational; });
}

double ConstructionMeasurement::ratio() const {
  return target_throughput == 0 ? 0.0
                                : static_cast<double>(reference_throughput) / static_cast<double>(target_throughput);
}

ConstructionMeasurement measure_construction(Construction construction, const ConstructionParams& params,
                                             std::optional<PolicyId> target) {
  ConstructionMeasurement m;
  m.adversarial = gen_adversarial(construction, params);
  const auto& adv = m.adversarial;
  m.target = target.value_or(adv.target);

  RunOptions opts;
  opts.record_events = true;
  const int C = params.cores;
  const auto target_run = run(adv.trace, m.target, params.buffer, C, opts);
  SimulationResult ref_run;
  if (adv.reference_policy) {
    ref_run = run(adv.trace, *adv.reference_policy, params.buffer, C, opts);
  } else {
    ScriptedPolicy replay(adv.reference_mask);
    ref_run = run(adv.trace, replay, params.buffer, C, opts);
  }
  m.target_throughput = target_run.transmitted_count;
  m.reference_throughput = ref_run.transmitted_count;
  if (adv.claimed_target_per_period) {
    m.target_per_period = per_period_counts(target_run, adv.period_length, params.periods);
    m.reference_per_period = per_period_counts(ref_run, adv.period_length, params.periods);
  }
  return m;
}

namespace {

nlohmann::json params_json(Construction c, const ConstructionParams& p, PolicyId target) {
  nlohmann::json j = {{"construction", std::string(to_string(c))},
                      {"B", p.buffer},
                      {"k", p.k},
                      {"C", p.cores},
                      {"periods", p.periods},
                      {"target", std::string(to_string(target))}};
  if (c == Construction::log_recursive) j["level"] = p.level;
  return j;
}

nlohmann::json measured_json(const ConstructionMeasurement& m) {
  nlohmann::json j = {{"target_throughput", m.target_throughput},
                      {"reference_throughput", m.reference_throughput},
                      {"ratio", m.ratio()}};
  if (!m.target_per_period.empty()) {
    j["target_first_period"] = m.target_per_period.front();
    j["reference_first_period"] = m.reference_per_period.front();
  }
  return j;
}

nlohmann::json claimed_json(const AdversarialTrace& a) {
  nlohmann::json j = {{"target", a.claimed_target.str()},
                      {"reference", a.claimed_reference.str()},
                      {"ratio", (a.claimed_reference / a.claimed_target).value()}};
  if (a.claimed_target_per_period) {
    j["target_per_period"] = a.claimed_target_per_period->str();
    j["reference_per_period"] = a.claimed_reference_per_period->str();
  }
  return j;
}

VerificationReport construction_report(std::string check, const ConstructionMeasurement& m) {
  VerificationReport r;
  r.check = std::move(check);
  r.params = params_json(m.adversarial.construction, m.adversarial.params, m.target);
  r.claimed = claimed_json(m.adversarial);
  r.measured = measured_json(m);
  return r;
}

double mean(const std::vector<long long>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (auto x : v) s += static_cast<double>(x);
  return s / static_cast<double>(v.size());
}

bool all_within(const std::vector<long long>& v, double centre, double slack) {
  return std::all_of(v.begin(), v.end(),
                     [&](long long x) { return std::abs(static_cast<double>(x) - centre) <= slack; });
}

}  // namespace

ConstructionTolerance default_tolerance(Construction construction) {
  switch (construction) {
    case Construction::po_vs_lpo: return {0.96, std::nullopt};
    case Construction::lpo_vs_po: return {0.97, 1.03};
    case Construction::npo_tight: return {0.97, std::nullopt};
    case Construction::kgeb: return {0.98, 1.02};
    case Construction::po_kltb: return {0.95, std::nullopt};
    case Construction::lpo_kltb: return {0.95, std::nullopt};
    case Construction::log_recursive: return {0.9, std::nullopt};
  }
  return {};
}

VerificationReport verify_construction(Construction construction, const ConstructionParams& params,
                                       std::optional<PolicyId> target,
                                       std::optional<ConstructionTolerance> tolerance) {
  const auto tol = tolerance.value_or(default_tolerance(construction));
  const auto m = measure_construction(construction, params, target);
  auto r = construction_report("construction." + std::string(to_string(construction)), m);
  const double claimed = (m.adversarial.claimed_reference / m.adversarial.claimed_target).value();
  const double measured = m.ratio();
  r.tolerance = {{"min_fraction", tol.min_fraction}};
  if (tol.max_fraction) r.tolerance["max_fraction"] = *tol.max_fraction;
  r.pass = measured >= tol.min_fraction * claimed && (!tol.max_fraction || measured <= *tol.max_fraction * claimed);
  return r;
}

std::vector<VerificationReport> golden_constructions() {
  std::vector<VerificationReport> out;

  {  // LPO beats PO by 5/4.
    const auto m = measure_construction(Construction::lpo_vs_po, {10, 6, 1, 200, 0});
    auto r = construction_report("golden.lpo_beats_po", m);
    const double lpo_over_po = m.ratio();
    r.measured["lpo_over_po"] = lpo_over_po;
    r.tolerance = {{"per_period_slack", 2}, {"ratio_rel", 0.03}};
    r.pass = all_within(m.reference_per_period, 25, 2) && all_within(m.target_per_period, 20, 2) &&
             std::abs(lpo_over_po - 1.25) <= 0.03 * 1.25;
    out.push_back(std::move(r));
  }
  {  // PO beats LPO by 3/2.
    const auto m = measure_construction(Construction::po_vs_lpo, {10, 2, 1, 200, 0});
    auto r = construction_report("golden.po_beats_lpo", m);
    r.measured["po_over_lpo"] = m.ratio();
    r.tolerance = {{"min_ratio", 1.45}};
    r.pass = m.ratio() >= 1.45;
    out.push_back(std::move(r));
  }
  for (PolicyId p : {PolicyId::po, PolicyId::lpo}) {  // k >= B lower bound 2(1 - 1/B).
    const auto m = measure_construction(Construction::kgeb, {10, 10, 1, 100, 0}, p);
    auto r = construction_report("golden.kgeb." + std::string(to_string(p)), m);
    const double per_period = mean(m.target_per_period);
    const double ratio = m.adversarial.claimed_reference.value() / static_cast<double>(m.target_throughput);
    r.measured["target_mean_per_period"] = per_period;
    r.measured["claimed_reference_over_target"] = ratio;
    r.tolerance = {{"per_period_slack", 1}, {"ratio_rel", 0.02}};
    r.pass = std::abs(per_period - 10.0) <= 1.0 && std::abs(ratio - 1.8) <= 0.02 * 1.8 &&
             std::abs(m.ratio() - 1.8) <= 0.02 * 1.8;
    out.push_back(std::move(r));
  }
  {  // k < B, PO: 2k/(k+1).
    const auto m = measure_construction(Construction::po_kltb, {27, 3, 1, 20, 0});
    auto r = construction_report("golden.po_kltb", m);
    const double floor_ratio = 0.95 * bound_value(BoundId::lb_po_kltb, 3, 27).value;
    r.tolerance = {{"min_ratio", floor_ratio}};
    r.pass = m.ratio() >= floor_ratio;
    out.push_back(std::move(r));
  }
  {  // k < B, LPO: (2k-1)/k.
    const auto m = measure_construction(Construction::lpo_kltb, {20, 3, 1, 20, 0});
    auto r = construction_report("golden.lpo_kltb", m);
    const double floor_ratio = 0.95 * bound_value(BoundId::lb_lpo_kltb, 3, 20).value;
    r.tolerance = {{"min_ratio", floor_ratio}};
    r.pass = m.ratio() >= floor_ratio;
    out.push_back(std::move(r));
  }
  {  // NPO loses a factor of k.
    const auto m = measure_construction(Construction::npo_tight, {10, 5, 1, 1000, 0});
    auto r = construction_report("golden.npo_tight", m);
    const double ratio = m.adversarial.claimed_reference.value() / static_cast<double>(m.target_throughput);
    r.measured["claimed_reference_over_target"] = ratio;
    r.tolerance = {{"min_ratio", 4.9}};
    r.pass = ratio >= 4.9;
    out.push_back(std::move(r));
  }
  {  // Nested construction: ratio grows with the level.
    VerificationReport r;
    r.check = "golden.log_recursive";
    r.params = {{"construction", "LOG_RECURSIVE"}, {"B", 10}, {"levels", {0, 1, 2}}, {"periods", 2}};
    r.claimed = nlohmann::json::array();
    r.measured = nlohmann::json::array();
    std::vector<double> ratios;
    for (int level = 0; level <= 2; ++level) {
      const int k = static_cast<int>(log_recursive_heavy_work(10, level));
      const auto m = measure_construction(Construction::log_recursive, {10, k, 1, 2, level});
      ratios.push_back(m.ratio());
      r.claimed.push_back(claimed_json(m.adversarial));
      r.measured.push_back(measured_json(m));
    }
    r.tolerance = {{"level0_min", 2.5}, {"level_slack", 0.5}};
    bool ok = ratios[0] >= 2.5;
    for (std::size_t n = 0; n < ratios.size(); ++n) {
      ok = ok && ratios[n] >= static_cast<double>(n) + 1.0 - 0.5;
      if (n > 0) ok = ok && ratios[n] > ratios[n - 1];
    }
    r.pass = ok;
    out.push_back(std::move(r));
  }
  return out;
}

VerificationReport golden_sweep_deviation(int slots, int runs) {
  VerificationReport r;
  r.check = "golden.sweep_std";
  r.params = {{"slots", slots}, {"runs", runs}, {"grids", "default"}};
  r.claimed = {{"max_std", 0.05}};
  r.tolerance = {{"max_std", 0.05}};
  double worst = 0.0;
  nlohmann::json worst_at;
  for (auto cfg : default_sweeps()) {
    cfg.slots = slots;
    cfg.runs = runs;
    const auto table = sweep(cfg);
    for (const auto& a : table.aggregates) {
      if (a.std_ratio > worst) {
        worst = a.std_ratio;
        worst_at = {{"param", std::string(to_string(cfg.param))}, {"policy", a.policy},
                    {"k", a.k},  {"B", a.buffer}, {"C", a.cores}};
      }
    }
  }
  r.measured = {{"max_std", worst}, {"at", worst_at}};
  r.pass = worst <= 0.05;
  return r;
}

std::vector<VerificationReport> verify_micro(const MicroConfig& config) {
  VerificationReport dominance;
  dominance.check = "micro.fifo_dominance";
  VerificationReport k_factor;
  k_factor.check = "micro.npo_k_factor";
  VerificationReport replay;
  replay.check = "micro.mask_replay";
  VerificationReport ln_bound;
  ln_bound.check = "micro.lpo_ln_bound";
  VerificationReport srpt;
  srpt.check = "micro.srpt_dominates_oracle";
  srpt.informational = true;
  for (auto* r : {&dominance, &k_factor, &replay, &ln_bound, &srpt}) {
    r->params = {{"count", config.count}, {"seed", config.seed}, {"max_packets", config.max_packets},
                 {"max_slots", config.max_slots}};
    r->pass = true;
  }
  dominance.claimed = "throughput(P) <= OPT for P in {npo, po, lpo, lpo_p}";
  k_factor.claimed = "OPT <= k * throughput(npo)";
  replay.claimed = "replaying the accept mask reproduces OPT";
  ln_bound.claimed = "OPT <= (ln k + 3 + 0.5) * throughput(lpo)";
  srpt.claimed = "throughput(srpt) >= OPT";
  ln_bound.tolerance = {{"slack", 0.5}};
  for (auto* r : {&dominance, &k_factor, &replay, &srpt}) r->tolerance = 0;

  long long violations[5] = {0, 0, 0, 0, 0};
  double worst_k_ratio = 0.0;
  double worst_ln_ratio = 0.0;

  for (int i = 0; i < config.count; ++i) {
    const std::uint64_t inst_seed = config.seed + static_cast<std::uint64_t>(i);
    std::mt19937_64 rng(inst_seed);
    const int B = std::uniform_int_distribution<int>(2, 3)(rng);
    const int k = std::uniform_int_distribution<int>(2, 4)(rng);
    const int C = 1;
    const int n = std::uniform_int_distribution<int>(0, config.max_packets)(rng);
    std::uniform_int_distribution<int> slot_dist(1, config.max_slots);
    std::uniform_int_distribution<int> work_dist(1, k);
    std::vector<int> slots(static_cast<std::size_t>(n));
    for (auto& s : slots) s = slot_dist(rng);
    std::sort(slots.begin(), slots.end());
    Trace trace;
    trace.k = k;
    trace.generator = "micro";
    trace.seed = inst_seed;
    trace.params = {{"B", B}, {"C", C}};
    for (int s : slots) trace.arrivals.push_back({s, work_dist(rng)});

    OracleLimits limits;
    limits.max_packets = static_cast<std::size_t>(std::max(config.max_packets, 14));
    const auto opt = offline_opt_bruteforce(trace, B, C, limits);

    auto fail = [&](VerificationReport& r, int which, const std::string& what) {
      ++violations[which];
      if (r.counterexample.empty()) {
        std::ostringstream s;
        s << "# " << what << " (B=" << B << ", C=" << C << ")\n";
        write_trace(s, trace);
        r.counterexample = s.str();
      }
      if (!r.informational) r.pass = false;
    };

    for (PolicyId p : {PolicyId::npo, PolicyId::po, PolicyId::lpo, PolicyId::lpo_p}) {
      const auto t = run(trace, p, B, C).transmitted_count;
      if (t > opt.throughput) fail(dominance, 0, std::string(to_string(p)) + " beats the oracle");
    }
    const auto npo = run(trace, PolicyId::npo, B, C).transmitted_count;
    if (npo > 0) worst_k_ratio = std::max(worst_k_ratio, static_cast<double>(opt.throughput) / npo);
    if (opt.throughput > static_cast<long long>(k) * npo) fail(k_factor, 1, "OPT exceeds k * NPO");

    ScriptedPolicy scripted(opt.accept_mask);
    if (run(trace, scripted, B, C).transmitted_count != opt.throughput) fail(replay, 2, "mask replay differs");

    const auto lpo = run(trace, PolicyId::lpo, B, C).transmitted_count;
    const double ln_limit = bound_value(BoundId::lpo_upper_ln, k, B).value + 0.5;
    if (lpo > 0) worst_ln_ratio = std::max(worst_ln_ratio, static_cast<double>(opt.throughput) / lpo);
    if (static_cast<double>(opt.throughput) > ln_limit * static_cast<double>(lpo)) {
      fail(ln_bound, 3, "OPT exceeds the LPO ln-bound");
    }

    if (run(trace, PolicyId::srpt, B, C).transmitted_count < opt.throughput) {
      fail(srpt, 4, "SRPT below the FIFO oracle");
    }
  }

  dominance.measured = {{"violations", violations[0]}};
  k_factor.measured = {{"violations", violations[1]}, {"max_opt_over_npo", worst_k_ratio}};
  replay.measured = {{"violations", violations[2]}};
  ln_bound.measured = {{"violations", violations[3]}, {"max_opt_over_lpo", worst_ln_ratio}};
  srpt.measured = {{"violations", violations[4]}};
  srpt.pass = violations[4] == 0;
  return {dominance, k_factor, replay, ln_bound, srpt};
}

}  // namespace fifobuf
