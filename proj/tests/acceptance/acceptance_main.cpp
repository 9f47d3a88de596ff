// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fifobuf/adversarial.hpp"
#include "fifobuf/engine.hpp"
#include "fifobuf/results_io.hpp"
#include "fifobuf/sweep.hpp"
#include "fifobuf/verify.hpp"

using namespace fifobuf;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Measured {
  AdversarialTrace a;
  SimulationResult target;
  SimulationResult reference;
};

Measured simulate(Construction c, const ConstructionParams& p, PolicyId target) {
  Measured m{gen_adversarial(c, p), {}, {}};
  RunOptions o;
  o.record_events = true;
  m.target = run(m.a.trace, target, p.buffer, p.cores, o);
  if (m.a.reference_policy) {
    m.reference = run(m.a.trace, *m.a.reference_policy, p.buffer, p.cores, o);
  } else {
    ScriptedPolicy replay(m.a.reference_mask);
    m.reference = run(m.a.trace, replay, p.buffer, p.cores, o);
  }
  return m;
}

double ratio(const SimulationResult& num, const SimulationResult& den) {
  return static_cast<double>(num.transmitted_count) / static_cast<double>(den.transmitted_count);
}

bool all_within(const std::vector<long long>& xs, double centre, double slack) {
  for (auto x : xs)
    if (x < centre - slack || x > centre + slack) return false;
  return true;
}

bool near_rel(double x, double target, double rel) { return x >= target * (1 - rel) && x <= target * (1 + rel); }

Verdict lpo_beats_po() {
  Verdict v;
  const auto t0 = Clock::now();
  const ConstructionParams p{10, 6, 1, 200, 0};
  const auto m = simulate(Construction::lpo_vs_po, p, PolicyId::po);
  const auto po = per_period_counts(m.target, m.a.period_length, p.periods);
  const auto lpo = per_period_counts(m.reference, m.a.period_length, p.periods);
  const double r = ratio(m.reference, m.target);
  const double secs = seconds_since(t0);
  v.detail << "LPO/PO=" << r << " per-period LPO " << lpo.front() << " PO " << po.front() << " in " << secs << "s";
  v.require(all_within(lpo, 25, 2), "LPO per-period 25+-2");
  v.require(all_within(po, 20, 2), "PO per-period 20+-2");
  v.require(near_rel(r, 1.25, 0.03), "ratio within 3% of 1.25");
  v.require(secs < 1.0, "runtime < 1s");
  return v;
}

Verdict po_beats_lpo() {
  Verdict v;
  const auto t0 = Clock::now();
  const auto m = simulate(Construction::po_vs_lpo, {10, 2, 1, 200, 0}, PolicyId::lpo);
  const double r = ratio(m.reference, m.target);
  const double secs = seconds_since(t0);
  v.detail << "PO/LPO=" << r << " in " << secs << "s";
  v.require(r >= 1.45, "ratio >= 1.45");
  v.require(secs < 1.0, "runtime < 1s");
  return v;
}

Verdict kgeb() {
  Verdict v;
  const ConstructionParams p{10, 10, 1, 100, 0};
  for (PolicyId target : {PolicyId::po, PolicyId::lpo}) {
    const auto m = simulate(Construction::kgeb, p, target);
    const auto per = per_period_counts(m.target, m.a.period_length, p.periods);
    const double r = ratio(m.reference, m.target);
    v.detail << to_string(target) << ": ref/target=" << r << " per-period " << per.front() << " ";
    v.require(all_within(per, 10, 1), std::string(to_string(target)) + " per-period 10+-1");
    v.require(near_rel(r, 1.8, 0.02), std::string(to_string(target)) + " ratio within 2% of 1.8");
  }
  return v;
}

Verdict kltb() {
  Verdict v;
  const auto po = simulate(Construction::po_kltb, {27, 3, 1, 20, 0}, PolicyId::po);
  const auto lpo = simulate(Construction::lpo_kltb, {20, 3, 1, 20, 0}, PolicyId::lpo);
  const double rpo = ratio(po.reference, po.target), rlpo = ratio(lpo.reference, lpo.target);
  v.detail << "PO_KLTB ratio=" << rpo << " LPO_KLTB ratio=" << rlpo;
  v.require(rpo >= 0.95 * 2.0 * 3 / 4, "PO_KLTB >= 1.425");
  v.require(rlpo >= 0.95 * 5.0 / 3.0, "LPO_KLTB >= 0.95*5/3");
  return v;
}

Verdict npo_tight() {
  Verdict v;
  const ConstructionParams p{10, 5, 1, 1000, 0};
  const auto a = gen_adversarial(Construction::npo_tight, p);
  const auto npo = run(a.trace, PolicyId::npo, p.buffer, p.cores);
  // Analytic reference: i*k*C + B packets.
  const double reference = 1000.0 * 5 * 1 + 10;
  const double r = reference / static_cast<double>(npo.transmitted_count);
  v.detail << "reference/NPO=" << r << " (NPO " << npo.transmitted_count << ")";
  v.require(r >= 4.9, "ratio >= 4.9");
  return v;
}

Verdict log_recursive() {
  Verdict v;
  double prev = 0;
  for (int n = 0; n <= 2; ++n) {
    const ConstructionParams p{10, static_cast<int>(log_recursive_heavy_work(10, n)), 1, 2, n};
    const auto m = simulate(Construction::log_recursive, p, PolicyId::po);
    const double r = ratio(m.reference, m.target);
    v.detail << "n=" << n << ":" << r << " ";
    if (n == 0) v.require(r >= 2.5, "ratio(0) >= 2.5");
    if (n > 0) v.require(r > prev, "strictly increasing at n=" + std::to_string(n));
    v.require(r >= n + 1 - 0.5, "ratio(n) >= n+0.5 at n=" + std::to_string(n));
    prev = r;
  }
  return v;
}

Verdict oracle_suite() {
  Verdict v;
  const auto t0 = Clock::now();
  const auto reports = verify_micro({});
  const double secs = seconds_since(t0);
  v.detail << "200 instances in " << secs << "s";
  for (const auto& r : reports) {
    if (r.check == "micro.fifo_dominance" || r.check == "micro.npo_k_factor" || r.check == "micro.mask_replay") {
      v.detail << "; " << r.check << " violations=" << r.measured.at("violations");
      v.require(r.pass, r.check);
    }
  }
  v.require(secs < 60.0, "runtime < 60s");
  return v;
}

SweepConfig k_sweep() {
  SweepConfig c;
  c.param = SweepParam::k;
  c.from = 1;
  c.to = 40;
  c.buffer = 10;
  c.cores = 1;
  return c;
}

SweepConfig c_sweep() {
  SweepConfig c;
  c.param = SweepParam::cores;
  c.from = 1;
  c.to = 10;
  c.k = 5;
  c.buffer = 10;
  return c;
}

Verdict simulation_reproduction() {
  Verdict v;
  const auto t0 = Clock::now();
  const auto ks = sweep(k_sweep());
  const auto mean = [](const ResultTable& t, const char* p, int x) { return t.aggregate(p, x)->mean_ratio; };

  bool k1 = true, po_npo = true, po_lpo = true;
  double worst_std = 0;
  for (const char* p : {"npo", "po", "lpo"}) k1 = k1 && mean(ks, p, 1) >= 0.99;
  for (int k = 2; k <= 40; ++k) {
    po_npo = po_npo && mean(ks, "po", k) >= mean(ks, "npo", k);
    po_lpo = po_lpo && mean(ks, "po", k) >= mean(ks, "lpo", k);
  }
  for (const auto& a : ks.aggregates) worst_std = std::max(worst_std, a.std_ratio);
  v.require(k1, "k=1 ratios >= 0.99");
  v.require(po_npo, "PO >= NPO for k >= 2");
  v.require(po_lpo, "PO >= LPO for k >= 2");

  const auto cs = sweep(c_sweep());
  for (const auto& a : cs.aggregates) worst_std = std::max(worst_std, a.std_ratio);
  v.require(worst_std <= 0.05, "std <= 0.05");
  for (const char* p : {"npo", "po", "lpo"}) {
    double worst_drop = 0;
    for (int c = 2; c <= 10; ++c) worst_drop = std::max(worst_drop, mean(cs, p, c - 1) - mean(cs, p, c));
    v.detail << p << " worst C-step drop=" << worst_drop << ", ";
    v.require(worst_drop <= 0.02, std::string(p) + " non-decreasing in C within 0.02");
  }
  int crossover = 0;
  for (int c = 10; c >= 1 && mean(cs, "npo", c) >= mean(cs, "lpo", c); --c) crossover = c;
  v.detail << "NPO>=LPO from C*=" << crossover << "; max std=" << worst_std;
  v.require(crossover >= 1 && crossover <= 10, "crossover C* <= 10");
  const double secs = seconds_since(t0);
  v.detail << "; " << secs << "s";
  v.require(secs < 600.0, "runtime < 10 min");
  return v;
}

Verdict determinism() {
  Verdict v;
  auto c = c_sweep();
  std::ostringstream a, b;
  write_results_csv(a, sweep(c));
  write_results_csv(b, sweep(c));
  v.detail << a.str().size() << " bytes";
  v.require(a.str() == b.str(), "identical CSV");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"golden LPO beats PO", lpo_beats_po},
      {"golden PO beats LPO", po_beats_lpo},
      {"golden k>=B lower bound", kgeb},
      {"golden k<B lower bounds", kltb},
      {"golden NPO factor k", npo_tight},
      {"golden nested construction", log_recursive},
      {"oracle property suite", oracle_suite},
      {"simulation reproduction", simulation_reproduction},
      {"sweep determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "exception: " << e.what();
    }
    if (!v.pass) ++failed;
    std::string failed_checks;
    for (const auto& f : v.failures) failed_checks += "; failed: " + f;
    std::printf("criterion %zu %s: %s (%s%s)\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                v.detail.str().c_str(), failed_checks.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
