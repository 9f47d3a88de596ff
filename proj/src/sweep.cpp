#include "fifobuf/sweep.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "fifobuf/engine.hpp"

namespace fifobuf {

std::string_view to_string(SweepParam p) {
  switch (p) {
    case SweepParam::k: return "k";
    case SweepParam::buffer: return "B";
    case SweepParam::cores: return "C";
  }
  return "?";
}

std::optional<SweepParam> parse_sweep_param(std::string_view name) {
  if (name == "k") return SweepParam::k;
  if (name == "B") return SweepParam::buffer;
  if (name == "C") return SweepParam::cores;
  return std::nullopt;
}

void SweepConfig::validate() const {
  if (step < 1) throw std::invalid_argument("sweep step must be >= 1");
  if (from > to) throw std::invalid_argument("sweep range is empty");
  if (from < 1) throw std::invalid_argument("swept values must be >= 1");
  if (k < 1 || buffer < 1 || cores < 1) throw std::invalid_argument("k, B and C must be >= 1");
  if (slots < 1) throw std::invalid_argument("slots must be >= 1");
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (policies.empty()) throw std::invalid_argument("no policies to sweep");
  auto t = traffic;
  t.k = 1;
  t.validate();
}

std::vector<int> SweepConfig::points() const {
  std::vector<int> xs;
  for (int x = from; x <= to; x += step) xs.push_back(x);
  return xs;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct Job {
  std::size_t point;
  std::size_t run;
  int x;
};

struct JobResult {
  std::uint64_t seed = 0;
  std::vector<long long> transmitted;  // per table policy
};

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::size_t point, std::size_t run) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ (0x632BE59BD9B4E019ULL * (static_cast<std::uint64_t>(point) + 1)));
  h = splitmix64(h ^ (0x85157AF5D3A2B5C1ULL * (static_cast<std::uint64_t>(run) + 1)));
  return h;
}

double throughput_ratio(long long transmitted, long long reference) {
  if (reference == 0) {
    if (transmitted == 0) return 1.0;
    throw std::domain_error("positive throughput over a zero reference");
  }
  return static_cast<double>(transmitted) / static_cast<double>(reference);
}

const AggregateRow* ResultTable::aggregate(std::string_view policy, int x) const {
  for (const auto& a : aggregates) {
    if (a.policy == policy && a.x == x) return &a;
  }
  return nullptr;
}

ResultTable sweep(const SweepConfig& config) {
  config.validate();

  std::vector<PolicyId> policies = config.policies;
  if (std::find(policies.begin(), policies.end(), config.reference) == policies.end()) {
    policies.push_back(config.reference);
  }
  const auto ref_index = static_cast<std::size_t>(
      std::find(policies.begin(), policies.end(), config.reference) - policies.begin());

  const auto xs = config.points();
  std::vector<Job> jobs;
  for (std::size_t p = 0; p < xs.size(); ++p) {
    for (std::size_t r = 0; r < static_cast<std::size_t>(config.runs); ++r) jobs.push_back({p, r, xs[p]});
  }

  auto coords = [&](int x) {
    int k = config.k, b = config.buffer, c = config.cores;
    switch (config.param) {
      case SweepParam::k: k = x; break;
      case SweepParam::buffer: b = x; break;
      case SweepParam::cores: c = x; break;
    }
    return std::array<int, 3>{k, b, c};
  };

  std::vector<JobResult> results(jobs.size());
  auto work = [&](std::size_t j) {
    const auto [k, b, c] = coords(jobs[j].x);
    auto traffic = config.traffic;
    traffic.k = k;
    JobResult res;
    res.seed = derive_seed(config.seed, jobs[j].point, jobs[j].run);
    const Trace trace = gen_mmpp(traffic, config.slots, res.seed);
    RunOptions opts;
    opts.check_invariants = false;
    for (PolicyId p : policies) res.transmitted.push_back(run(trace, p, b, c, opts).transmitted_count);
    results[j] = std::move(res);
  };

  unsigned workers = config.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.workers;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(jobs.size(), 1)));
  if (workers <= 1) {
    for (std::size_t j = 0; j < jobs.size(); ++j) work(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t j = next++; j < jobs.size(); j = next++) work(j);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    pool.clear();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  ResultTable table;
  table.param = config.param;
  table.reference = std::string(to_string(config.reference));
  for (PolicyId p : policies) table.policies.emplace_back(to_string(p));

  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const auto [k, b, c] = coords(jobs[j].x);
    const long long ref = results[j].transmitted[ref_index];
    for (std::size_t i = 0; i < policies.size(); ++i) {
      const long long t = results[j].transmitted[i];
      table.rows.push_back({table.policies[i], k, b, c, results[j].seed, t, ref,
                            i == ref_index ? 1.0 : throughput_ratio(t, ref)});
    }
  }

  const std::size_t per_job = policies.size();
  for (std::size_t p = 0; p < xs.size(); ++p) {
    const auto [k, b, c] = coords(xs[p]);
    for (std::size_t i = 0; i < policies.size(); ++i) {
      AggregateRow a;
      a.policy = table.policies[i];
      a.x = xs[p];
      a.k = k;
      a.buffer = b;
      a.cores = c;
      double sum = 0.0;
      std::vector<double> ratios;
      for (std::size_t r = 0; r < static_cast<std::size_t>(config.runs); ++r) {
        const auto& row = table.rows[(p * config.runs + r) * per_job + i];
        a.transmitted += row.transmitted;
        a.reference += row.reference;
        ratios.push_back(row.ratio);
        sum += row.ratio;
      }
      a.mean_ratio = sum / static_cast<double>(ratios.size());
      double var = 0.0;
      for (double v : ratios) var += (v - a.mean_ratio) * (v - a.mean_ratio);
      a.std_ratio = std::sqrt(var / static_cast<double>(ratios.size()));
      table.aggregates.push_back(std::move(a));
    }
  }
  return table;
}

std::vector<SweepConfig> default_sweeps() {
  std::vector<SweepConfig> out;
  const std::vector<PolicyId> policies{PolicyId::npo, PolicyId::po, PolicyId::lpo};
  for (int b : {5, 15, 40}) {
    SweepConfig c;
    c.param = SweepParam::k;
    c.from = 1;
    c.to = 40;
    c.buffer = b;
    c.cores = 1;
    c.policies = policies;
    out.push_back(c);
  }
  for (int k : {3, 5, 10}) {
    SweepConfig c;
    c.param = SweepParam::buffer;
    c.from = 1;
    c.to = 40;
    c.k = k;
    c.cores = 1;
    c.policies = policies;
    out.push_back(c);
  }
  for (auto [k, b] : {std::pair{5, 5}, std::pair{5, 10}, std::pair{25, 10}}) {
    SweepConfig c;
    c.param = SweepParam::cores;
    c.from = 1;
    c.to = 10;
    c.k = k;
    c.buffer = b;
    c.policies = policies;
    out.push_back(c);
  }
  return out;
}

}  // namespace fifobuf
