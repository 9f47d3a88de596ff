#include "fifobuf/cli.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fifobuf/adversarial.hpp"
#include "fifobuf/bounds.hpp"
#include "fifobuf/engine.hpp"
#include "fifobuf/mmpp.hpp"
#include "fifobuf/results_io.hpp"
#include "fifobuf/sweep.hpp"
#include "fifobuf/trace_io.hpp"
#include "fifobuf/verify.hpp"

namespace fifobuf {

namespace {

// Raised for bad flag values discovered after parsing; maps to exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::pair<int, std::pair<int, int>> parse_range(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() < 2 || parts.size() > 3) throw UsageError("--range expects A:Z or A:Z:step, got '" + s + "'");
  try {
    const int a = std::stoi(parts[0]);
    const int z = std::stoi(parts[1]);
    const int step = parts.size() == 3 ? std::stoi(parts[2]) : 1;
    return {a, {z, step}};
  } catch (const std::exception&) {
    throw UsageError("--range expects integers, got '" + s + "'");
  }
}

nlohmann::json result_json(const SimulationResult& r, bool with_events) {
  nlohmann::json j = {{"policy", r.policy},
                      {"B", r.buffer},
                      {"C", r.cores},
                      {"final_slot", r.final_slot},
                      {"packets", r.total_packets},
                      {"transmitted", r.transmitted_count},
                      {"dropped", r.dropped_count},
                      {"pushed_out", r.pushout_count},
                      {"admitted", r.admitted_count},
                      {"remaining", r.remaining}};
  if (with_events) {
    auto events = nlohmann::json::array();
    for (const auto& ev : r.events) {
      auto pushed = nlohmann::json::array();
      for (const auto& p : ev.pushed_out) pushed.push_back({p.victim, p.incoming});
      events.push_back({{"slot", ev.slot},
                        {"admitted", ev.admitted},
                        {"dropped", ev.dropped_on_arrival},
                        {"pushed_out", pushed},
                        {"processed", ev.processed},
                        {"transmitted", ev.transmitted},
                        {"buffer", ev.buffer_residuals}});
    }
    j["events"] = std::move(events);
  }
  return j;
}

std::vector<std::pair<Construction, ConstructionParams>> construction_suite() {
  return {
      {Construction::po_vs_lpo, {10, 2, 1, 50, 0}},   {Construction::po_vs_lpo, {20, 2, 1, 50, 0}},
      {Construction::lpo_vs_po, {10, 6, 1, 50, 0}},   {Construction::lpo_vs_po, {20, 12, 1, 50, 0}},
      {Construction::npo_tight, {10, 5, 1, 1000, 0}}, {Construction::npo_tight, {8, 4, 2, 500, 0}},
      {Construction::kgeb, {10, 10, 1, 50, 0}},       {Construction::kgeb, {20, 25, 1, 50, 0}},
      {Construction::po_kltb, {27, 3, 1, 20, 0}},     {Construction::po_kltb, {64, 4, 1, 20, 0}},
      {Construction::lpo_kltb, {20, 3, 1, 20, 0}},    {Construction::lpo_kltb, {40, 5, 1, 20, 0}},
      {Construction::log_recursive, {10, 72, 1, 5, 0}},
      {Construction::log_recursive, {10, 720, 1, 3, 1}},
  };
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"FIFO buffer management simulator with heterogeneous processing", "fifobuf"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run one policy over a trace file");
  std::string sim_trace, sim_policy;
  int sim_buffer = 0, sim_cores = 1;
  bool sim_events = false;
  sim->add_option("--trace", sim_trace, "Trace file (JSON lines)")->required();
  sim->add_option("--policy", sim_policy, "npo | po | lpo | lpo_p | srpt")->required();
  sim->add_option("--buffer", sim_buffer, "Buffer size B")->required();
  sim->add_option("--cores", sim_cores, "Number of cores C");
  sim->add_flag("--events", sim_events, "Include the per-slot event log");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a trace");
  std::string gen_construction, gen_out;
  bool gen_mmpp_flag = false;
  int gen_buffer = 10, gen_k = 1, gen_cores = 1, gen_periods = 1, gen_level = 0, gen_slots = 200'000;
  std::uint64_t gen_seed = 1;
  MmppParams mmpp;
  gen->add_option("--construction", gen_construction, "Adversarial construction id");
  gen->add_flag("--mmpp", gen_mmpp_flag, "ON/OFF Markov-modulated traffic");
  gen->add_option("--buffer", gen_buffer, "Buffer size B");
  gen->add_option("--k", gen_k, "Maximum work per packet");
  gen->add_option("--cores", gen_cores, "Number of cores C");
  gen->add_option("--periods", gen_periods, "Repetitions (iterations for NPO_TIGHT)");
  gen->add_option("--level", gen_level, "Nesting level for LOG_RECURSIVE");
  gen->add_option("--slots", gen_slots, "Slots of MMPP traffic");
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--p-on-off", mmpp.p_on_to_off, "ON to OFF probability per slot");
  gen->add_option("--p-off-on", mmpp.p_off_to_on, "OFF to ON probability per slot");
  gen->add_option("--out", gen_out, "Output trace file")->required();

  // sweep
  auto* sw = app.add_subcommand("sweep", "Parameter sweep over MMPP traffic");
  std::string sw_param, sw_range, sw_policies = "npo,po,lpo", sw_reference = "srpt", sw_out;
  SweepConfig cfg;
  sw->add_option("--param", sw_param, "k | B | C")->required();
  sw->add_option("--range", sw_range, "A:Z[:step]")->required();
  sw->add_option("--k", cfg.k, "Fixed k");
  sw->add_option("--buffer", cfg.buffer, "Fixed B");
  sw->add_option("--cores", cfg.cores, "Fixed C");
  sw->add_option("--policies", sw_policies, "Comma-separated policy ids");
  sw->add_option("--reference", sw_reference, "Reference policy id");
  sw->add_option("--slots", cfg.slots, "Slots per run");
  sw->add_option("--runs", cfg.runs, "Runs per point");
  sw->add_option("--seed", cfg.seed, "Master seed");
  sw->add_option("--workers", cfg.workers, "Worker threads (0 = all cores)");
  sw->add_option("--p-on-off", cfg.traffic.p_on_to_off, "ON to OFF probability per slot");
  sw->add_option("--p-off-on", cfg.traffic.p_off_to_on, "OFF to ON probability per slot");
  sw->add_option("--out", sw_out, "Output prefix (<prefix>.csv, <prefix>_<policy>.dat)")->required();

  // verify
  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  std::string ver_suite;
  MicroConfig micro;
  int ver_sweep_slots = 200'000;
  bool ver_skip_sweeps = false;
  ver->add_option("--suite", ver_suite, "golden | micro | constructions")
      ->required()
      ->check(CLI::IsMember({"golden", "micro", "constructions"}));
  ver->add_option("--seed", micro.seed, "Seed for the micro suite");
  ver->add_option("--count", micro.count, "Instances for the micro suite");
  ver->add_option("--sweep-slots", ver_sweep_slots, "Slots per run for the golden deviation check");
  ver->add_flag("--skip-sweeps", ver_skip_sweeps, "Golden suite without the MMPP sweep deviation check");

  // bounds
  auto* bnd = app.add_subcommand("bounds", "Evaluate a closed-form bound");
  std::string bnd_id;
  int bnd_k = 1, bnd_buffer = 1;
  bnd->add_option("--id", bnd_id, "Bound id")->required();
  bnd->add_option("--k", bnd_k, "Maximum work k");
  bnd->add_option("--buffer", bnd_buffer, "Buffer size B");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("fifobuf");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return exit_usage;
  }

  try {
    if (*sim) {
      const auto policy = parse_policy(sim_policy);
      if (!policy) throw UsageError("unknown policy '" + sim_policy + "'");
      Trace trace;
      try {
        trace = read_trace_file(sim_trace);
      } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
      }
      RunOptions opts;
      opts.record_events = sim_events;
      const auto r = run(trace, *policy, sim_buffer, sim_cores, opts);
      out << result_json(r, sim_events).dump() << '\n';
      return exit_ok;
    }

    if (*gen) {
      Trace trace;
      if (gen_mmpp_flag == !gen_construction.empty()) {
        throw UsageError("gen needs exactly one of --construction or --mmpp");
      }
      if (gen_mmpp_flag) {
        mmpp.k = gen_k;
        trace = gen_mmpp(mmpp, gen_slots, gen_seed);
      } else {
        const auto c = parse_construction(gen_construction);
        if (!c) throw UsageError("unknown construction '" + gen_construction + "'");
        trace = gen_adversarial(*c, {gen_buffer, gen_k, gen_cores, gen_periods, gen_level}).trace;
      }
      write_trace_file(gen_out, trace);
      out << "wrote " << trace.size() << " packets to " << gen_out << '\n';
      return exit_ok;
    }

    if (*sw) {
      const auto param = parse_sweep_param(sw_param);
      if (!param) throw UsageError("--param must be k, B or C");
      cfg.param = *param;
      const auto [from, rest] = parse_range(sw_range);
      cfg.from = from;
      cfg.to = rest.first;
      cfg.step = rest.second;
      cfg.policies.clear();
      for (const auto& name : split(sw_policies, ',')) {
        const auto p = parse_policy(name);
        if (!p) throw UsageError("unknown policy '" + name + "'");
        cfg.policies.push_back(*p);
      }
      const auto ref = parse_policy(sw_reference);
      if (!ref) throw UsageError("unknown policy '" + sw_reference + "'");
      cfg.reference = *ref;
      const auto table = sweep(cfg);
      write_results_csv(std::filesystem::path(sw_out + ".csv"), table);
      const auto files = emit_plot_data(table, sw_out);
      out << "wrote " << sw_out << ".csv and " << files.size() << " plot files\n";
      return exit_ok;
    }

    if (*ver) {
      std::vector<VerificationReport> reports;
      if (ver_suite == "golden") {
        reports = golden_constructions();
        if (!ver_skip_sweeps) reports.push_back(golden_sweep_deviation(ver_sweep_slots));
      } else if (ver_suite == "micro") {
        reports = verify_micro(micro);
      } else {
        for (const auto& [c, p] : construction_suite()) {
          reports.push_back(verify_construction(c, p));
          if (c == Construction::kgeb) reports.push_back(verify_construction(c, p, PolicyId::lpo));
        }
      }
      for (const auto& r : reports) out << r.to_json().dump() << '\n';
      const bool ok = all_pass(reports);
      out << (ok ? "PASS" : "FAIL") << '\n';
      return ok ? exit_ok : exit_fail;
    }

    if (*bnd) {
      const auto id = parse_bound(bnd_id);
      if (!id) throw UsageError("unknown bound id '" + bnd_id + "'");
      const auto v = bound_value(*id, bnd_k, bnd_buffer);
      out << v.value << '\n';
      if (!v.dropped_terms.empty()) err << "note: dropped asymptotic term " << v.dropped_terms << '\n';
      return exit_ok;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_fail;
  }
  return exit_usage;
}

}  // namespace fifobuf
