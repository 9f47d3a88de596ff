#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <set>

#include "fifobuf/adversarial.hpp"
#include "fifobuf/engine.hpp"
#include "test_util.hpp"

using namespace fifobuf;
using fifobuf::testing::random_trace;

namespace {

// Straight-line re-implementation of the slot loop, kept deliberately naive:
// linear scans, explicit mode flag, no shared code with the library.
struct RefPacket {
  long long id;
  int r;
  bool marked;
};

struct RefOutcome {
  long long transmitted = 0;
  std::vector<long long> delivery;
  std::vector<std::vector<int>> residuals;  // per executed slot, after transmission
};

RefOutcome reference_sim(const Trace& t, PolicyId pol, int B, int C) {
  RefOutcome out;
  std::vector<RefPacket> q;
  bool draining = false;
  std::size_t next = 0;
  int slot = 0;
  while (next < t.size() || !q.empty()) {
    ++slot;
    if (q.empty() && t.arrivals[next].slot > slot) slot = t.arrivals[next].slot;
    while (next < t.size() && t.arrivals[next].slot == slot) {
      const int w = t.arrivals[next].work;
      const long long id = static_cast<long long>(next++);
      if (static_cast<int>(q.size()) < B) {
        q.push_back({id, w, false});
        continue;
      }
      if (pol == PolicyId::npo) continue;
      std::size_t v = 0;
      for (std::size_t i = 1; i < q.size(); ++i)
        if (q[i].r > q[v].r) v = i;
      if (w < q[v].r) {
        q.erase(q.begin() + static_cast<long>(v));
        q.push_back({id, w, false});
      }
    }
    std::vector<std::size_t> pick;
    bool gate_open = true, marked_only = false;
    if (pol == PolicyId::srpt) {
      std::vector<std::size_t> idx(q.size());
      for (std::size_t i = 0; i < q.size(); ++i) idx[i] = i;
      std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return q[a].r < q[b].r; });
      for (std::size_t i = 0; i < idx.size() && static_cast<int>(i) < C; ++i) pick.push_back(idx[i]);
    } else if (pol == PolicyId::lpo) {
      if (draining && std::none_of(q.begin(), q.end(), [](auto& p) { return p.marked; })) draining = false;
      if (!draining && !q.empty() && std::all_of(q.begin(), q.end(), [](auto& p) { return p.r == 1; })) {
        draining = true;
        for (auto& p : q) p.marked = true;
      }
      for (std::size_t i = 0; i < q.size() && static_cast<int>(pick.size()) < C; ++i)
        if (draining ? q[i].marked : q[i].r > 1) pick.push_back(i);
      gate_open = false;
      marked_only = draining;
    } else {
      for (std::size_t i = 0; i < q.size() && static_cast<int>(i) < C; ++i) pick.push_back(i);
    }
    for (auto i : pick) --q[i].r;
    std::vector<RefPacket> keep;
    for (auto& p : q) {
      if (p.r == 0 && (gate_open || (marked_only && p.marked))) {
        ++out.transmitted;
        out.delivery.push_back(p.id);
      } else {
        keep.push_back(p);
      }
    }
    q = keep;
    std::vector<int> rs;
    for (auto& p : q) rs.push_back(p.r);
    out.residuals.push_back(rs);
  }
  return out;
}

RunOptions logged() {
  RunOptions o;
  o.record_events = true;
  o.record_occupancy = true;
  return o;
}

bool is_subsequence(const std::vector<PacketId>& sub, const std::vector<PacketId>& seq) {
  std::size_t j = 0;
  for (PacketId x : seq)
    if (j < sub.size() && sub[j] == x) ++j;
  return j == sub.size();
}

}  // namespace

TEST(Engine, EmptyTraceTransmitsNothing) {
  for (PolicyId p : all_policies()) {
    const auto r = run(Trace{}, p, 4, 1);
    EXPECT_EQ(r.transmitted_count, 0);
    EXPECT_EQ(r.final_slot, 0);
  }
}

TEST(Engine, SingleUnitPacketLeavesInSlotOne) {
  const auto r = run(Trace::from_bursts({{1, {1}}}), PolicyId::npo, 1, 1, logged());
  EXPECT_EQ(r.transmitted_count, 1);
  EXPECT_EQ(transmission_slots(r), (std::vector<int>{1}));
}

TEST(Engine, NpoDropsThirdPacket) {
  const auto r = run(Trace::from_bursts({{1, {2, 2, 1}}}), PolicyId::npo, 2, 1, logged());
  EXPECT_EQ(r.transmitted_count, 2);
  EXPECT_EQ(r.dropped_count, 1);
  EXPECT_EQ(r.events.front().dropped_on_arrival, (std::vector<PacketId>{2}));
  EXPECT_EQ(transmission_slots(r), (std::vector<int>{2, 4}));
  EXPECT_EQ(r.final_slot, 4);
}

TEST(Engine, PoEvictsHeavyForLight) {
  const auto r = run(Trace::from_bursts({{1, {3, 5}}, {2, {1}}}), PolicyId::po, 2, 1, logged());
  EXPECT_EQ(r.pushout_count, 1);
  EXPECT_EQ(r.events[1].pushed_out, (std::vector<PushOutEvent>{{1, 2}}));
  EXPECT_EQ(r.delivery_order, (std::vector<PacketId>{0, 2}));
}

TEST(Engine, KgebPoTransmitsTenPerPeriod) {
  const auto a = gen_adversarial(Construction::kgeb, {10, 10, 1, 1, 0});
  const auto r = run(a.trace, PolicyId::po, 10, 1, logged());
  const auto per = per_period_counts(r, a.period_length, 1);
  EXPECT_NEAR(static_cast<double>(per[0]), 10.0, 1.0);
}

TEST(Engine, IdleGapsAreSkipped) {
  const auto r = run(Trace::from_bursts({{1, {1}}, {1000, {1}}}), PolicyId::po, 1, 1, logged());
  EXPECT_EQ(r.events.size(), 2u);
  EXPECT_EQ(r.final_slot, 1000);
  EXPECT_EQ(r.occupancy.size(), 1000u);
}

TEST(Engine, RejectsBadArguments) {
  const auto t = Trace::from_bursts({{1, {1}}});
  EXPECT_THROW(run(t, PolicyId::po, 0, 1), std::invalid_argument);
  EXPECT_THROW(run(t, PolicyId::po, 1, 0), std::invalid_argument);
  EXPECT_THROW(run(Trace::from_bursts({{1, {0}}}), PolicyId::po, 1, 1), std::invalid_argument);
}

namespace {

// Admits into a full buffer; the engine must refuse.
class Greedy final : public Policy {
 public:
  std::string name() const override { return "bad"; }
  AdmissionDecision on_arrival(const BufferState&, const Packet&) override { return AdmissionDecision::accept(); }
  ProcessingPlan plan_processing(BufferState& s, int c) override { return fifo_select_processing(s, c); }
};

// Selects the head twice.
class Twice final : public Policy {
 public:
  std::string name() const override { return "bad"; }
  AdmissionDecision on_arrival(const BufferState& s, const Packet& p) override { return npo_on_arrival(s, p); }
  ProcessingPlan plan_processing(BufferState& s, int) override {
    if (s.empty()) return {};
    return {{s.packets().front().id, s.packets().front().id}, TransmitGate::open};
  }
};

}  // namespace

TEST(Engine, CatchesMisbehavingPolicies) {
  Greedy g;
  EXPECT_THROW(run(Trace::from_bursts({{1, {1, 1}}}), g, 1, 1), std::logic_error);
  Twice t;
  EXPECT_THROW(run(Trace::from_bursts({{1, {3}}}), t, 1, 2), std::logic_error);
  EXPECT_THROW(run(Trace::from_bursts({{1, {3}}}), t, 1, 1), std::logic_error);
}

class EngineProperties : public ::testing::TestWithParam<PolicyId> {};

TEST(EngineReference, MatchesNaiveSimulator) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1200; ++i) {
    const PolicyId pol = std::array{PolicyId::npo, PolicyId::po, PolicyId::lpo, PolicyId::srpt}[i % 4];
    const int B = 1 + static_cast<int>(rng() % 6), C = 1 + static_cast<int>(rng() % 3);
    const auto t = random_trace(rng, 25, 4, 1 + static_cast<int>(rng() % 7));
    const auto got = run(t, pol, B, C, logged());
    const auto want = reference_sim(t, pol, B, C);
    ASSERT_EQ(got.transmitted_count, want.transmitted);
    ASSERT_EQ(got.delivery_order, std::vector<PacketId>(want.delivery.begin(), want.delivery.end()));
    ASSERT_EQ(got.events.size(), want.residuals.size());
    for (std::size_t s = 0; s < got.events.size(); ++s) ASSERT_EQ(got.events[s].buffer_residuals, want.residuals[s]);
  }
}

TEST_P(EngineProperties, InvariantsHoldOnRandomTraces) {
  const PolicyId pol = GetParam();
  std::mt19937_64 rng(3 + static_cast<int>(pol));
  for (int i = 0; i < 300; ++i) {
    const int B = 1 + static_cast<int>(rng() % 8), C = 1 + static_cast<int>(rng() % 4);
    const int k = 1 + static_cast<int>(rng() % 9);
    const auto t = random_trace(rng, 30, 5, k);
    const auto r = run(t, pol, B, C, logged());

    EXPECT_EQ(r.admitted_count, r.transmitted_count + r.pushout_count + r.remaining);
    EXPECT_EQ(r.admitted_count + r.dropped_count, static_cast<long long>(t.size()));
    EXPECT_EQ(r.remaining, 0);
    if (pol == PolicyId::npo) EXPECT_EQ(r.pushout_count, 0);
    // With C > 1, NPO and PO let a short packet behind the head finish first.
    const bool ordered = is_fifo(pol) && (C == 1 || pol == PolicyId::lpo || pol == PolicyId::lpo_p);
    if (ordered) EXPECT_TRUE(is_subsequence(r.delivery_order, r.admission_order));

    std::map<PacketId, int> residual;  // buffer after the previous slot
    int last_all_ones = -1;
    for (const auto& ev : r.events) {
      ASSERT_LE(static_cast<int>(ev.buffer_ids.size()), B);
      ASSERT_LE(static_cast<int>(ev.processed.size()), C);
      ASSERT_EQ(std::set<PacketId>(ev.processed.begin(), ev.processed.end()).size(), ev.processed.size());

      // Push-outs: the victim carried strictly more work than the arrival.
      auto live = residual;
      for (PacketId id : ev.admitted) live[id] = t.arrivals[static_cast<std::size_t>(id)].work;
      for (const auto& po : ev.pushed_out) {
        ASSERT_TRUE(live.count(po.victim));
        EXPECT_GT(live[po.victim], t.arrivals[static_cast<std::size_t>(po.incoming)].work);
        live.erase(po.victim);
      }
      for (PacketId id : ev.dropped_on_arrival) live.erase(id);

      // Residuals at the processing phase, reconstructed from the log.
      const int present = static_cast<int>(live.size());
      ASSERT_EQ(present, static_cast<int>(ev.buffer_ids.size() + ev.transmitted.size()));
      if (pol == PolicyId::lpo || pol == PolicyId::lpo_p) {
        const bool all_ones = present > 0 && std::all_of(live.begin(), live.end(), [](auto& kv) { return kv.second == 1; });
        if (all_ones) last_all_ones = ev.slot;
        if (present > 0) EXPECT_GE(ev.processed.size(), 1u);
        if (!ev.transmitted.empty()) {
          // Anything still heavier than one cycle arrived after the phase
          // in which the whole buffer was down to its last cycle.
          ASSERT_GE(last_all_ones, 0);
          for (std::size_t j = 0; j < ev.buffer_ids.size(); ++j) {
            if (ev.buffer_residuals[j] > 1) {
              EXPECT_GT(t.arrivals[static_cast<std::size_t>(ev.buffer_ids[j])].slot, last_all_ones);
            }
          }
        }
      } else {
        EXPECT_EQ(static_cast<int>(ev.processed.size()), std::min(C, present));
      }
      residual.clear();
      for (std::size_t j = 0; j < ev.buffer_ids.size(); ++j) residual[ev.buffer_ids[j]] = ev.buffer_residuals[j];
    }
  }
}

TEST_P(EngineProperties, PushOutReducesTotalWork) {
  const PolicyId pol = GetParam();
  std::mt19937_64 rng(101);
  for (int i = 0; i < 200; ++i) {
    const auto t = random_trace(rng, 20, 6, 8);
    const auto r = run(t, pol, 3, 1, logged());
    long long prev_total = 0;
    for (const auto& ev : r.events) {
      // W after arrivals equals the sum of admitted work minus evicted residuals,
      // so it is bounded by prev_total plus this slot's admitted work.
      long long added = 0;
      for (PacketId id : ev.admitted) added += t.arrivals[static_cast<std::size_t>(id)].work;
      long long total = 0;
      for (int x : ev.buffer_residuals) total += x;
      total += static_cast<long long>(ev.processed.size());
      if (!ev.pushed_out.empty()) EXPECT_LT(total, prev_total + added);
      prev_total = 0;
      for (int x : ev.buffer_residuals) prev_total += x;
    }
  }
}

TEST_P(EngineProperties, Deterministic) {
  std::mt19937_64 rng(5);
  const auto t = random_trace(rng, 200, 5, 6);
  const auto a = run(t, GetParam(), 5, 2, logged());
  const auto b = run(t, GetParam(), 5, 2, logged());
  EXPECT_EQ(a.events, b.events);
  EXPECT_EQ(a.transmitted_count, b.transmitted_count);
}

INSTANTIATE_TEST_SUITE_P(AllPolicies, EngineProperties, ::testing::ValuesIn(all_policies()),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(EngineProperties, NoCongestionMeansIdenticalAdmissions) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const int B = 1 + static_cast<int>(rng() % 8);
    auto t = random_trace(rng, 15, 3, 6);
    if (static_cast<int>(t.size()) > B) t.arrivals.resize(static_cast<std::size_t>(B));
    std::set<PacketId> first;
    for (PolicyId p : {PolicyId::npo, PolicyId::po, PolicyId::lpo}) {
      const auto r = run(t, p, B, 1, logged());
      std::set<PacketId> adm(r.admission_order.begin(), r.admission_order.end());
      if (p == PolicyId::npo) first = adm;
      EXPECT_EQ(adm, first);
      EXPECT_EQ(r.transmitted_count, static_cast<long long>(t.size()));
    }
  }
}

TEST(Engine, MultiCorePoCanOvertakeHead) {
  const auto r = run(Trace::from_bursts({{1, {3, 1}}}), PolicyId::po, 2, 2, logged());
  EXPECT_EQ(r.delivery_order, (std::vector<PacketId>{1, 0}));
}

TEST(Engine, PerPeriodCountsRejectsBadLength) {
  SimulationResult r;
  EXPECT_THROW(per_period_counts(r, 0, 1), std::invalid_argument);
}
