#include "fifobuf/adversarial.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace fifobuf {

namespace {

constexpr std::array<std::pair<Construction, std::string_view>, 7> kNames{{
    {Construction::po_vs_lpo, "PO_VS_LPO"},
    {Construction::lpo_vs_po, "LPO_VS_PO"},
    {Construction::npo_tight, "NPO_TIGHT"},
    {Construction::kgeb, "KGEB"},
    {Construction::po_kltb, "PO_KLTB"},
    {Construction::lpo_kltb, "LPO_KLTB"},
    {Construction::log_recursive, "LOG_RECURSIVE"},
}};

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// Accumulates arrivals together with the offline schedule's accept mask.
class Schedule {
 public:
  void add(int slot, int work, long long count, bool reference_accepts) {
    for (long long i = 0; i < count; ++i) {
      trace_.arrivals.push_back({slot, work});
      mask_.push_back(reference_accepts);
    }
  }

  AdversarialTrace finish(Construction c, const ConstructionParams& params, int k_declared) && {
    AdversarialTrace out;
    out.construction = c;
    out.params = params;
    trace_.k = k_declared;
    trace_.generator = std::string(to_string(c));
    trace_.seed = 0;
    out.trace = std::move(trace_);
    out.reference_mask = std::move(mask_);
    return out;
  }

 private:
  Trace trace_;
  std::vector<bool> mask_;
};

void set_per_period(AdversarialTrace& a, Rational target, Rational reference) {
  a.claimed_target_per_period = target;
  a.claimed_reference_per_period = reference;
  a.claimed_target = target * Rational(a.params.periods);
  a.claimed_reference = reference * Rational(a.params.periods);
}

void annotate(AdversarialTrace& a) {
  auto& p = a.trace.params;
  p["construction"] = std::string(to_string(a.construction));
  p["B"] = a.params.buffer;
  p["k"] = a.params.k;
  p["C"] = a.params.cores;
  p["periods"] = a.params.periods;
  if (a.construction == Construction::log_recursive) p["level"] = a.params.level;
  p["period_length"] = a.period_length;
  p["target"] = std::string(to_string(a.target));
  p["claimed_target"] = a.claimed_target.str();
  p["claimed_reference"] = a.claimed_reference.str();
  if (!a.notes.empty()) p["notes"] = a.notes;
}

AdversarialTrace po_vs_lpo(const ConstructionParams& prm) {
  const int B = prm.buffer;
  require(prm.k >= 2, "PO_VS_LPO needs k >= 2");
  require(B >= 2, "PO_VS_LPO needs B >= 2");
  const int period = 2 * B;
  Schedule s;
  for (int j = 0; j < prm.periods; ++j) {
    const int start = 1 + j * period;
    s.add(start, 2, B, true);
    s.add(start + B, 1, B, true);
  }
  auto a = std::move(s).finish(Construction::po_vs_lpo, prm, prm.k);
  a.reference_mask.clear();
  a.period_length = period;
  a.target = PolicyId::lpo;
  a.reference_policy = PolicyId::po;
  set_per_period(a, Rational(B), Rational(3LL * B, 2));
  if (B % 2 != 0) a.notes.push_back("odd B: PO completes floor(B/2) work-2 packets before the second burst");
  return a;
}

AdversarialTrace lpo_vs_po(const ConstructionParams& prm) {
  const int B = prm.buffer;
  const int k = prm.k;
  require(B >= 2, "LPO_VS_PO needs B >= 2");
  require(2 * k > B, "LPO_VS_PO needs k > B/2");
  const int half = B / 2;
  const int period = 7 * B / 2;
  Schedule s;
  for (int j = 0; j < prm.periods; ++j) {
    const int start = 1 + j * period;
    s.add(start, 2, B, true);
    s.add(start + B, k, half, true);
    s.add(start + 2 * B, 1, half, true);
    s.add(start + 5 * B / 2, 1, B, true);
  }
  auto a = std::move(s).finish(Construction::lpo_vs_po, prm, k);
  a.reference_mask.clear();
  a.period_length = period;
  a.target = PolicyId::po;
  a.reference_policy = PolicyId::lpo;
  set_per_period(a, Rational(2LL * B), Rational(5LL * B, 2));
  if (B % 2 != 0) a.notes.push_back("odd B: B/2, 5B/2 and 7B/2 floored");
  return a;
}

AdversarialTrace npo_tight(const ConstructionParams& prm) {
  const int B = prm.buffer;
  const int k = prm.k;
  const int C = prm.cores;
  const int iterations = prm.periods;
  require(C >= 1 && B >= C, "NPO_TIGHT needs B >= C >= 1");
  require(k >= 2, "NPO_TIGHT needs k >= 2");
  Schedule s;
  s.add(1, k, B - C, false);
  for (int j = 0; j < iterations; ++j) {
    const int start = 1 + j * k;
    s.add(start, k, C, false);
    for (int t = 0; t < k; ++t) s.add(start + t, 1, C, true);
  }
  s.add(1 + iterations * k, 1, B, true);
  auto a = std::move(s).finish(Construction::npo_tight, prm, k);
  a.period_length = k;
  a.target = PolicyId::npo;
  a.claimed_target = Rational(static_cast<long long>(iterations) * C + B);
  a.claimed_reference = Rational(static_cast<long long>(iterations) * k * C + B);
  return a;
}

AdversarialTrace kgeb(const ConstructionParams& prm) {
  const int B = prm.buffer;
  require(B >= 3, "KGEB needs B >= 3");
  require(prm.k >= B, "KGEB needs k >= B");
  const int period = 2 * B - 2;
  Schedule s;
  for (int j = 0; j < prm.periods; ++j) {
    const int start = 1 + j * period;
    s.add(start, B, 1, false);
    s.add(start, 1, 1, true);
    for (int t = 1; t <= B - 3; ++t) s.add(start + t, 1, 1, true);
    s.add(start + B - 2, 1, B, true);
  }
  auto a = std::move(s).finish(Construction::kgeb, prm, prm.k);
  a.period_length = period;
  a.target = PolicyId::po;
  set_per_period(a, Rational(B), Rational(2LL * B - 2));
  return a;
}

AdversarialTrace po_kltb(const ConstructionParams& prm) {
  const int B = prm.buffer;
  const int k = prm.k;
  require(k >= 2 && k < B, "PO_KLTB needs 2 <= k < B");
  // alpha = 1 - 1/k of the first burst needs one cycle; the rest need k.
  const long long light = static_cast<long long>(B) * (k - 1) / k;
  const long long heavy = B - light;
  std::vector<std::pair<long long, long long>> refills;  // (offset, count)
  long long offset = light;
  long long denom = static_cast<long long>(k) * k;
  for (;;) {
    const long long r = static_cast<long long>(B) * (k - 1) / denom;
    if (r == 0) break;
    refills.emplace_back(offset, r);
    offset += r;
    denom *= k;
  }
  const long long closing = offset;
  const int period = static_cast<int>(closing + B);

  Schedule s;
  for (int j = 0; j < prm.periods; ++j) {
    const int start = 1 + j * period;
    s.add(start, k, heavy, false);
    s.add(start, 1, light, true);
    for (const auto& [off, r] : refills) s.add(start + static_cast<int>(off), 1, r, true);
    s.add(start + static_cast<int>(closing), 1, B, true);
  }
  auto a = std::move(s).finish(Construction::po_kltb, prm, k);
  a.period_length = period;
  a.target = PolicyId::po;
  set_per_period(a, Rational(static_cast<long long>(B) * (k + 1), k), Rational(2LL * B));
  if (static_cast<long long>(B) * (k - 1) % k != 0) a.notes.push_back("alpha*B floored");
  a.notes.push_back("geometric refills truncated after " + std::to_string(refills.size()) + " rounds");
  return a;
}

AdversarialTrace lpo_kltb(const ConstructionParams& prm) {
  const int B = prm.buffer;
  const int k = prm.k;
  require(k >= 2 && k < B, "LPO_KLTB needs 2 <= k < B");
  // alpha + beta = (k-1)/k, split evenly.
  const long long light = static_cast<long long>(B) * (k - 1) / (2LL * k);
  const long long refill = light;
  require(light >= 1, "LPO_KLTB needs B(k-1)/(2k) >= 1");
  const long long heavy = B - light;
  const long long closing = light + refill;
  const int period = static_cast<int>(closing + B);

  Schedule s;
  for (int j = 0; j < prm.periods; ++j) {
    const int start = 1 + j * period;
    s.add(start, k, heavy, false);
    s.add(start, 1, light, true);
    s.add(start + static_cast<int>(light), 1, refill, true);
    s.add(start + static_cast<int>(closing), 1, B, true);
  }
  auto a = std::move(s).finish(Construction::lpo_kltb, prm, k);
  a.period_length = period;
  a.target = PolicyId::lpo;
  set_per_period(a, Rational(B), Rational(static_cast<long long>(B) * (2LL * k - 1), k));
  if (static_cast<long long>(B) * (k - 1) % (2LL * k) != 0) a.notes.push_back("alpha*B and beta*B floored");
  return a;
}

AdversarialTrace log_recursive(const ConstructionParams& prm) {
  const int B = prm.buffer;
  const int n = prm.level;
  require(B >= 6, "LOG_RECURSIVE needs B >= 6");
  require(n >= 0, "LOG_RECURSIVE needs level >= 0");
  const long long top = log_recursive_heavy_work(B, n);
  require(prm.k >= top, "LOG_RECURSIVE level " + std::to_string(n) + " needs k >= " + std::to_string(top));

  // Level bursts from the outermost (n) to the innermost (0); each arrives
  // when the previous heavy head has just been transmitted.
  long long span = 0;
  for (int lv = n; lv >= 0; --lv) span += log_recursive_heavy_work(B, lv);
  const long long period_ll = span + 2LL * B - 1;
  require(period_ll < (1LL << 30), "LOG_RECURSIVE period too long");
  const int period = static_cast<int>(period_ll);

  Schedule s;
  for (int j = 0; j < prm.periods; ++j) {
    int t = 1 + j * period;
    for (int lv = n; lv >= 0; --lv) {
      const long long shift = lv == 0 ? 0 : log_recursive_heavy_work(B, lv - 1);
      const long long heavy = log_recursive_heavy_work(B, lv);
      s.add(t, static_cast<int>(heavy), 1, false);
      for (int w = B; w >= 2; --w) s.add(t, static_cast<int>(w + shift), 1, true);
      t += static_cast<int>(heavy);
    }
    // Single light arrivals that replace the head as it is processed, then a
    // full burst that only the offline schedule has room for.
    for (int i = 0; i < B - 1; ++i) s.add(t + i, 1, 1, true);
    s.add(t + B - 1, 1, B, true);
  }
  auto a = std::move(s).finish(Construction::log_recursive, prm, prm.k);
  a.period_length = period;
  a.target = PolicyId::po;
  set_per_period(a, Rational(static_cast<long long>(B) + 1 + n),
                 Rational(3LL * B + static_cast<long long>(n) * (B - 1)));
  a.notes.push_back("light works are 2..B above the level shift, largest next to the heavy head");
  return a;
}

}  // namespace

std::string_view to_string(Construction c) {
  for (const auto& [id, name] : kNames) {
    if (id == c) return name;
  }
  return "?";
}

std::optional<Construction> parse_construction(std::string_view name) {
  for (const auto& [id, n] : kNames) {
    if (n == name) return id;
  }
  return std::nullopt;
}

const std::vector<Construction>& all_constructions() {
  static const std::vector<Construction> all{Construction::po_vs_lpo, Construction::lpo_vs_po,
                                             Construction::npo_tight, Construction::kgeb,
                                             Construction::po_kltb,   Construction::lpo_kltb,
                                             Construction::log_recursive};
  return all;
}

long long log_recursive_heavy_work(int buffer, int level) {
  long long shift = 0;
  long long heavy = 0;
  for (int lv = 0; lv <= level; ++lv) {
    heavy = static_cast<long long>(buffer - 1) * (buffer - 2 + shift);
    shift = heavy;
  }
  return heavy;
}

AdversarialTrace gen_adversarial(Construction construction, const ConstructionParams& params) {
  require(params.buffer >= 1, "B must be >= 1");
  require(params.cores >= 1, "C must be >= 1");
  require(params.periods >= 1, "periods must be >= 1");
  require(construction == Construction::npo_tight || params.cores == 1,
          std::string(to_string(construction)) + " is defined for a single core");
  AdversarialTrace a;
  switch (construction) {
    case Construction::po_vs_lpo: a = po_vs_lpo(params); break;
    case Construction::lpo_vs_po: a = lpo_vs_po(params); break;
    case Construction::npo_tight: a = npo_tight(params); break;
    case Construction::kgeb: a = kgeb(params); break;
    case Construction::po_kltb: a = po_kltb(params); break;
    case Construction::lpo_kltb: a = lpo_kltb(params); break;
    case Construction::log_recursive: a = log_recursive(params); break;
  }
  annotate(a);
  return a;
}

}  // namespace fifobuf
