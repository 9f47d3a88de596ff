#include "fifobuf/mmpp.hpp"

#include <random>
#include <stdexcept>

namespace fifobuf {

void MmppParams::validate() const {
  if (!(lambda_off >= 0.0)) throw std::invalid_argument("lambda_off must be >= 0");
  if (on_count_min < 0 || on_count_min > on_count_max) {
    throw std::invalid_argument("ON count bounds must satisfy 0 <= min <= max");
  }
  if (!(p_on_to_off > 0.0 && p_on_to_off <= 1.0) || !(p_off_to_on > 0.0 && p_off_to_on <= 1.0)) {
    throw std::invalid_argument("transition probabilities must lie in (0, 1]");
  }
  if (k < 1) throw std::invalid_argument("k must be >= 1");
}

double MmppParams::effective_rate() const {
  const double on = stationary_on();
  return on * mean_on_count() + (1.0 - on) * lambda_off;
}

MmppSample gen_mmpp_with_states(const MmppParams& params, int slots, std::uint64_t seed) {
  params.validate();
  if (slots < 1) throw std::invalid_argument("slot count must be >= 1");

  std::mt19937_64 rng(seed);
  std::poisson_distribution<int> off_count(params.lambda_off);
  std::uniform_int_distribution<int> on_count(params.on_count_min, params.on_count_max);
  std::uniform_int_distribution<int> work(1, params.k);
  std::bernoulli_distribution leave_on(params.p_on_to_off);
  std::bernoulli_distribution leave_off(params.p_off_to_on);

  MmppSample sample;
  auto& trace = sample.trace;
  trace.k = params.k;
  trace.generator = "mmpp";
  trace.seed = seed;
  trace.params = {{"lambda_off", params.lambda_off},   {"on_count_min", params.on_count_min},
                  {"on_count_max", params.on_count_max}, {"p_on_to_off", params.p_on_to_off},
                  {"p_off_to_on", params.p_off_to_on},   {"k", params.k},
                  {"slots", slots}};
  sample.on.reserve(static_cast<std::size_t>(slots));

  bool on = false;
  for (int slot = 1; slot <= slots; ++slot) {
    sample.on.push_back(on);
    const int n = on ? on_count(rng) : (params.lambda_off > 0.0 ? off_count(rng) : 0);
    for (int i = 0; i < n; ++i) trace.arrivals.push_back({slot, work(rng)});
    on = on ? !leave_on(rng) : leave_off(rng);
  }
  return sample;
}

Trace gen_mmpp(const MmppParams& params, int slots, std::uint64_t seed) {
  return gen_mmpp_with_states(params, slots, seed).trace;
}

}  // namespace fifobuf
