#include "fifobuf/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace fifobuf {

namespace {

// Buffer contents as residual work, HOL first. Packet identity does not
// affect throughput, so equal sequences share a memo entry.
using Queue = std::vector<int>;

constexpr int kReject = 0;
constexpr int kAccept = 1;
constexpr int kEvictBase = 2;  // kEvictBase + j: evict position j, then accept

class Search {
 public:
  Search(const Trace& trace, int buffer, int cores, const OracleLimits& limits)
      : arr_(trace.arrivals), buffer_(buffer), cores_(cores), limits_(limits) {}

  long long best(std::size_t idx, const Queue& q) {
    if (idx == arr_.size()) return static_cast<long long>(q.size());
    const std::string key = encode(idx, q);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.value;
    if (++explored_ > limits_.max_states) {
      throw std::length_error("oracle state limit exceeded (" + std::to_string(limits_.max_states) + ")");
    }

    Entry e{advance(idx + 1, q, arr_[idx].slot), kReject};
    const int work = arr_[idx].work;
    if (static_cast<int>(q.size()) < buffer_) {
      Queue next = q;
      next.push_back(work);
      const long long v = advance(idx + 1, std::move(next), arr_[idx].slot);
      if (v > e.value) e = {v, kAccept};
    } else if (limits_.allow_pushout) {
      for (std::size_t j = 0; j < q.size(); ++j) {
        if (j > 0 && q[j] == q[j - 1]) continue;  // same resulting queue shape
        Queue next = q;
        next.erase(next.begin() + static_cast<std::ptrdiff_t>(j));
        next.push_back(work);
        const long long v = advance(idx + 1, std::move(next), arr_[idx].slot);
        if (v > e.value) e = {v, kEvictBase + static_cast<int>(j)};
      }
    }
    memo_.emplace(key, e);
    return e.value;
  }

  std::vector<bool> reconstruct_mask() {
    std::vector<bool> mask;
    Queue q;
    std::size_t idx = 0;
    while (idx < arr_.size()) {
      best(idx, q);
      const int choice = memo_.at(encode(idx, q)).choice;
      mask.push_back(choice == kAccept);
      if (choice == kAccept) q.push_back(arr_[idx].work);
      const int slot = arr_[idx].slot;
      ++idx;
      if (idx < arr_.size() && arr_[idx].slot == slot) continue;
      const int until = idx < arr_.size() ? arr_[idx].slot : slot;
      for (int t = slot; t < until && !q.empty(); ++t) process(q);
    }
    return mask;
  }

  std::uint64_t explored() const { return explored_; }

 private:
  struct Entry {
    long long value;
    int choice;
  };

  // One processing and transmission phase; returns packets transmitted.
  long long process(Queue& q) const {
    const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(cores_), q.size());
    for (std::size_t i = 0; i < n; ++i) --q[i];
    const auto before = q.size();
    q.erase(std::remove(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(n), 0),
            q.begin() + static_cast<std::ptrdiff_t>(n));
    return static_cast<long long>(before - q.size());
  }

  // Finishes slot `slot` if packet `idx` belongs to a later slot, runs the
  // idle slots up to its arrival, then continues the search.
  long long advance(std::size_t idx, Queue q, int slot) {
    if (idx < arr_.size() && arr_[idx].slot == slot) return best(idx, q);
    if (idx == arr_.size()) return static_cast<long long>(q.size());
    long long gained = 0;
    for (int t = slot; t < arr_[idx].slot && !q.empty(); ++t) gained += process(q);
    return gained + best(idx, q);
  }

  static std::string encode(std::size_t idx, const Queue& q) {
    std::string key(sizeof(std::uint32_t) * (q.size() + 1), '\0');
    const auto i32 = static_cast<std::uint32_t>(idx);
    std::copy_n(reinterpret_cast<const char*>(&i32), sizeof i32, key.data());
    std::copy_n(reinterpret_cast<const char*>(q.data()), sizeof(int) * q.size(), key.data() + sizeof i32);
    return key;
  }

  const std::vector<Arrival>& arr_;
  int buffer_;
  int cores_;
  OracleLimits limits_;
  std::unordered_map<std::string, Entry> memo_;
  std::uint64_t explored_ = 0;
};

}  // namespace

OracleResult offline_opt_bruteforce(const Trace& trace, int buffer, int cores, const OracleLimits& limits) {
  if (buffer < 1 || cores < 1) throw std::invalid_argument("buffer and cores must be >= 1");
  require_valid(trace);
  if (trace.size() > limits.max_packets) {
    throw std::length_error("oracle refuses " + std::to_string(trace.size()) + " packets (limit " +
                            std::to_string(limits.max_packets) + ")");
  }
  Search search(trace, buffer, cores, limits);
  OracleResult r;
  r.throughput = search.best(0, {});
  if (!limits.allow_pushout) r.accept_mask = search.reconstruct_mask();
  r.explored = search.explored();
  return r;
}

}  // namespace fifobuf
