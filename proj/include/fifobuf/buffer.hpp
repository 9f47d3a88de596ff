#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <span>

#include "fifobuf/packet.hpp"

namespace fifobuf {

/// FIFO buffer contents. The head of `queue` is the head-of-line packet and
/// the tail is the most recent admission.
class BufferState {
 public:
  explicit BufferState(int capacity);

  int capacity() const { return capacity_; }
  int occupancy() const { return static_cast<int>(queue_.size()); }
  bool full() const { return occupancy() >= capacity_; }
  bool empty() const { return queue_.empty(); }

  const std::deque<Packet>& packets() const { return queue_; }
  std::deque<Packet>& packets() { return queue_; }

  const Packet* find(PacketId id) const;
  Packet* find(PacketId id);
  std::optional<std::size_t> index_of(PacketId id) const;

  /// Appends at the tail. Throws std::logic_error when the buffer is full.
  void admit(const Packet& p);
  /// Removes the packet with the given id; returns it.
  Packet remove(PacketId id);

 private:
  int capacity_;
  std::deque<Packet> queue_;
};

/// Aggregate view of the buffer used by the push-out rules and the
/// work-reduction invariant.
struct BufferStats {
  int occupancy = 0;
  long long total_residual = 0;  // W_t
  int max_residual = 0;          // M_t
  std::optional<std::size_t> first_max_index;  // 0-based from HOL

  bool operator==(const BufferStats&) const = default;
};

BufferStats buffer_stats(const BufferState& state);

}  // namespace fifobuf
