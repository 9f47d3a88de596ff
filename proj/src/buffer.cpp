#include "fifobuf/buffer.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fifobuf {

BufferState::BufferState(int capacity) : capacity_(capacity) {
  if (capacity < 1) throw std::invalid_argument("buffer capacity must be >= 1");
}

std::optional<std::size_t> BufferState::index_of(PacketId id) const {
  for (std::size_t i = 0; i < queue_.size(); ++i) {
    if (queue_[i].id == id) return i;
  }
  return std::nullopt;
}

const Packet* BufferState::find(PacketId id) const {
  const auto i = index_of(id);
  return i ? &queue_[*i] : nullptr;
}

Packet* BufferState::find(PacketId id) {
  const auto i = index_of(id);
  return i ? &queue_[*i] : nullptr;
}

void BufferState::admit(const Packet& p) {
  if (full()) throw std::logic_error("admit into a full buffer");
  queue_.push_back(p);
}

Packet BufferState::remove(PacketId id) {
  const auto i = index_of(id);
  if (!i) throw std::logic_error("packet " + std::to_string(id) + " is not buffered");
  Packet p = queue_[*i];
  queue_.erase(queue_.begin() + static_cast<std::ptrdiff_t>(*i));
  return p;
}

BufferStats buffer_stats(const BufferState& state) {
  BufferStats s;
  const auto& q = state.packets();
  s.occupancy = static_cast<int>(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    s.total_residual += q[i].residual_work;
    if (!s.first_max_index || q[i].residual_work > s.max_residual) {
      s.max_residual = q[i].residual_work;
      s.first_max_index = i;
    }
  }
  return s;
}

}  // namespace fifobuf
