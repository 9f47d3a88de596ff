#pragma once

#include <cstdint>

namespace fifobuf {

using PacketId = std::int64_t;

/// A unit-sized packet that must receive `required_work` processing cycles
/// before it can be transmitted.
struct Packet {
  PacketId id = 0;
  int arrival_slot = 1;
  int required_work = 1;
  int residual_work = 1;
  // Set only by the lazy policy while the packet belongs to a drain.
  bool marked = false;

  static Packet arriving(PacketId id, int slot, int work) {
    return Packet{id, slot, work, work, false};
  }

  bool operator==(const Packet&) const = default;
};

}  // namespace fifobuf
