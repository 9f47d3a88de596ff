#pragma once

#include <filesystem>
#include <iosfwd>

#include "fifobuf/trace.hpp"

namespace fifobuf {

// JSON-lines trace files: one header record
//   {"k": int, "generator": string, "params": {...}, "seed": int}
// followed by one {"slot": int, "work": int} record per packet.

void write_trace(std::ostream& out, const Trace& trace);
void write_trace_file(const std::filesystem::path& path, const Trace& trace);

/// Throws std::runtime_error with a line number on malformed input.
Trace read_trace(std::istream& in);
/// Throws std::runtime_error naming the path when it cannot be opened.
Trace read_trace_file(const std::filesystem::path& path);

}  // namespace fifobuf
