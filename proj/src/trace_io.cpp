#include "fifobuf/trace_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace fifobuf {

void write_trace(std::ostream& out, const Trace& trace) {
  nlohmann::json header = {{"k", trace.k ? *trace.k : trace.max_work()},
                           {"generator", trace.generator},
                           {"params", trace.params},
                           {"seed", trace.seed}};
  out << header.dump() << '\n';
  for (const auto& a : trace.arrivals) {
    out << "{\"slot\":" << a.slot << ",\"work\":" << a.work << "}\n";
  }
}

void write_trace_file(const std::filesystem::path& path, const Trace& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_trace(out, trace);
  if (!out) throw std::runtime_error("error writing " + path.string());
}

Trace read_trace(std::istream& in) {
  Trace trace;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!rec.is_object()) throw std::runtime_error("line " + std::to_string(lineno) + ": expected an object");
    try {
      if (!have_header) {
        if (!rec.contains("k")) throw std::runtime_error("missing header record");
        trace.k = rec.at("k").get<int>();
        trace.generator = rec.value("generator", std::string("unknown"));
        trace.params = rec.value("params", nlohmann::json::object());
        trace.seed = rec.value("seed", std::uint64_t{0});
        have_header = true;
        continue;
      }
      trace.arrivals.push_back({rec.at("slot").get<int>(), rec.at("work").get<int>()});
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": " + e.what());
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!have_header) throw std::runtime_error("empty trace file (no header record)");
  return trace;
}

Trace read_trace_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file " + path.string());
  try {
    return read_trace(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

}  // namespace fifobuf
