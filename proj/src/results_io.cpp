#include "fifobuf/results_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace fifobuf {

std::string format_ratio(double ratio) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", ratio);
  return buf;
}

void write_results_csv(std::ostream& out, const ResultTable& table) {
  out << "policy,k,B,C,seed,transmitted,reference,ratio\n";
  for (const auto& r : table.rows) {
    out << r.policy << ',' << r.k << ',' << r.buffer << ',' << r.cores << ',' << r.seed << ',' << r.transmitted
        << ',' << r.reference << ',' << format_ratio(r.ratio) << '\n';
  }
  for (const auto& a : table.aggregates) {
    out << a.policy << ',' << a.k << ',' << a.buffer << ',' << a.cores << ",agg," << a.transmitted << ','
        << a.reference << ',' << format_ratio(a.mean_ratio) << '\n';
  }
}

void write_results_csv(const std::filesystem::path& path, const ResultTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_results_csv(out, table);
  if (!out) throw std::runtime_error("error writing " + path.string());
}

std::vector<std::filesystem::path> emit_plot_data(const ResultTable& table, const std::string& prefix) {
  if (table.aggregates.empty() && !table.rows.empty()) {
    throw std::invalid_argument("result table has no aggregates");
  }
  std::vector<std::filesystem::path> written;
  nlohmann::json manifest = {{"param", std::string(to_string(table.param))},
                             {"reference", table.reference},
                             {"columns", {"x", "mean_ratio", "std_ratio"}},
                             {"series", nlohmann::json::array()}};
  for (const auto& policy : table.policies) {
    std::vector<const AggregateRow*> series;
    for (const auto& a : table.aggregates) {
      if (a.policy == policy) series.push_back(&a);
    }
    std::stable_sort(series.begin(), series.end(),
                     [](const AggregateRow* a, const AggregateRow* b) { return a->x < b->x; });
    const std::filesystem::path path = prefix + "_" + policy + ".dat";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    for (const auto* a : series) {
      out << a->x << ' ' << format_ratio(a->mean_ratio) << ' ' << format_ratio(a->std_ratio) << '\n';
    }
    if (!out) throw std::runtime_error("error writing " + path.string());
    written.push_back(path);
    manifest["series"].push_back({{"policy", policy}, {"file", path.filename().string()}});
  }
  const std::filesystem::path mpath = prefix + "_manifest.json";
  std::ofstream mout(mpath, std::ios::binary);
  if (!mout) throw std::runtime_error("cannot open " + mpath.string() + " for writing");
  mout << manifest.dump(2) << '\n';
  if (!mout) throw std::runtime_error("error writing " + mpath.string());
  written.push_back(mpath);
  return written;
}

}  // namespace fifobuf
