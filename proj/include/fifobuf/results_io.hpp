#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fifobuf/sweep.hpp"

namespace fifobuf {

/// Ratio rendered with six fractional digits.
std::string format_ratio(double ratio);

/// Header `policy,k,B,C,seed,transmitted,reference,ratio`, one row per run,
/// then one row per (point, policy) with seed "agg" and the mean ratio.
void write_results_csv(std::ostream& out, const ResultTable& table);
void write_results_csv(const std::filesystem::path& path, const ResultTable& table);

/// Writes `<prefix>_<policy>.dat` series (`x mean_ratio std_ratio`, x
/// ascending) and `<prefix>_manifest.json`. Returns the files written.
std::vector<std::filesystem::path> emit_plot_data(const ResultTable& table,
                                                  const std::string& prefix);

}  // namespace fifobuf
