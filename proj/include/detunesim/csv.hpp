// csv.hpp — deterministic CSV output: header row, 17-significant-digit
// floats, '.' decimal separator, LF endings, atomic rename.

#pragma once

#include "detunesim/analysis.hpp"
#include "detunesim/types.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace dsim::cli {

// Throws SimError(IoError) on failure and SimError(ValidationError) on
// empty data; no file is left behind in either case.
void write_csv(const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows,
               const std::filesystem::path& path);

// Columns: t, then every series in insertion order.
void write_trajectory_csv(const Trajectory& trajectory,
                          const std::filesystem::path& path);

// Columns: the axes, then metric (string) and value.
void write_sweep_csv(const analysis::SweepResult& result,
                     const std::filesystem::path& path);

} // namespace dsim::cli
