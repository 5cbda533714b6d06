#include "detunesim/csv.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

namespace dsim::cli {

namespace {

// write to <path>.tmp, fsync-free atomic rename; never leaves a partial file
void commit_text(const std::string& text, const std::filesystem::path& path) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw SimError(ErrorCode::IoError, "cannot open " + tmp.string());
        out.write(text.data(), std::streamsize(text.size()));
        if (!out)
            throw SimError(ErrorCode::IoError, "short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw SimError(ErrorCode::IoError,
                       "rename to " + path.string() + " failed: " + ec.message());
    }
}

} // namespace

void write_csv(const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows,
               const std::filesystem::path& path) {
    if (header.empty() || rows.empty())
        throw SimError(ErrorCode::ValidationError,
                       "refusing to write empty CSV " + path.string());
    std::string text;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c) text += ',';
        text += header[c];
    }
    text += '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw SimError(ErrorCode::DimensionMismatch,
                           "CSV row width does not match header");
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) text += ',';
            text += format_double(row[c]);
        }
        text += '\n';
    }
    commit_text(text, path);
}

void write_trajectory_csv(const Trajectory& trajectory,
                          const std::filesystem::path& path) {
    if (trajectory.times.empty() || trajectory.series.empty())
        throw SimError(ErrorCode::ValidationError,
                       "refusing to write empty trajectory " + path.string());
    std::vector<std::string> header{"t"};
    for (const auto& [name, values] : trajectory.series) header.push_back(name);
    std::vector<std::vector<double>> rows(trajectory.times.size());
    for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
        rows[i].reserve(header.size());
        rows[i].push_back(trajectory.times[i]);
        for (const auto& [name, values] : trajectory.series)
            rows[i].push_back(values[i]);
    }
    write_csv(header, rows, path);
}

void write_sweep_csv(const analysis::SweepResult& result,
                     const std::filesystem::path& path) {
    if (result.rows.empty())
        throw SimError(ErrorCode::ValidationError,
                       "refusing to write empty sweep " + path.string());
    std::string text;
    for (const auto& name : result.axis_names) text += name + ",";
    text += "metric,value\n";
    for (const auto& row : result.rows) {
        for (double v : row.point) text += format_double(v) + ",";
        text += row.metric + "," + format_double(row.value) + "\n";
    }
    commit_text(text, path);
}

} // namespace dsim::cli
