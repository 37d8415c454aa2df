#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "wncs/simulation.hpp"

namespace wncs {

struct ResultRow {
    std::string policy;
    std::string estimator;
    std::string control_mode;
    std::string axis = "none";
    double axis_value = 0.0;
    std::uint64_t seed = 0;
    std::int64_t K = 0;
    Metrics metrics;
};

const std::string& results_csv_header();
/// Reals use 6 significant digits (%.6g).
std::string format_result_row(const ResultRow& row);
std::string format_results_csv(std::span<const ResultRow> rows);

/// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
void write_results_csv(const std::filesystem::path& path, std::span<const ResultRow> rows);

}  // namespace wncs
