#include "wncs/csv.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "wncs/errors.hpp"

namespace wncs {

const std::string& results_csv_header() {
    static const std::string header =
        "policy,estimator,control_mode,axis,axis_value,seed,K,violation_prob,norm_total_cost,norm_updating_cost,"
        "norm_control_cost";
    return header;
}

std::string format_result_row(const ResultRow& row) {
    char buf[512];
    const Metrics& m = row.metrics;
    std::snprintf(buf, sizeof buf, "%s,%s,%s,%s,%.6g,%" PRIu64 ",%" PRId64 ",%.6g,%.6g,%.6g,%.6g", row.policy.c_str(),
                  row.estimator.c_str(), row.control_mode.c_str(), row.axis.c_str(), row.axis_value, row.seed, row.K,
                  m.violation_prob, m.norm_total_cost, m.norm_updating_cost, m.norm_control_cost);
    return buf;
}

std::string format_results_csv(std::span<const ResultRow> rows) {
    std::string out = results_csv_header() + "\n";
    for (const auto& r : rows) out += format_result_row(r) + "\n";
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw ConfigError("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw ConfigError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

void write_results_csv(const std::filesystem::path& path, std::span<const ResultRow> rows) {
    write_file_atomic(path, format_results_csv(rows));
}

}  // namespace wncs
