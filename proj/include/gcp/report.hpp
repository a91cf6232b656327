// Run reports and their CSV / JSON-lines serializations.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gcp {

struct RunReport {
    std::string algorithm;
    std::uint64_t io_reads = 0;
    std::uint64_t dominance_checks = 0;
    double wall_ms = 0.0;  // excluded from determinism contracts
    std::size_t result_size = 0;
    std::uint64_t seed = 0;
    std::size_t runs = 1;
    // Config echo as ordered key=value pairs.
    std::vector<std::pair<std::string, std::string>> config;
};

enum class ReportFormat { kCsv, kJsonLines };

ReportFormat report_format_from_name(const std::string& name);

// Serializes reports with a version header line.  All rows share the
// union of config keys so the CSV stays rectangular.
std::string serialize_reports(const std::vector<RunReport>& reports, ReportFormat format);

}  // namespace gcp
