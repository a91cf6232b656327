#include "gcp/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace gcp {

ReportFormat report_format_from_name(const std::string& name) {
    if (name == "csv") return ReportFormat::kCsv;
    if (name == "jsonlines") return ReportFormat::kJsonLines;
    throw std::invalid_argument("unknown report format '" + name + "'");
}

namespace {

std::string fmt_ms(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::fixed << v;
    return os.str();
}

}  // namespace

std::string serialize_reports(const std::vector<RunReport>& reports, ReportFormat format) {
    std::ostringstream os;
    if (format == ReportFormat::kJsonLines) {
        os << R"({"schema":"gcp-report","version":1})" << '\n';
        for (const auto& r : reports) {
            nlohmann::json j;
            j["algorithm"] = r.algorithm;
            j["io_reads"] = r.io_reads;
            j["dominance_checks"] = r.dominance_checks;
            j["wall_ms"] = r.wall_ms;
            j["result_size"] = r.result_size;
            j["seed"] = r.seed;
            j["runs"] = r.runs;
            for (const auto& [k, v] : r.config) j["config"][k] = v;
            os << j.dump() << '\n';
        }
        return os.str();
    }

    os << "# gcp-report v1\n";
    std::vector<std::string> keys;
    for (const auto& r : reports) {
        for (const auto& [k, v] : r.config) {
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
        }
    }
    os << "algorithm,io_reads,dominance_checks,wall_ms,result_size,seed,runs";
    for (const auto& k : keys) os << ',' << k;
    os << '\n';
    for (const auto& r : reports) {
        os << r.algorithm << ',' << r.io_reads << ',' << r.dominance_checks << ',' << fmt_ms(r.wall_ms)
           << ',' << r.result_size << ',' << r.seed << ',' << r.runs;
        for (const auto& k : keys) {
            os << ',';
            for (const auto& [ck, cv] : r.config) {
                if (ck == k) {
                    os << cv;
                    break;
                }
            }
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace gcp
