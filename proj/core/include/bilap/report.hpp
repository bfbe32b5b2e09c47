#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace bilap {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

/// "%.17g" — round-trip formatting used by every CSV emitter.
std::string format_full(double x);

using FieldValue = std::variant<double, long long, bool, std::string>;

/// One result row; field order is preserved into CSV/JSON.
struct ReportRecord {
    std::vector<std::pair<std::string, FieldValue>> fields;

    ReportRecord& add(std::string name, double v) {
        fields.emplace_back(std::move(name), v);
        return *this;
    }
    ReportRecord& add(std::string name, long long v) {
        fields.emplace_back(std::move(name), v);
        return *this;
    }
    ReportRecord& add(std::string name, int v) {
        return add(std::move(name), static_cast<long long>(v));
    }
    ReportRecord& add(std::string name, bool v) {
        fields.emplace_back(std::move(name), v);
        return *this;
    }
    ReportRecord& add(std::string name, std::string v) {
        fields.emplace_back(std::move(name), FieldValue(std::move(v)));
        return *this;
    }
};

struct Verdict {
    std::string name;
    bool pass = false;
    double margin = 0.0;
    bool has_margin = true;
};

/// Structured result of one CLI run: command echo, input echo, result
/// records, verdicts with margins and the tool version. The wall clock is
/// serialized only on request so that identical configs produce
/// byte-identical reports.
struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<ReportRecord> records;
    std::vector<Verdict> verdicts;
    std::vector<std::string> errors;
    double wall_clock_seconds = 0.0;

    bool all_passed() const;
};

/// Records table (plus an `error` column when errors are present),
/// RFC 4180 quoting, numbers at 17 significant digits.
std::string to_csv(const Report& report);

/// Full structured report as a single JSON object with a "records" array.
std::string to_json(const Report& report, bool include_timing = false);

} // namespace bilap
