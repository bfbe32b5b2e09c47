#include "bilap/report.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

namespace bilap {

namespace {

using ordered_json = nlohmann::ordered_json;

// RFC 4180: quote when the field contains comma, quote or a line break.
std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string field_to_string(const FieldValue& v) {
    if (std::holds_alternative<double>(v)) return format_full(std::get<double>(v));
    if (std::holds_alternative<long long>(v))
        return std::to_string(std::get<long long>(v));
    if (std::holds_alternative<bool>(v)) return std::get<bool>(v) ? "true" : "false";
    return std::get<std::string>(v);
}

} // namespace

std::string format_full(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

bool Report::all_passed() const {
    if (!errors.empty()) return false;
    for (const auto& v : verdicts)
        if (!v.pass) return false;
    return true;
}

std::string to_csv(const Report& report) {
    // header: union of field names in first-appearance order
    std::vector<std::string> columns;
    for (const auto& rec : report.records) {
        for (const auto& [name, value] : rec.fields) {
            bool known = false;
            for (const auto& c : columns)
                if (c == name) {
                    known = true;
                    break;
                }
            if (!known) columns.push_back(name);
        }
    }
    const bool with_errors = !report.errors.empty();

    std::string out;
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(columns[i]);
    }
    if (with_errors) {
        if (!columns.empty()) out += ',';
        out += "error";
    }
    out += "\r\n";

    for (const auto& rec : report.records) {
        for (size_t i = 0; i < columns.size(); ++i) {
            if (i) out += ',';
            for (const auto& [name, value] : rec.fields) {
                if (name == columns[i]) {
                    out += csv_escape(field_to_string(value));
                    break;
                }
            }
        }
        if (with_errors) out += ',';
        out += "\r\n";
    }
    for (const auto& err : report.errors) {
        for (size_t i = 0; i < columns.size(); ++i) out += ',';
        out += csv_escape(err);
        out += "\r\n";
    }
    return out;
}

std::string to_json(const Report& report, bool include_timing) {
    ordered_json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["tool_version"] = std::string(kToolVersion);
    doc["command"] = report.command;
    ordered_json inputs = ordered_json::object();
    for (const auto& [k, v] : report.inputs) inputs[k] = v;
    doc["inputs"] = inputs;

    ordered_json records = ordered_json::array();
    for (const auto& rec : report.records) {
        ordered_json row = ordered_json::object();
        for (const auto& [name, value] : rec.fields) {
            if (std::holds_alternative<double>(value))
                row[name] = std::get<double>(value);
            else if (std::holds_alternative<long long>(value))
                row[name] = std::get<long long>(value);
            else if (std::holds_alternative<bool>(value))
                row[name] = std::get<bool>(value);
            else
                row[name] = std::get<std::string>(value);
        }
        records.push_back(std::move(row));
    }
    doc["records"] = std::move(records);

    ordered_json verdicts = ordered_json::array();
    for (const auto& v : report.verdicts) {
        ordered_json row = ordered_json::object();
        row["name"] = v.name;
        row["pass"] = v.pass;
        if (v.has_margin)
            row["margin"] = v.margin;
        else
            row["margin"] = nullptr;
        verdicts.push_back(std::move(row));
    }
    doc["verdicts"] = std::move(verdicts);
    doc["errors"] = report.errors;
    doc["all_passed"] = report.all_passed();
    if (include_timing) doc["wall_clock_seconds"] = report.wall_clock_seconds;
    return doc.dump(2) + "\n";
}

} // namespace bilap
