#pragma once

// Machine-readable command reports, schema "report_v1".  Serialization is
// stable: identical inputs produce byte-identical output (no timestamps, no
// environment-dependent fields), and parse(serialize(r)) == r.

#include <array>
#include <charconv>
#include <string>

#include <json.hpp>

#include "ghz/ontology.hpp"

namespace ghz {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "report_v1";

enum class Format { Text, Json, Csv };

struct Report {
    std::string command;
    json inputs = json::object();
    json results = json::object();
    bool pass = true;
    json tolerances = json::object();
    std::string tool_version = kToolVersion;

    json to_json() const {
        json j;
        j["schema"] = kReportSchema;
        j["command"] = command;
        j["tool_version"] = tool_version;
        j["inputs"] = inputs;
        j["tolerances"] = tolerances;
        j["pass"] = pass;
        j["results"] = results;
        return j;
    }

    static Report from_json(const json& j) {
        Report r;
        r.command = j.at("command").get<std::string>();
        r.tool_version = j.at("tool_version").get<std::string>();
        r.inputs = j.at("inputs");
        r.tolerances = j.at("tolerances");
        r.pass = j.at("pass").get<bool>();
        r.results = j.at("results");
        return r;
    }

    friend bool operator==(const Report& a, const Report& b) {
        return a.command == b.command && a.inputs == b.inputs && a.results == b.results &&
               a.pass == b.pass && a.tolerances == b.tolerances && a.tool_version == b.tool_version;
    }
};

// Shortest round-trip decimal form, used everywhere text or CSV prints a
// double so output stays byte-stable.
inline std::string fmt_double(double v) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

// RFC-style CSV field quoting.
inline std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

// One CSV cell from a JSON scalar.
inline std::string csv_cell(const json& v) {
    if (v.is_string()) return csv_quote(v.get<std::string>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) return fmt_double(v.get<double>());
    if (v.is_null()) return "";
    return csv_quote(v.dump());
}

}  // namespace ghz
