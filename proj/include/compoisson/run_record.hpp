// Copyright 2026 the compoisson authors
// SPDX-License-Identifier: Apache-2.0
//
// RunRecord: one CLI evaluation result in machine-readable form, with CSV and
// JSON encodings that round-trip byte-for-byte. Floating-point fields print
// with 17 significant digits so parsing recovers the exact double.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <compoisson/types.hpp>

namespace compoisson {

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Decimal string for exp(log_value): the plain 17-digit form while the value
// is representable, otherwise an exact-form mantissa/exponent decimal built
// from the log (such values do not fit in a double but the string is still
// full precision for what the evaluator knows).
inline std::string format_value_string(const ZResult& z) {
    if (std::isfinite(z.value))
        return format_double(z.value);
    const double log10_value = z.log_value / std::numbers::ln10;
    const double exponent = std::floor(log10_value);
    const double mantissa = std::pow(10.0, log10_value - exponent);
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17ge+%.0f", mantissa, exponent);
    return buf;
}

struct RunRecord {
    double lambda = 0.0;
    double nu = 0.0;
    std::string method;
    std::string value;  // decimal string, full precision
    std::optional<double> error_bound;
    std::int64_t terms = 0;
    std::int64_t wall_time_ns = 0;
};

inline RunRecord make_run_record(const ComPoissonParams& params, const ZResult& z,
                                 std::int64_t wall_time_ns) {
    RunRecord r;
    r.lambda = params.lambda;
    r.nu = params.nu;
    r.method = method_name(z.method);
    r.value = format_value_string(z);
    r.error_bound = z.error_bound;
    r.terms = z.terms_or_nodes;
    r.wall_time_ns = wall_time_ns;
    return r;
}

inline constexpr const char* run_record_csv_header =
    "lambda,nu,method,value,error_bound,terms,wall_time_ns";

inline std::string to_csv(const RunRecord& r) {
    std::ostringstream os;
    os << format_double(r.lambda) << ',' << format_double(r.nu) << ',' << r.method
       << ',' << r.value << ','
       << (r.error_bound ? format_double(*r.error_bound) : std::string{}) << ','
       << r.terms << ',' << r.wall_time_ns;
    return os.str();
}

inline RunRecord from_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (const char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    if (fields.size() != 7)
        throw std::invalid_argument("RunRecord: expected 7 CSV fields");
    RunRecord r;
    r.lambda = std::stod(fields[0]);
    r.nu = std::stod(fields[1]);
    r.method = fields[2];
    r.value = fields[3];
    if (!fields[4].empty())
        r.error_bound = std::stod(fields[4]);
    r.terms = std::stoll(fields[5]);
    r.wall_time_ns = std::stoll(fields[6]);
    return r;
}

inline nlohmann::ordered_json to_json(const RunRecord& r) {
    nlohmann::ordered_json j;
    j["lambda"] = r.lambda;
    j["nu"] = r.nu;
    j["method"] = r.method;
    j["value"] = r.value;
    if (r.error_bound)
        j["error_bound"] = *r.error_bound;
    else
        j["error_bound"] = nullptr;
    j["terms"] = r.terms;
    j["wall_time_ns"] = r.wall_time_ns;
    return j;
}

inline RunRecord from_json(const nlohmann::ordered_json& j) {
    RunRecord r;
    r.lambda = j.at("lambda").get<double>();
    r.nu = j.at("nu").get<double>();
    r.method = j.at("method").get<std::string>();
    r.value = j.at("value").get<std::string>();
    if (!j.at("error_bound").is_null())
        r.error_bound = j.at("error_bound").get<double>();
    r.terms = j.at("terms").get<std::int64_t>();
    r.wall_time_ns = j.at("wall_time_ns").get<std::int64_t>();
    return r;
}

}  // namespace compoisson
