// Copyright 2026 the compoisson authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch.hpp>

#include <cmath>
#include <string>

#include <compoisson/run_record.hpp>
#include <compoisson/z_series.hpp>

using compoisson::format_value_string;
using compoisson::from_csv;
using compoisson::from_json;
using compoisson::make_run_record;
using compoisson::RunRecord;
using compoisson::to_csv;
using compoisson::to_json;

namespace {

RunRecord sample_record() {
    const compoisson::ComPoissonParams params{0.5, 2.0};
    return make_run_record(params, compoisson::z_series(params), 123456);
}

bool records_equal(const RunRecord& a, const RunRecord& b) {
    return a.lambda == b.lambda && a.nu == b.nu && a.method == b.method &&
           a.value == b.value && a.error_bound == b.error_bound && a.terms == b.terms &&
           a.wall_time_ns == b.wall_time_ns;
}

}  // namespace

TEST_CASE("value strings parse back to the exact double", "[run_record]") {
    const RunRecord r = sample_record();
    const double parsed = std::stod(r.value);
    CHECK(std::isfinite(parsed));
    CHECK(parsed == compoisson::z_series({0.5, 2.0}).value);
}

TEST_CASE("value strings carry out-of-range magnitudes in exact form", "[run_record]") {
    compoisson::ZResult z;
    z.log_value = 20006.145;
    z.value = std::exp(z.log_value);  // +inf
    const std::string s = format_value_string(z);
    CHECK(s.find("e+8688") != std::string::npos);
}

TEST_CASE("CSV round trip is byte identical", "[run_record]") {
    const RunRecord r = sample_record();
    const std::string line = to_csv(r);
    const RunRecord parsed = from_csv(line);
    CHECK(records_equal(parsed, r));
    CHECK(to_csv(parsed) == line);
    CHECK_THROWS_AS(from_csv("1,2,3"), std::invalid_argument);
}

TEST_CASE("JSON round trip is byte identical", "[run_record]") {
    const RunRecord r = sample_record();
    const std::string dumped = to_json(r).dump();
    const RunRecord parsed = from_json(nlohmann::ordered_json::parse(dumped));
    CHECK(records_equal(parsed, r));
    CHECK(to_json(parsed).dump() == dumped);
}

TEST_CASE("empty error bound survives the CSV round trip", "[run_record]") {
    RunRecord r = sample_record();
    r.error_bound.reset();
    const std::string line = to_csv(r);
    const RunRecord parsed = from_csv(line);
    CHECK_FALSE(parsed.error_bound.has_value());
    CHECK(to_csv(parsed) == line);
}
