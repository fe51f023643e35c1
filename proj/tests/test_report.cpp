#include "cr/bsverify.hpp"
#include "cr/errors.hpp"
#include "cr/report.hpp"

#include "doctest.h"

#include <charconv>
#include <cmath>
#include <limits>

using namespace cr;

namespace {

VerificationReport sample_report() {
    VerificationReport r;
    r.check = "bs-sinh";
    r.params["rank"] = 2;
    r.params["delta"] = -0.7;
    r.samples = 100;
    r.max_abs_err = 3.1e-13;
    r.max_rel_err = 1.0 / 3.0;
    r.measured_constants["m_delta"] = 0.1 + 0.2;
    r.pass = true;
    r.seed = 18446744073709551615ULL;
    r.runtime_ms = 17;
    return r;
}

} // namespace

TEST_CASE("serialize and parse is the identity") {
    const auto r = sample_report();
    const auto j = to_json(r);
    const auto back = report_from_json(nlohmann::ordered_json::parse(j.dump()));
    CHECK(back.check == r.check);
    CHECK(back.params == r.params);
    CHECK(back.samples == r.samples);
    CHECK(back.max_abs_err == r.max_abs_err);
    CHECK(back.max_rel_err == r.max_rel_err);
    CHECK(back.measured_constants == r.measured_constants);
    CHECK(back.pass == r.pass);
    CHECK(back.seed == r.seed);
    CHECK(back.runtime_ms == r.runtime_ms);
    CHECK(to_json(back).dump() == j.dump());
}

TEST_CASE("field order follows the schema") {
    const auto j = to_json(sample_report());
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it)
        keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"check", "params", "samples", "max_abs_err", "max_rel_err",
                                           "measured_constants", "pass", "seed", "runtime_ms"});
}

TEST_CASE("validation") {
    auto j = to_json(sample_report());
    CHECK_NOTHROW(validate_report(j));
    SUBCASE("unknown field rejected in strict mode only") {
        j["extra"] = 1;
        CHECK_THROWS_AS(validate_report(j, true), ParameterError);
        CHECK_NOTHROW(validate_report(j, false));
    }
    SUBCASE("missing field") {
        j.erase("pass");
        CHECK_THROWS_AS(validate_report(j), ParameterError);
    }
    SUBCASE("wrong types") {
        j["samples"] = "100";
        CHECK_THROWS_AS(validate_report(j), ParameterError);
    }
    SUBCASE("measured constants must be numbers") {
        j["measured_constants"]["x"] = "y";
        CHECK_THROWS_AS(validate_report(j), ParameterError);
    }
}

TEST_CASE("non-finite residuals serialize as null and still validate") {
    auto r = sample_report();
    r.max_rel_err = std::numeric_limits<double>::quiet_NaN();
    r.pass = false;
    const auto j = to_json(r);
    CHECK(j["max_rel_err"].is_null());
    CHECK_NOTHROW(validate_report(j));
}

TEST_CASE("schema text") {
    const auto s = nlohmann::json::parse(report_schema());
    CHECK(s["additionalProperties"] == false);
    CHECK(s["required"].size() == 9);
    CHECK(s["properties"]["pass"]["type"] == "boolean");
}

TEST_CASE("reports emitted by checks validate") {
    CHECK_NOTHROW(validate_report(to_json(verify_bs_flat(2.0))));
    CHECK_NOTHROW(validate_report(to_json(verify_bs_sinh(RootData(1, 0, 2, 0), 2.0, {5, 1, 1e-8, 1.0}))));
}

TEST_CASE("identical seeds give identical numeric fields") {
    const RootData rd(2, 1.2, 0.7, 1.9);
    auto a = to_json(verify_bs_sinh(rd, 0.5, {20, 9, 1e-8, 1.0}));
    auto b = to_json(verify_bs_sinh(rd, 0.5, {20, 9, 1e-8, 1.0}));
    a.erase("runtime_ms");
    b.erase("runtime_ms");
    CHECK(a.dump() == b.dump());
}

TEST_CASE("format_double round-trips") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 1e-7, 12.0}) {
        const std::string s = format_double(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == v);
    }
}
