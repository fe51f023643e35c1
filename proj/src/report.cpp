#include "cr/report.hpp"

#include "cr/errors.hpp"

#include <charconv>
#include <cmath>
#include <set>

namespace cr {

namespace {

using json = nlohmann::ordered_json;

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_from(const json& j) { return j.is_null() ? std::nan("") : j.get<double>(); }

const std::set<std::string>& known_fields() {
    static const std::set<std::string> k = {"check",      "params", "samples", "max_abs_err", "max_rel_err",
                                            "measured_constants", "pass", "seed", "runtime_ms"};
    return k;
}

[[noreturn]] void fail(const std::string& what) { throw ParameterError("invalid report: " + what); }

} // namespace

json to_json(const VerificationReport& r) {
    json j;
    j["check"] = r.check;
    j["params"] = r.params;
    j["samples"] = r.samples;
    j["max_abs_err"] = number_or_null(r.max_abs_err);
    j["max_rel_err"] = number_or_null(r.max_rel_err);
    json mc = json::object();
    for (const auto& [k, v] : r.measured_constants)
        mc[k] = number_or_null(v);
    j["measured_constants"] = mc;
    j["pass"] = r.pass;
    j["seed"] = r.seed;
    j["runtime_ms"] = r.runtime_ms;
    return j;
}

void validate_report(const json& j, bool strict) {
    if (!j.is_object())
        fail("not an object");
    for (const auto& f : known_fields())
        if (!j.contains(f))
            fail("missing field '" + f + "'");
    if (strict)
        for (const auto& [k, v] : j.items())
            if (!known_fields().count(k))
                fail("unknown field '" + k + "'");
    if (!j["check"].is_string())
        fail("'check' must be a string");
    if (!j["params"].is_object())
        fail("'params' must be an object");
    if (!j["samples"].is_number_integer() || j["samples"].get<long>() < 0)
        fail("'samples' must be a nonnegative integer");
    for (const char* f : {"max_abs_err", "max_rel_err"})
        if (!j[f].is_number() && !j[f].is_null())
            fail(std::string("'") + f + "' must be a number or null");
    if (!j["measured_constants"].is_object())
        fail("'measured_constants' must be an object");
    for (const auto& [k, v] : j["measured_constants"].items())
        if (!v.is_number() && !v.is_null())
            fail("measured constant '" + k + "' must be a number or null");
    if (!j["pass"].is_boolean())
        fail("'pass' must be a boolean");
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0))
        fail("'seed' must be a nonnegative integer");
    if (!j["runtime_ms"].is_number_integer() || j["runtime_ms"].get<long>() < 0)
        fail("'runtime_ms' must be a nonnegative integer");
}

VerificationReport report_from_json(const json& j, bool strict) {
    validate_report(j, strict);
    VerificationReport r;
    r.check = j["check"].get<std::string>();
    r.params = j["params"];
    r.samples = j["samples"].get<long>();
    r.max_abs_err = number_from(j["max_abs_err"]);
    r.max_rel_err = number_from(j["max_rel_err"]);
    for (const auto& [k, v] : j["measured_constants"].items())
        r.measured_constants[k] = number_from(v);
    r.pass = j["pass"].get<bool>();
    r.seed = j["seed"].get<std::uint64_t>();
    r.runtime_ms = j["runtime_ms"].get<long>();
    return r;
}

std::string report_schema() {
    return R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "VerificationReport",
  "type": "object",
  "additionalProperties": false,
  "required": ["check", "params", "samples", "max_abs_err", "max_rel_err", "measured_constants", "pass", "seed", "runtime_ms"],
  "properties": {
    "check": {"type": "string"},
    "params": {"type": "object"},
    "samples": {"type": "integer", "minimum": 0},
    "max_abs_err": {"type": ["number", "null"]},
    "max_rel_err": {"type": ["number", "null"]},
    "measured_constants": {"type": "object", "additionalProperties": {"type": ["number", "null"]}},
    "pass": {"type": "boolean"},
    "seed": {"type": "integer", "minimum": 0},
    "runtime_ms": {"type": "integer", "minimum": 0}
  }
}
)";
}

std::string format_double(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

} // namespace cr
