#pragma once

#include "json.hpp"

#include <chrono>
#include <cstdint>
#include <map>
#include <string>

namespace cr {

/// Outcome of one verification run. pass <=> max_rel_err < tolerance unless a
/// check documents a different criterion in its params.
struct VerificationReport {
    std::string check;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    long samples = 0;
    double max_abs_err = 0.0;
    double max_rel_err = 0.0;
    std::map<std::string, double> measured_constants;
    bool pass = false;
    std::uint64_t seed = 0;
    long runtime_ms = 0;
};

/// Serialized form; non-finite numbers become null.
nlohmann::ordered_json to_json(const VerificationReport& r);
/// Inverse of to_json. In strict mode unknown fields are rejected. Throws ParameterError.
VerificationReport report_from_json(const nlohmann::ordered_json& j, bool strict = true);
/// Throws ParameterError naming the first violation.
void validate_report(const nlohmann::ordered_json& j, bool strict = true);
/// JSON Schema (draft-07) of the report object.
std::string report_schema();

/// Wall-clock milliseconds since construction.
class Stopwatch {
public:
    long ms() const {
        return static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                     std::chrono::steady_clock::now() - start_)
                                     .count());
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

} // namespace cr
