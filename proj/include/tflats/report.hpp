#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tflats/estimate.hpp"
#include "tflats/quadrature.hpp"

namespace tflats {

inline constexpr const char* kToolVersion = "0.1.0";

/// One named result: a plain value, a quadrature value (with error) or a
/// Monte Carlo estimate (with standard error and sample count).
struct ResultEntry {
    double value = 0.0;
    std::optional<double> error;        ///< quadrature error estimate
    std::optional<double> std_error;    ///< Monte Carlo standard error
    std::optional<std::uint64_t> samples;
    std::optional<std::uint64_t> degenerate;
    std::optional<bool> flag;           ///< boolean checks (value is then 0 or 1)

    bool operator==(const ResultEntry&) const = default;
};

struct RunReport {
    std::string command;
    nlohmann::json parameters = nlohmann::json::object();
    std::uint64_t seed = 0;
    double wall_time = 0.0;
    std::map<std::string, ResultEntry> results;
    std::map<std::string, std::uint64_t> degenerate_counts;
    std::string version = kToolVersion;

    void add_value(const std::string& name, double value);
    void add_quadrature(const std::string& name, const QuadratureValue& q);
    void add_estimate(const std::string& name, const MCEstimate& e);
    void add_flag(const std::string& name, bool value);

    nlohmann::json to_json() const;
    /// Throws InvalidArgument when `j` does not follow the report schema.
    static RunReport from_json(const nlohmann::json& j);
    /// Serialized report with sorted keys; `with_time` false omits wall_time.
    std::string dump(bool with_time = true) const;
};

/// Checks `j` against the report schema; returns an empty string when valid.
std::string validate_report(const nlohmann::json& j);

/// Simple CSV table.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::string str() const;
};

}  // namespace tflats
