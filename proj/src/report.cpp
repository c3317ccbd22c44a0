#include "tflats/report.hpp"

#include <cmath>
#include <sstream>

#include "tflats/errors.hpp"

namespace tflats {

using nlohmann::json;

void RunReport::add_value(const std::string& name, double value) {
    ResultEntry e;
    e.value = value;
    results[name] = e;
}

void RunReport::add_quadrature(const std::string& name, const QuadratureValue& q) {
    ResultEntry e;
    e.value = q.value;
    e.error = q.error;
    results[name] = e;
}

void RunReport::add_estimate(const std::string& name, const MCEstimate& est) {
    ResultEntry e;
    e.value = est.mean;
    e.std_error = est.std_error;
    e.samples = est.samples;
    e.degenerate = est.degenerate;
    results[name] = e;
    degenerate_counts[name] = est.degenerate;
}

void RunReport::add_flag(const std::string& name, bool value) {
    ResultEntry e;
    e.value = value ? 1.0 : 0.0;
    e.flag = value;
    results[name] = e;
}

namespace {

json number(double v) {
    // JSON has no NaN/inf; keep them as strings so the report stays parseable.
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

double read_number(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "nan") return NAN;
        if (s == "inf") return INFINITY;
        if (s == "-inf") return -INFINITY;
    }
    throw InvalidArgument("report: expected a number");
}

}  // namespace

json RunReport::to_json() const {
    json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["seed"] = seed;
    j["wall_time"] = wall_time;
    j["version"] = version;
    json res = json::object();
    for (const auto& [name, e] : results) {
        json r;
        r["value"] = number(e.value);
        if (e.error) r["error"] = number(*e.error);
        if (e.std_error) r["std_error"] = number(*e.std_error);
        if (e.samples) r["samples"] = *e.samples;
        if (e.degenerate) r["degenerate"] = *e.degenerate;
        if (e.flag) r["flag"] = *e.flag;
        res[name] = r;
    }
    j["results"] = res;
    j["degenerate_counts"] = degenerate_counts;
    return j;
}

std::string validate_report(const json& j) {
    if (!j.is_object()) return "report must be an object";
    for (const char* key : {"command", "version"})
        if (!j.contains(key) || !j[key].is_string()) return std::string("missing string field '") + key + "'";
    if (!j.contains("seed") || !j["seed"].is_number_unsigned()) return "missing unsigned field 'seed'";
    if (!j.contains("wall_time") || !j["wall_time"].is_number()) return "missing number field 'wall_time'";
    if (!j.contains("parameters") || !j["parameters"].is_object()) return "missing object field 'parameters'";
    if (!j.contains("degenerate_counts") || !j["degenerate_counts"].is_object())
        return "missing object field 'degenerate_counts'";
    for (const auto& [name, v] : j["degenerate_counts"].items())
        if (!v.is_number_unsigned()) return "degenerate count '" + name + "' is not an unsigned integer";
    if (!j.contains("results") || !j["results"].is_object()) return "missing object field 'results'";
    for (const auto& [name, r] : j["results"].items()) {
        if (!r.is_object() || !r.contains("value")) return "result '" + name + "' has no value";
        for (const auto& [field, v] : r.items()) {
            if (field == "value" || field == "error" || field == "std_error") {
                if (!v.is_number() && !v.is_string()) return "result '" + name + "' field '" + field + "' is not numeric";
            } else if (field == "samples" || field == "degenerate") {
                if (!v.is_number_unsigned()) return "result '" + name + "' field '" + field + "' is not a count";
            } else if (field == "flag") {
                if (!v.is_boolean()) return "result '" + name + "' flag is not boolean";
            } else {
                return "result '" + name + "' has unknown field '" + field + "'";
            }
        }
        if (r.contains("std_error") != r.contains("samples"))
            return "estimate '" + name + "' must carry both std_error and samples";
    }
    return {};
}

RunReport RunReport::from_json(const json& j) {
    if (const std::string problem = validate_report(j); !problem.empty()) throw InvalidArgument("report: " + problem);
    RunReport r;
    r.command = j["command"].get<std::string>();
    r.parameters = j["parameters"];
    r.seed = j["seed"].get<std::uint64_t>();
    r.wall_time = j["wall_time"].get<double>();
    r.version = j["version"].get<std::string>();
    for (const auto& [name, v] : j["results"].items()) {
        ResultEntry e;
        e.value = read_number(v["value"]);
        if (v.contains("error")) e.error = read_number(v["error"]);
        if (v.contains("std_error")) e.std_error = read_number(v["std_error"]);
        if (v.contains("samples")) e.samples = v["samples"].get<std::uint64_t>();
        if (v.contains("degenerate")) e.degenerate = v["degenerate"].get<std::uint64_t>();
        if (v.contains("flag")) e.flag = v["flag"].get<bool>();
        r.results[name] = e;
    }
    for (const auto& [name, v] : j["degenerate_counts"].items()) r.degenerate_counts[name] = v.get<std::uint64_t>();
    return r;
}

std::string RunReport::dump(bool with_time) const {
    json j = to_json();
    if (!with_time) j.erase("wall_time");
    return j.dump(2);
}

std::string CsvTable::str() const {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << '\n';
    }
    return os.str();
}

}  // namespace tflats
