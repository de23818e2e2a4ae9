#pragma once

// Run report: structured (JSON) and fixed-layout text renderings.
//
// Map keys that are degrees are written as decimal strings since they can
// be negative.

#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cohom.hpp"

namespace loopsing {

struct CheckResult {
    bool ok = false;
    std::optional<std::string> witness;

    friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct TruncationRow {
    int n = 0;
    GradedDims dims;

    friend bool operator==(const TruncationRow&, const TruncationRow&) = default;
};

struct CohomologySection {
    std::vector<TruncationRow> truncations;
    GradedDims renormalized;
    std::map<int, int> stabilization;
    std::map<int, int> predicted_stabilization;
    std::vector<EscapeEntry> escape;

    friend bool operator==(const CohomologySection&, const CohomologySection&) = default;
};

struct Report {
    std::string function;
    std::vector<std::string> variables;
    int d = 0;
    int delta = 0;
    std::optional<std::uint64_t> milnor_number;
    std::optional<bool> isolated;
    int window_bottom = 0;
    int window_top = 0;
    std::size_t lambda_term_count = 0;
    std::optional<std::string> lambda_polynomial;
    std::map<std::string, CheckResult> checks;
    std::optional<CohomologySection> cohomology;
    std::vector<std::string> axioms;
    std::vector<std::string> errors;
    double elapsed_ms = 0.0;

    bool all_ok() const
    {
        if (!errors.empty()) {
            return false;
        }
        for (const auto& [name, c] : checks) {
            if (!c.ok) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const Report&, const Report&) = default;
};

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json dims_to_json(const GradedDims& g)
{
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [deg, dim] : g.entries()) {
        j[std::to_string(deg)] = dim;
    }
    return j;
}

inline GradedDims dims_from_json(const nlohmann::json& j)
{
    GradedDims g;
    for (const auto& [key, value] : j.items()) {
        g.set(std::stoi(key), value.get<std::uint64_t>());
    }
    return g;
}

inline nlohmann::json int_map_to_json(const std::map<int, int>& m)
{
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : m) {
        j[std::to_string(k)] = v;
    }
    return j;
}

inline std::map<int, int> int_map_from_json(const nlohmann::json& j)
{
    std::map<int, int> m;
    for (const auto& [key, value] : j.items()) {
        m[std::stoi(key)] = value.get<int>();
    }
    return m;
}

inline nlohmann::json to_json(const Report& r, bool with_timing = true)
{
    using nlohmann::json;
    json j;
    j["function"] = r.function;
    j["variables"] = r.variables;
    j["d"] = r.d;
    j["delta"] = r.delta;
    j["milnor_number"] = r.milnor_number ? json(*r.milnor_number) : json(nullptr);
    j["isolated"] = r.isolated ? json(*r.isolated) : json(nullptr);
    j["window"] = {{"bottom", r.window_bottom}, {"top", r.window_top}};
    j["lambda"] = {{"term_count", r.lambda_term_count}};
    if (r.lambda_polynomial) {
        j["lambda"]["polynomial"] = *r.lambda_polynomial;
    }
    json checks = json::object();
    for (const auto& [name, c] : r.checks) {
        json cj = {{"ok", c.ok}};
        if (c.witness) {
            cj["witness"] = *c.witness;
        }
        checks[name] = cj;
    }
    j["checks"] = checks;
    if (r.cohomology) {
        const auto& c = *r.cohomology;
        json trunc = json::array();
        for (const auto& row : c.truncations) {
            trunc.push_back({{"n", row.n}, {"dims", dims_to_json(row.dims)}});
        }
        json escape = json::array();
        for (const auto& e : c.escape) {
            escape.push_back({{"n", e.n},
                              {"degree", e.degree},
                              {"stated_bound", e.stated_bound},
                              {"meets_stated_bound", e.meets_stated_bound}});
        }
        j["cohomology"] = {{"truncations", trunc},
                           {"renormalized", dims_to_json(c.renormalized)},
                           {"stabilization", int_map_to_json(c.stabilization)},
                           {"predicted_stabilization", int_map_to_json(c.predicted_stabilization)},
                           {"escape", escape}};
    } else {
        j["cohomology"] = nullptr;
    }
    j["axioms"] = r.axioms;
    j["errors"] = r.errors;
    if (with_timing) {
        j["timing"] = {{"elapsed_ms", r.elapsed_ms}};
    }
    return j;
}

inline Report report_from_json(const nlohmann::json& j)
{
    Report r;
    r.function = j.at("function").get<std::string>();
    r.variables = j.at("variables").get<std::vector<std::string>>();
    r.d = j.at("d").get<int>();
    r.delta = j.at("delta").get<int>();
    if (!j.at("milnor_number").is_null()) {
        r.milnor_number = j.at("milnor_number").get<std::uint64_t>();
    }
    if (!j.at("isolated").is_null()) {
        r.isolated = j.at("isolated").get<bool>();
    }
    r.window_bottom = j.at("window").at("bottom").get<int>();
    r.window_top = j.at("window").at("top").get<int>();
    r.lambda_term_count = j.at("lambda").at("term_count").get<std::size_t>();
    if (j.at("lambda").contains("polynomial")) {
        r.lambda_polynomial = j.at("lambda").at("polynomial").get<std::string>();
    }
    for (const auto& [name, cj] : j.at("checks").items()) {
        CheckResult c;
        c.ok = cj.at("ok").get<bool>();
        if (cj.contains("witness")) {
            c.witness = cj.at("witness").get<std::string>();
        }
        r.checks[name] = c;
    }
    if (!j.at("cohomology").is_null()) {
        const auto& cj = j.at("cohomology");
        CohomologySection c;
        for (const auto& row : cj.at("truncations")) {
            c.truncations.push_back(TruncationRow{row.at("n").get<int>(), dims_from_json(row.at("dims"))});
        }
        c.renormalized = dims_from_json(cj.at("renormalized"));
        c.stabilization = int_map_from_json(cj.at("stabilization"));
        c.predicted_stabilization = int_map_from_json(cj.at("predicted_stabilization"));
        for (const auto& e : cj.at("escape")) {
            c.escape.push_back(EscapeEntry{e.at("n").get<int>(), e.at("degree").get<int>(),
                                           e.at("stated_bound").get<int>(),
                                           e.at("meets_stated_bound").get<bool>()});
        }
        r.cohomology = std::move(c);
    }
    r.axioms = j.at("axioms").get<std::vector<std::string>>();
    r.errors = j.at("errors").get<std::vector<std::string>>();
    if (j.contains("timing")) {
        r.elapsed_ms = j.at("timing").at("elapsed_ms").get<double>();
    }
    return r;
}

// ---------------------------------------------------------------------------
// Text

inline std::string to_text(const Report& r, bool with_timing = true)
{
    std::ostringstream os;
    auto row = [&os](const std::string& key, const std::string& value) {
        os << std::left << std::setw(18) << key << value << '\n';
    };
    std::string vars;
    for (const auto& v : r.variables) {
        vars += (vars.empty() ? "" : ", ") + v;
    }
    row("function", r.function);
    row("variables", vars);
    row("d", std::to_string(r.d));
    row("delta", std::to_string(r.delta));
    row("milnor_number", r.milnor_number ? std::to_string(*r.milnor_number) : "-");
    row("isolated", r.isolated ? (*r.isolated ? "yes" : "no") : "-");
    row("window", "[" + std::to_string(-r.window_bottom) + ", " + std::to_string(r.window_top) + "]");
    row("lambda terms", std::to_string(r.lambda_term_count));
    if (r.lambda_polynomial) {
        row("lambda", *r.lambda_polynomial);
    }
    os << "\nchecks\n";
    for (const auto& [name, c] : r.checks) {
        os << "  " << std::left << std::setw(12) << name << (c.ok ? "PASS" : "FAIL");
        if (c.witness) {
            os << "  " << *c.witness;
        }
        os << '\n';
    }
    os << "\ncohomology\n";
    if (!r.cohomology) {
        os << "  skipped\n";
    } else {
        const auto& c = *r.cohomology;
        os << "  " << std::left << std::setw(6) << "n" << std::setw(28) << "H*(X^n)"
           << std::setw(10) << "degree" << "stated bound\n";
        for (std::size_t i = 0; i < c.truncations.size(); ++i) {
            const auto& t = c.truncations[i];
            os << "  " << std::left << std::setw(6) << t.n << std::setw(28) << to_string(t.dims);
            if (i < c.escape.size()) {
                os << std::setw(10) << c.escape[i].degree << c.escape[i].stated_bound
                   << (c.escape[i].meets_stated_bound ? "" : " (not met)");
            }
            os << '\n';
        }
        os << "  renormalized      " << to_string(c.renormalized) << '\n';
        std::string stab;
        for (const auto& [deg, n] : c.stabilization) {
            stab += (stab.empty() ? "" : ", ") + std::to_string(deg) + ": " + std::to_string(n);
        }
        os << "  stabilization     {" << stab << "}\n";
    }
    if (!r.axioms.empty()) {
        os << "\naxioms\n";
        for (const auto& a : r.axioms) {
            os << "  " << a << '\n';
        }
    }
    if (!r.errors.empty()) {
        os << "\nerrors\n";
        for (const auto& e : r.errors) {
            os << "  " << e << '\n';
        }
    }
    if (with_timing) {
        os << "\nelapsed_ms        " << std::fixed << std::setprecision(1) << r.elapsed_ms << '\n';
    }
    return os.str();
}

}  // namespace loopsing
