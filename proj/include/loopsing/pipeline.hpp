#pragma once

// End-to-end run: parse -> Lambda -> structural checks -> Milnor number ->
// cohomology, assembled into a Report.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cohom.hpp"
#include "grobner.hpp"
#include "grobner_cache.hpp"
#include "loopfun.hpp"
#include "parser.hpp"
#include "report.hpp"

namespace loopsing {

class ConfigError : public error {
public:
    using error::error;
};

inline const std::vector<std::string>& all_checks()
{
    static const std::vector<std::string> names{"lambda",     "support", "linearity",
                                                "derivative", "milnor",  "cohomology"};
    return names;
}

enum class OutputFormat { text, structured };

struct RunConfig {
    std::string function_source;
    int window_bottom = 1;
    int n_max = 4;
    std::set<std::string> checks{all_checks().begin(), all_checks().end()};
    OutputFormat output_format = OutputFormat::text;
    std::optional<std::string> output_path;
    bool emit_lambda = false;
    std::optional<GroebnerCache> cache;

    bool enabled(const std::string& name) const { return checks.count(name) > 0; }
};

inline void validate(const RunConfig& cfg)
{
    if (cfg.checks.empty()) {
        throw ConfigError("no checks enabled");
    }
    for (const auto& c : cfg.checks) {
        if (std::find(all_checks().begin(), all_checks().end(), c) == all_checks().end()) {
            throw ConfigError("unknown check '" + c + "'");
        }
    }
    if (cfg.window_bottom < 0) {
        throw ConfigError("window bottom must be nonnegative");
    }
    if ((cfg.enabled("linearity") || cfg.enabled("derivative")) && cfg.window_bottom < 1) {
        throw ConfigError("linearity and derivative checks need a window bottom of at least 1");
    }
    if (cfg.enabled("cohomology")) {
        if (cfg.n_max < cfg.window_bottom) {
            throw ConfigError("n-max must be at least the window bottom");
        }
        if (cfg.n_max < 2) {
            throw ConfigError("n-max must be at least 2 for the renormalized colimit");
        }
    }
}

/// Non-comment, non-blank lines of an input file; each is one expression.
inline std::vector<std::string> read_function_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open input file " + path);
    }
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        out.push_back(line.substr(first, line.find_last_not_of(" \t\r") + 1 - first));
    }
    if (out.empty()) {
        throw ConfigError("input file " + path + " contains no expression");
    }
    return out;
}

namespace detail {

inline std::string render(const Monomial& m, const InputFunction& f)
{
    return to_string(m, loop_namer(f.names()));
}

inline CheckResult run_lambda_check(const InputFunction& f, int b)
{
    const Window w = f.default_window(b);
    const LoopPoly lam = lambda_of(f, w);  // asserts both gradings
    const LoopPoly wider = lambda_of(f, Window(b, w.top() + 1));
    if (restrict_to_window(wider, w) != lam) {
        return {false, "window stability fails between tops " + std::to_string(w.top()) + " and " +
                           std::to_string(w.top() + 1)};
    }
    if (wider != lam) {
        for (const auto& [m, c] : wider.terms()) {
            if (lam.coefficient(m) != c) {
                return {false, "term " + render(m, f) + " appears beyond the minimal window"};
            }
        }
    }
    constant_loop_restriction(f, w);
    return {true, std::nullopt};
}

inline CheckResult run_support_check(const InputFunction& f, int bottom)
{
    for (int b = 0; b <= bottom; ++b) {
        const auto r = check_support_bound(f, b);
        if (!r.ok) {
            return {false, "b=" + std::to_string(b) + ": " + render(*r.witness, f) +
                               " has conformal degree above " + std::to_string(r.bound)};
        }
    }
    return {true, std::nullopt};
}

inline CheckResult run_linearity_check(const InputFunction& f, int bottom)
{
    for (int b = 1; b <= bottom; ++b) {
        const auto r = check_top_linearity(f, b);
        if (!r.ok) {
            const std::string what =
                r.offending_monomials.empty() ? "decomposition mismatch" : render(r.offending_monomials.front(), f);
            return {false, "b=" + std::to_string(b) + ": " + what};
        }
    }
    return {true, std::nullopt};
}

inline CheckResult run_derivative_check(const InputFunction& f, int bottom)
{
    for (int b = 1; b <= bottom; ++b) {
        const auto r = check_derivative_identity(f, b);
        for (const auto& c : r.checks) {
            if (!c.ok_jet || !c.ok_bottom) {
                return {false, "b=" + std::to_string(b) + ", coordinate " +
                                   f.names()[static_cast<std::size_t>(c.coord - 1)] + ": " +
                                   (c.ok_jet ? "bottom evaluation" : "jet coefficient") + " differs"};
            }
        }
    }
    return {true, std::nullopt};
}

}  // namespace detail

/// Runs every enabled check on one expression. Parse and hypothesis
/// violations raise ConfigError-family exceptions; anything else that goes
/// wrong inside a check is recorded in Report::errors.
inline Report run(const RunConfig& cfg)
{
    validate(cfg);
    const auto started = std::chrono::steady_clock::now();
    const InputFunction f = parse_function(cfg.function_source);
    const int b = cfg.window_bottom;

    Report r;
    r.function = print_function(f);
    r.variables = f.names();
    r.d = f.d();
    r.delta = f.delta();
    const Window w = f.default_window(b);
    r.window_bottom = w.bottom();
    r.window_top = w.top();
    const LoopPoly lam = lambda_of(f, w);
    r.lambda_term_count = lam.size();
    if (cfg.emit_lambda) {
        r.lambda_polynomial = to_string(lam, loop_namer(f.names()));
    }

    auto guarded = [&r](const std::string& name, auto&& body) {
        try {
            r.checks[name] = body();
        } catch (const std::exception& e) {
            r.checks[name] = CheckResult{false, std::string("error: ") + e.what()};
            r.errors.push_back(name + ": " + e.what());
        }
    };

    if (cfg.enabled("lambda")) {
        guarded("lambda", [&] { return detail::run_lambda_check(f, b); });
    }
    if (cfg.enabled("support")) {
        guarded("support", [&] { return detail::run_support_check(f, b); });
    }
    if (cfg.enabled("linearity")) {
        guarded("linearity", [&] { return detail::run_linearity_check(f, b); });
    }
    if (cfg.enabled("derivative")) {
        guarded("derivative", [&] { return detail::run_derivative_check(f, b); });
    }

    std::optional<std::string> not_isolated;
    if (cfg.enabled("milnor") || cfg.enabled("cohomology")) {
        const Ideal I = jacobian_ideal(f);
        CheckResult milnor{true, std::nullopt};
        try {
            const GroebnerBasis G = cfg.cache ? cfg.cache->basis_for(I) : buchberger(I);
            const auto mu = milnor_number(f, G);
            r.milnor_number = mu;
            r.isolated = true;
            if (f.d() <= 3 && f.delta() <= 5) {
                const auto oracle = milnor_number_oracle(f);
                if (oracle != mu) {
                    milnor = {false, "linear-algebra count " + std::to_string(oracle) +
                                         " differs from Groebner count " + std::to_string(mu)};
                }
            }
        } catch (const NotIsolated& e) {
            r.isolated = false;
            not_isolated = e.witness;
            milnor = {false, e.witness};
        } catch (const std::exception& e) {
            milnor = {false, std::string("error: ") + e.what()};
            r.errors.push_back(std::string("milnor: ") + e.what());
        }
        if (cfg.enabled("milnor")) {
            r.checks["milnor"] = milnor;
        }
    }

    if (cfg.enabled("cohomology")) {
        if (!r.milnor_number) {
            r.checks["cohomology"] = CheckResult{
                false, "skipped: " + (not_isolated ? "singularity is not isolated" : std::string("no Milnor number"))};
        } else {
            guarded("cohomology", [&]() -> CheckResult {
                const int d = f.d();
                const auto mu = *r.milnor_number;
                const TruncationTower tower = truncation_tower(d, mu, cfg.n_max);
                const RenormalizedReport ren = renormalized_nearby_cohomology(d, mu, cfg.n_max);
                CohomologySection c;
                for (int n = 0; n <= cfg.n_max; ++n) {
                    c.truncations.push_back({n, tower.levels[static_cast<std::size_t>(n)]});
                }
                c.renormalized = ren.stable;
                c.stabilization = ren.stabilization_step;
                c.predicted_stabilization = ren.predicted_step;
                c.escape = escape_report(d, mu, cfg.n_max);
                r.cohomology = c;
                r.axioms = ren.axioms;

                if (!tower.audits_ok) {
                    return {false, "exactness audit failed"};
                }
                if (!ren.concentrated) {
                    return {false, "renormalized cohomology " + to_string(ren.stable) + " is not {" +
                                       std::to_string(d - 1) + ": " + std::to_string(mu) + "}"};
                }
                if (!ren.within_predicted) {
                    for (const auto& [deg, n] : ren.stabilization_step) {
                        if (n > ren.predicted_step.at(deg)) {
                            return {false, "degree " + std::to_string(deg) + " stabilizes at n=" +
                                               std::to_string(n) + ", later than predicted"};
                        }
                    }
                }
                for (std::size_t i = 1; i < c.escape.size(); ++i) {
                    if (c.escape[i].degree - c.escape[i - 1].degree != 2 * d) {
                        return {false, "concentration degrees of X^" + std::to_string(i - 1) + " and X^" +
                                           std::to_string(i) + " do not differ by 2d"};
                    }
                }
                return {true, std::nullopt};
            });
        }
    }

    r.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return r;
}

inline int exit_status(const Report& r) { return r.all_ok() ? 0 : 1; }

}  // namespace loopsing
