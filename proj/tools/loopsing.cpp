// loopsing: compute Lambda(F) for a homogeneous polynomial F, verify its
// structure, compute the Milnor number and the renormalized nearby
// cohomology of the loop-space fibre.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include <loopsing/pipeline.hpp>

namespace {

constexpr int kExitConfigError = 2;

std::set<std::string> split_checks(const std::string& list)
{
    std::set<std::string> out;
    std::string cur;
    for (char c : list + ",") {
        if (c == ',') {
            if (!cur.empty()) {
                out.insert(cur);
            }
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Loop-space nearby cohomology of a homogeneous isolated singularity"};

    std::string expression;
    std::string file;
    std::string checks = "all";
    std::string format = "text";
    std::string output;
    bool no_timing = false;
    loopsing::RunConfig cfg;

    auto* fn_opt = app.add_option("-f,--function", expression, "Polynomial, e.g. \"x^3 + y^3\"");
    auto* file_opt = app.add_option("--file", file, "File with one expression per line (# comments)");
    fn_opt->excludes(file_opt);
    app.add_option("--window", cfg.window_bottom, "Window bottom b: poles of order <= b")
        ->capture_default_str();
    app.add_option("--n-max", cfg.n_max, "Number of Gysin steps in the cohomology tower")
        ->capture_default_str();
    app.add_option("--checks", checks,
                   "Comma list of lambda,support,linearity,derivative,milnor,cohomology or 'all'")
        ->capture_default_str();
    app.add_option("--format", format, "text or structured (json)")
        ->check(CLI::IsMember({"text", "structured", "json"}))
        ->capture_default_str();
    app.add_option("--output", output, "Write the report here instead of stdout");
    app.add_flag("--emit-lambda", cfg.emit_lambda, "Include the full Lambda(F) polynomial");
    app.add_flag("--no-timing", no_timing, "Omit the elapsed time from the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitConfigError;
    }

    std::vector<std::string> sources;
    try {
        if (!expression.empty()) {
            sources.push_back(expression);
        } else if (!file.empty()) {
            sources = loopsing::read_function_file(file);
        } else {
            throw loopsing::ConfigError("one of --function or --file is required");
        }
        if (checks != "all") {
            cfg.checks = split_checks(checks);
        }
        cfg.output_format =
            format == "text" ? loopsing::OutputFormat::text : loopsing::OutputFormat::structured;
        cfg.cache = loopsing::GroebnerCache::from_environment();
    } catch (const std::exception& e) {
        std::cerr << "loopsing: " << e.what() << '\n';
        return kExitConfigError;
    }

    std::vector<loopsing::Report> reports;
    for (const auto& src : sources) {
        cfg.function_source = src;
        try {
            reports.push_back(loopsing::run(cfg));
        } catch (const std::exception& e) {
            std::cerr << "loopsing: " << src << ": " << e.what() << '\n';
            return kExitConfigError;
        }
    }

    std::string rendered;
    if (cfg.output_format == loopsing::OutputFormat::structured) {
        if (reports.size() == 1) {
            rendered = loopsing::to_json(reports.front(), !no_timing).dump(2);
        } else {
            auto arr = nlohmann::json::array();
            for (const auto& r : reports) {
                arr.push_back(loopsing::to_json(r, !no_timing));
            }
            rendered = arr.dump(2);
        }
        rendered += '\n';
    } else {
        for (std::size_t i = 0; i < reports.size(); ++i) {
            rendered += (i == 0 ? "" : "\n") + loopsing::to_text(reports[i], !no_timing);
        }
    }

    if (!output.empty()) {
        std::ofstream out(output);
        if (!out) {
            std::cerr << "loopsing: cannot write " << output << '\n';
            return kExitConfigError;
        }
        out << rendered;
    } else {
        std::cout << rendered;
    }

    int status = 0;
    for (const auto& r : reports) {
        status = std::max(status, loopsing::exit_status(r));
    }
    return status;
}
