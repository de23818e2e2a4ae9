#pragma once

// On-disk memoization of Groebner bases, keyed by a content hash of the
// generator set. Entries store the generators they were computed from and
// are ignored on mismatch.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "grobner.hpp"

namespace loopsing {

namespace detail {

inline std::string canonical_text(const Ideal& I)
{
    std::string s;
    for (const auto& v : I.variables) {
        s += default_var_name(v) + ",";
    }
    s += "|";
    for (const auto& g : I.generators) {
        s += to_string(g) + ";";
    }
    return s;
}

inline std::uint64_t fnv1a64(const std::string& s)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline nlohmann::json poly_to_json(const LoopPoly& p)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : p.terms()) {
        nlohmann::json factors = nlohmann::json::array();
        for (const auto& [v, e] : m.factors()) {
            factors.push_back({v.coord, v.cdeg, e});
        }
        terms.push_back({to_string(c), factors});
    }
    return terms;
}

inline LoopPoly poly_from_json(const nlohmann::json& j)
{
    LoopPoly p;
    for (const auto& t : j) {
        std::vector<Monomial::Factor> fs;
        for (const auto& f : t.at(1)) {
            fs.emplace_back(LoopVar{f.at(0).get<int>(), f.at(1).get<int>()}, f.at(2).get<std::uint32_t>());
        }
        p.add_term(Monomial::from_factors(std::move(fs)), Rational(t.at(0).get<std::string>()));
    }
    return p;
}

}  // namespace detail

class GroebnerCache {
public:
    explicit GroebnerCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    /// Reads the directory from LOOPSING_CACHE, if set and non-empty.
    static std::optional<GroebnerCache> from_environment()
    {
        const char* env = std::getenv("LOOPSING_CACHE");
        if (env == nullptr || *env == '\0') {
            return std::nullopt;
        }
        return GroebnerCache(env);
    }

    std::filesystem::path path_for(const Ideal& I) const
    {
        std::ostringstream name;
        name << std::hex << detail::fnv1a64(detail::canonical_text(I)) << ".json";
        return dir_ / name.str();
    }

    std::optional<GroebnerBasis> load(const Ideal& I) const
    {
        std::ifstream in(path_for(I));
        if (!in) {
            return std::nullopt;
        }
        try {
            const auto j = nlohmann::json::parse(in);
            if (j.at("generators").get<std::string>() != detail::canonical_text(I)) {
                return std::nullopt;
            }
            GroebnerBasis G;
            G.variables = I.variables;
            G.reduced = true;
            for (const auto& e : j.at("elements")) {
                G.elements.push_back(detail::poly_from_json(e));
            }
            return G;
        } catch (const nlohmann::json::exception&) {
            return std::nullopt;
        }
    }

    void store(const Ideal& I, const GroebnerBasis& G) const
    {
        std::filesystem::create_directories(dir_);
        nlohmann::json j;
        j["generators"] = detail::canonical_text(I);
        j["elements"] = nlohmann::json::array();
        for (const auto& e : G.elements) {
            j["elements"].push_back(detail::poly_to_json(e));
        }
        std::ofstream(path_for(I)) << j.dump() << '\n';
    }

    GroebnerBasis basis_for(const Ideal& I) const
    {
        if (auto cached = load(I)) {
            return *cached;
        }
        GroebnerBasis G = buchberger(I);
        try {
            store(I, G);
        } catch (const std::exception&) {
            // unwritable cache directory: fall back to uncached operation
        }
        return G;
    }

private:
    std::filesystem::path dir_;
};

}  // namespace loopsing
