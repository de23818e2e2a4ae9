#pragma once

// Jacobian ideals, Buchberger's algorithm and the Milnor number.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "exactalg.hpp"
#include "loopfun.hpp"

namespace loopsing {

class NotIsolated : public error {
public:
    explicit NotIsolated(const std::string& witness)
        : error("singularity is not isolated: " + witness), witness(witness)
    {
    }
    std::string witness;
};

/// Polynomial ideal in the ambient variables z^1_0 .. z^d_0.
struct Ideal {
    std::vector<LoopPoly> generators;
    std::vector<LoopVar> variables;
};

/// The Jacobian ideal (d_1 F, ..., d_d F); zero partials are dropped.
inline Ideal jacobian_ideal(const InputFunction& f)
{
    Ideal I;
    for (int i = 1; i <= f.d(); ++i) {
        I.variables.push_back(ambient(i));
        LoopPoly g = partial(f.poly(), ambient(i));
        if (!g.is_zero()) {
            I.generators.push_back(std::move(g));
        }
    }
    return I;
}

struct GroebnerBasis {
    std::vector<LoopPoly> elements;
    std::vector<LoopVar> variables;
    bool reduced = false;

    friend bool operator==(const GroebnerBasis&, const GroebnerBasis&) = default;
};

namespace detail {

inline LoopPoly monic(const LoopPoly& p)
{
    if (p.is_zero()) {
        return p;
    }
    const Rational inv = 1 / p.leading_coefficient();
    return p.times_term(inv, Monomial{});
}

inline LoopPoly s_polynomial(const LoopPoly& f, const LoopPoly& g)
{
    const Monomial l = Monomial::lcm(f.leading_monomial(), g.leading_monomial());
    const LoopPoly a = f.times_term(1 / f.leading_coefficient(), f.leading_monomial().cofactor_in(l));
    const LoopPoly b = g.times_term(1 / g.leading_coefficient(), g.leading_monomial().cofactor_in(l));
    return a - b;
}

inline std::uint64_t pair_key_degree(const LoopPoly& f, const LoopPoly& g)
{
    return Monomial::lcm(f.leading_monomial(), g.leading_monomial()).degree();
}

}  // namespace detail

/// Full normal form of p modulo the divisors (every term is reduced).
inline LoopPoly normal_form(LoopPoly p, const std::vector<LoopPoly>& divisors)
{
    LoopPoly rest;
    while (!p.is_zero()) {
        const Monomial lm = p.leading_monomial();
        const Rational lc = p.leading_coefficient();
        const LoopPoly* reducer = nullptr;
        for (const auto& g : divisors) {
            if (!g.is_zero() && g.leading_monomial().divides(lm)) {
                reducer = &g;
                break;
            }
        }
        if (reducer == nullptr) {
            rest.add_term(lm, lc);
            p.add_term(lm, -lc);
            continue;
        }
        p -= reducer->times_term(lc / reducer->leading_coefficient(),
                                 reducer->leading_monomial().cofactor_in(lm));
    }
    return rest;
}

/// True when every S-polynomial of the elements reduces to zero.
inline bool is_groebner_basis(const std::vector<LoopPoly>& elements)
{
    for (std::size_t i = 0; i < elements.size(); ++i) {
        for (std::size_t j = i + 1; j < elements.size(); ++j) {
            if (!normal_form(detail::s_polynomial(elements[i], elements[j]), elements).is_zero()) {
                return false;
            }
        }
    }
    return true;
}

namespace detail {

/// Minimal, monic, inter-reduced basis sorted by descending leading monomial.
inline std::vector<LoopPoly> reduce_basis(std::vector<LoopPoly> g)
{
    for (auto& p : g) {
        p = monic(p);
    }
    std::vector<LoopPoly> minimal;
    for (std::size_t i = 0; i < g.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
            if (i == j) {
                continue;
            }
            const auto& li = g[i].leading_monomial();
            const auto& lj = g[j].leading_monomial();
            // equal leading monomials: keep the earliest one
            redundant = lj.divides(li) && (lj != li || j < i);
        }
        if (!redundant) {
            minimal.push_back(g[i]);
        }
    }
    std::vector<LoopPoly> out;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<LoopPoly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j) {
            if (j != i) {
                others.push_back(minimal[j]);
            }
        }
        LoopPoly tail = minimal[i];
        const Monomial lm = tail.leading_monomial();
        tail.add_term(lm, -tail.leading_coefficient());
        LoopPoly p = normal_form(tail, others);
        p.add_term(lm, 1);
        out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end(), [](const LoopPoly& a, const LoopPoly& b) {
        return grevlex_compare(a.leading_monomial(), b.leading_monomial()) > 0;
    });
    return out;
}

}  // namespace detail

/// Reduced Groebner basis in grevlex order. Pairs are processed by the normal
/// strategy (smallest lcm degree first) and pruned by the coprime and chain
/// criteria.
inline GroebnerBasis buchberger(const Ideal& I)
{
    std::vector<LoopPoly> g;
    for (const auto& p : I.generators) {
        if (!p.is_zero()) {
            g.push_back(detail::monic(p));
        }
    }

    std::set<std::pair<std::size_t, std::size_t>> pending;
    for (std::size_t j = 0; j < g.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            pending.emplace(i, j);
        }
    }
    auto is_pending = [&](std::size_t a, std::size_t b) {
        return pending.count({std::min(a, b), std::max(a, b)}) > 0;
    };

    while (!pending.empty()) {
        auto best = pending.begin();
        for (auto it = pending.begin(); it != pending.end(); ++it) {
            const auto d_it = detail::pair_key_degree(g[it->first], g[it->second]);
            const auto d_best = detail::pair_key_degree(g[best->first], g[best->second]);
            if (d_it < d_best) {
                best = it;
            }
        }
        const auto [i, j] = *best;
        pending.erase(best);

        const Monomial& li = g[i].leading_monomial();
        const Monomial& lj = g[j].leading_monomial();
        if (Monomial::coprime(li, lj)) {
            continue;
        }
        const Monomial l = Monomial::lcm(li, lj);
        bool chain = false;
        for (std::size_t k = 0; k < g.size() && !chain; ++k) {
            chain = k != i && k != j && g[k].leading_monomial().divides(l) && !is_pending(i, k) &&
                    !is_pending(j, k);
        }
        if (chain) {
            continue;
        }
        LoopPoly h = normal_form(detail::s_polynomial(g[i], g[j]), g);
        if (h.is_zero()) {
            continue;
        }
        g.push_back(detail::monic(h));
        const std::size_t n = g.size() - 1;
        for (std::size_t k = 0; k < n; ++k) {
            pending.emplace(k, n);
        }
    }

    GroebnerBasis out;
    out.variables = I.variables;
    out.elements = detail::reduce_basis(std::move(g));
    out.reduced = true;
    if (!is_groebner_basis(out.elements)) {
        throw std::logic_error("buchberger: result fails the S-polynomial criterion");
    }
    return out;
}

/// The quotient by G is infinite dimensional; lists the variables with no
/// pure power among the leading monomials.
struct Infinite {
    std::vector<LoopVar> free_variables;
};

class CapExceeded : public error {
public:
    explicit CapExceeded(std::size_t cap)
        : error("standard monomial enumeration exceeded cap " + std::to_string(cap))
    {
    }
};

/// Monomials not divisible by any leading monomial of G, by degree then
/// ascending grevlex.
inline std::variant<std::vector<Monomial>, Infinite> standard_monomials(const GroebnerBasis& G,
                                                                        std::size_t cap)
{
    if (!G.reduced) {
        throw std::invalid_argument("standard_monomials requires a reduced basis");
    }
    std::vector<std::uint32_t> bounds;
    Infinite inf;
    for (const auto& v : G.variables) {
        std::optional<std::uint32_t> pure;
        for (const auto& p : G.elements) {
            const auto& fs = p.leading_monomial().factors();
            if (fs.size() == 1 && fs.front().first == v) {
                pure = pure ? std::min(*pure, fs.front().second) : fs.front().second;
            }
        }
        if (!pure) {
            inf.free_variables.push_back(v);
        } else {
            bounds.push_back(*pure);
        }
    }
    if (!inf.free_variables.empty()) {
        return inf;
    }

    std::vector<Monomial> out;
    std::vector<std::uint32_t> exps(G.variables.size(), 0);
    std::function<void(std::size_t)> walk = [&](std::size_t idx) {
        if (idx == exps.size()) {
            std::vector<Monomial::Factor> fs;
            for (std::size_t i = 0; i < exps.size(); ++i) {
                fs.emplace_back(G.variables[i], exps[i]);
            }
            Monomial m = Monomial::from_factors(std::move(fs));
            for (const auto& p : G.elements) {
                if (p.leading_monomial().divides(m)) {
                    return;
                }
            }
            if (out.size() >= cap) {
                throw CapExceeded(cap);
            }
            out.push_back(std::move(m));
            return;
        }
        for (std::uint32_t e = 0; e < bounds[idx]; ++e) {
            exps[idx] = e;
            walk(idx + 1);
        }
        exps[idx] = 0;
    };
    walk(0);
    std::sort(out.begin(), out.end(),
              [](const Monomial& a, const Monomial& b) { return grevlex_compare(a, b) < 0; });
    return out;
}

inline constexpr std::size_t kStandardMonomialCap = 1'000'000;

inline std::uint64_t expected_milnor_number(const InputFunction& f)
{
    std::uint64_t mu = 1;
    for (int i = 0; i < f.d(); ++i) {
        mu *= static_cast<std::uint64_t>(f.delta() - 1);
    }
    return mu;
}

/// Milnor number from a precomputed Groebner basis of the Jacobian ideal.
inline std::uint64_t milnor_number(const InputFunction& f, const GroebnerBasis& G)
{
    auto sm = standard_monomials(G, kStandardMonomialCap);
    if (auto* inf = std::get_if<Infinite>(&sm)) {
        std::string names;
        for (const auto& v : inf->free_variables) {
            names += (names.empty() ? "" : ", ") + f.names()[static_cast<std::size_t>(v.coord - 1)];
        }
        throw NotIsolated("Jacobian quotient is infinite; no pure power of " + names +
                          " among the leading monomials");
    }
    const auto mu = static_cast<std::uint64_t>(std::get<std::vector<Monomial>>(sm).size());
    if (mu != expected_milnor_number(f)) {
        throw std::logic_error("milnor_number: " + std::to_string(mu) + " differs from (delta-1)^d = " +
                               std::to_string(expected_milnor_number(f)));
    }
    return mu;
}

/// Dimension of the Jacobian ring C[z]/(d_1 F, ..., d_d F).
inline std::uint64_t milnor_number(const InputFunction& f)
{
    return milnor_number(f, buchberger(jacobian_ideal(f)));
}

// ---------------------------------------------------------------------------
// Linear-algebra route, independent of Buchberger.

namespace detail {

inline std::vector<Monomial> monomials_of_degree(const std::vector<LoopVar>& vars, std::uint32_t deg)
{
    std::vector<Monomial> out;
    std::vector<Monomial::Factor> cur;
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t idx, std::uint32_t left) {
        if (idx + 1 == vars.size()) {
            cur.emplace_back(vars[idx], left);
            out.push_back(Monomial::from_factors(cur));
            cur.pop_back();
            return;
        }
        for (std::uint32_t e = 0; e <= left; ++e) {
            cur.emplace_back(vars[idx], e);
            rec(idx + 1, left - e);
            cur.pop_back();
        }
    };
    if (!vars.empty()) {
        rec(0, deg);
    } else if (deg == 0) {
        out.emplace_back();
    }
    return out;
}

/// Rank of a dense rational matrix by exact Gaussian elimination.
inline std::size_t rank(std::vector<std::vector<Rational>> rows)
{
    std::size_t r = 0;
    const std::size_t ncols = rows.empty() ? 0 : rows.front().size();
    for (std::size_t col = 0; col < ncols && r < rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][col] == 0) {
            ++piv;
        }
        if (piv == rows.size()) {
            continue;
        }
        std::swap(rows[r], rows[piv]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][col] == 0) {
                continue;
            }
            const Rational factor = rows[i][col] / rows[r][col];
            for (std::size_t c = col; c < ncols; ++c) {
                rows[i][c] -= factor * rows[r][c];
            }
        }
        ++r;
    }
    return r;
}

}  // namespace detail

/// Milnor number by counting, degree by degree up to d(delta-2)+1, the
/// cokernel of multiplication by the partials. A nonzero quotient in the
/// last degree means the singularity is not isolated.
inline std::uint64_t milnor_number_oracle(const InputFunction& f)
{
    if (f.d() > 3 || f.delta() > 5) {
        throw std::invalid_argument("milnor_number_oracle supports d <= 3 and delta <= 5");
    }
    const Ideal I = jacobian_ideal(f);
    const auto top = static_cast<std::uint32_t>(f.d() * (f.delta() - 2) + 1);
    const auto gen_deg = static_cast<std::uint32_t>(f.delta() - 1);
    std::uint64_t total = 0;
    for (std::uint32_t t = 0; t <= top; ++t) {
        const auto cols = detail::monomials_of_degree(I.variables, t);
        std::vector<std::vector<Rational>> rows;
        if (t >= gen_deg) {
            for (const auto& mult : detail::monomials_of_degree(I.variables, t - gen_deg)) {
                for (const auto& g : I.generators) {
                    const LoopPoly p = g.times_term(1, mult);
                    std::vector<Rational> row(cols.size());
                    for (std::size_t c = 0; c < cols.size(); ++c) {
                        row[c] = p.coefficient(cols[c]);
                    }
                    rows.push_back(std::move(row));
                }
            }
        }
        const std::size_t quotient = cols.size() - detail::rank(std::move(rows));
        if (t == top && quotient != 0) {
            throw NotIsolated("Jacobian quotient is nonzero in degree " + std::to_string(top) +
                              ", beyond the top degree of an isolated singularity");
        }
        total += quotient;
    }
    return total;
}

}  // namespace loopsing
