#pragma once

// Exact rational arithmetic and sparse multivariate polynomials over the
// loop-space alphabet z^i_j (coordinate i, conformal degree j).

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace loopsing {

using Integer = boost::multiprecision::cpp_int;
/// Always in lowest terms with positive denominator; zero is 0/1.
using Rational = boost::multiprecision::cpp_rational;

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A coordinate of the loop space: z^coord_cdeg.
///
/// Totally ordered by conformal degree first, then by coordinate index.
struct LoopVar {
    int coord = 1;
    int cdeg = 0;

    friend constexpr bool operator==(const LoopVar&, const LoopVar&) = default;
    friend constexpr std::strong_ordering operator<=>(const LoopVar& a, const LoopVar& b)
    {
        if (auto c = a.cdeg <=> b.cdeg; c != 0) {
            return c;
        }
        return a.coord <=> b.coord;
    }
};

/// The ambient coordinate z^i, identified with the constant-loop variable z^i_0.
constexpr LoopVar ambient(int coord) { return LoopVar{coord, 0}; }

class MissingAssignment : public error {
public:
    explicit MissingAssignment(LoopVar v)
        : error("substitute: no assignment for z^" + std::to_string(v.coord) + "_" +
                std::to_string(v.cdeg)),
          var(v)
    {
    }
    LoopVar var;
};

/// Power product of loop variables, factors sorted ascending by LoopVar.
class Monomial {
public:
    using Factor = std::pair<LoopVar, std::uint32_t>;

    Monomial() = default;

    static Monomial var(LoopVar v, std::uint32_t exp = 1)
    {
        Monomial m;
        if (exp > 0) {
            m.factors_.emplace_back(v, exp);
        }
        return m;
    }

    /// Builds from arbitrary (possibly repeated, possibly zero-exponent) factors.
    static Monomial from_factors(std::vector<Factor> fs)
    {
        std::sort(fs.begin(), fs.end(),
                  [](const Factor& a, const Factor& b) { return a.first < b.first; });
        Monomial m;
        for (const auto& [v, e] : fs) {
            if (e == 0) {
                continue;
            }
            if (!m.factors_.empty() && m.factors_.back().first == v) {
                m.factors_.back().second += e;
            } else {
                m.factors_.emplace_back(v, e);
            }
        }
        return m;
    }

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_unit() const { return factors_.empty(); }

    std::uint64_t degree() const
    {
        std::uint64_t d = 0;
        for (const auto& f : factors_) {
            d += f.second;
        }
        return d;
    }

    std::uint32_t exponent(LoopVar v) const
    {
        auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                                   [](const Factor& f, LoopVar x) { return f.first < x; });
        return (it != factors_.end() && it->first == v) ? it->second : 0;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b)
    {
        Monomial r;
        r.factors_.reserve(a.factors_.size() + b.factors_.size());
        auto i = a.factors_.begin();
        auto j = b.factors_.begin();
        while (i != a.factors_.end() || j != b.factors_.end()) {
            if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
                r.factors_.push_back(*i++);
            } else if (i == a.factors_.end() || j->first < i->first) {
                r.factors_.push_back(*j++);
            } else {
                r.factors_.emplace_back(i->first, i->second + j->second);
                ++i;
                ++j;
            }
        }
        return r;
    }

    bool divides(const Monomial& other) const
    {
        auto j = other.factors_.begin();
        for (const auto& [v, e] : factors_) {
            while (j != other.factors_.end() && j->first < v) {
                ++j;
            }
            if (j == other.factors_.end() || j->first != v || j->second < e) {
                return false;
            }
        }
        return true;
    }

    /// Quotient other / *this; requires divides(other).
    Monomial cofactor_in(const Monomial& other) const
    {
        std::vector<Factor> out;
        for (const auto& [v, e] : other.factors_) {
            const auto mine = exponent(v);
            if (e > mine) {
                out.emplace_back(v, e - mine);
            }
        }
        Monomial r;
        r.factors_ = std::move(out);
        return r;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b)
    {
        std::vector<Factor> fs = a.factors_;
        fs.insert(fs.end(), b.factors_.begin(), b.factors_.end());
        std::sort(fs.begin(), fs.end(),
                  [](const Factor& x, const Factor& y) { return x.first < y.first; });
        Monomial r;
        for (const auto& [v, e] : fs) {
            if (!r.factors_.empty() && r.factors_.back().first == v) {
                r.factors_.back().second = std::max(r.factors_.back().second, e);
            } else {
                r.factors_.emplace_back(v, e);
            }
        }
        return r;
    }

    static bool coprime(const Monomial& a, const Monomial& b)
    {
        auto j = b.factors_.begin();
        for (const auto& f : a.factors_) {
            while (j != b.factors_.end() && j->first < f.first) {
                ++j;
            }
            if (j != b.factors_.end() && j->first == f.first) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<Factor> factors_;
};

/// Graded reverse lexicographic order. Variables are ranked by the LoopVar
/// order with the smallest LoopVar being the largest variable, so
/// z^1_0 > z^2_0 and z_{-1} > z_0 > z_1.
inline std::strong_ordering grevlex_compare(const Monomial& a, const Monomial& b)
{
    if (auto c = a.degree() <=> b.degree(); c != 0) {
        return c;
    }
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    auto i = fa.rbegin();
    auto j = fb.rbegin();
    while (i != fa.rend() || j != fb.rend()) {
        // walk from the largest LoopVar (the smallest variable) downwards
        std::uint32_t ea = 0;
        std::uint32_t eb = 0;
        if (j == fb.rend() || (i != fa.rend() && j->first < i->first)) {
            ea = (i++)->second;
        } else if (i == fa.rend() || i->first < j->first) {
            eb = (j++)->second;
        } else {
            ea = (i++)->second;
            eb = (j++)->second;
        }
        if (ea != eb) {
            return eb <=> ea;
        }
    }
    return std::strong_ordering::equal;
}

/// Strict weak order placing greater monomials first.
struct GrevlexDescending {
    bool operator()(const Monomial& a, const Monomial& b) const
    {
        return grevlex_compare(a, b) > 0;
    }
};

/// Sparse polynomial with exact rational coefficients. Terms are kept in
/// descending grevlex order, so the leading term is the first one and equal
/// polynomials have identical representations.
class LoopPoly {
public:
    using Terms = std::map<Monomial, Rational, GrevlexDescending>;

    LoopPoly() = default;
    LoopPoly(const Rational& c)  // NOLINT(google-explicit-constructor)
    {
        if (c != 0) {
            terms_.emplace(Monomial{}, c);
        }
    }
    LoopPoly(int c) : LoopPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)

    static LoopPoly term(const Rational& c, Monomial m)
    {
        LoopPoly p;
        if (c != 0) {
            p.terms_.emplace(std::move(m), c);
        }
        return p;
    }
    static LoopPoly var(LoopVar v, std::uint32_t exp = 1) { return term(1, Monomial::var(v, exp)); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    const Monomial& leading_monomial() const { return terms_.begin()->first; }
    const Rational& leading_coefficient() const { return terms_.begin()->second; }

    Rational coefficient(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Adds c*m in place, pruning a cancelled term.
    void add_term(const Monomial& m, const Rational& c)
    {
        if (c == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    /// All variables occurring in the polynomial, ascending.
    std::set<LoopVar> variables() const
    {
        std::set<LoopVar> vs;
        for (const auto& [m, c] : terms_) {
            for (const auto& f : m.factors()) {
                vs.insert(f.first);
            }
        }
        return vs;
    }

    std::uint64_t total_degree() const
    {
        std::uint64_t d = 0;
        for (const auto& [m, c] : terms_) {
            d = std::max(d, m.degree());
        }
        return d;
    }

    LoopPoly& operator+=(const LoopPoly& q)
    {
        for (const auto& [m, c] : q.terms_) {
            add_term(m, c);
        }
        return *this;
    }
    LoopPoly& operator-=(const LoopPoly& q)
    {
        for (const auto& [m, c] : q.terms_) {
            add_term(m, -c);
        }
        return *this;
    }

    friend LoopPoly operator+(LoopPoly p, const LoopPoly& q) { return p += q; }
    friend LoopPoly operator-(LoopPoly p, const LoopPoly& q) { return p -= q; }
    friend LoopPoly operator-(const LoopPoly& p)
    {
        LoopPoly r;
        for (const auto& [m, c] : p.terms_) {
            r.terms_.emplace_hint(r.terms_.end(), m, -c);
        }
        return r;
    }

    friend LoopPoly operator*(const LoopPoly& p, const LoopPoly& q)
    {
        LoopPoly r;
        for (const auto& [mp, cp] : p.terms_) {
            for (const auto& [mq, cq] : q.terms_) {
                r.add_term(mp * mq, cp * cq);
            }
        }
        return r;
    }

    /// Multiplication by a single term c*m.
    LoopPoly times_term(const Rational& c, const Monomial& m) const
    {
        LoopPoly r;
        if (c == 0) {
            return r;
        }
        for (const auto& [mp, cp] : terms_) {
            // multiplying by a monomial preserves the order
            r.terms_.emplace_hint(r.terms_.end(), mp * m, cp * c);
        }
        return r;
    }

    friend bool operator==(const LoopPoly&, const LoopPoly&) = default;

private:
    Terms terms_;
};

inline LoopPoly add(const LoopPoly& p, const LoopPoly& q) { return p + q; }
inline LoopPoly mul(const LoopPoly& p, const LoopPoly& q) { return p * q; }

inline LoopPoly pow(const LoopPoly& p, std::uint32_t e)
{
    LoopPoly r(1);
    LoopPoly base = p;
    while (e > 0) {
        if (e & 1U) {
            r = r * base;
        }
        e >>= 1U;
        if (e > 0) {
            base = base * base;
        }
    }
    return r;
}

/// Formal partial derivative with respect to v.
inline LoopPoly partial(const LoopPoly& p, LoopVar v)
{
    LoopPoly r;
    for (const auto& [m, c] : p.terms()) {
        const auto e = m.exponent(v);
        if (e == 0) {
            continue;
        }
        std::vector<Monomial::Factor> fs = m.factors();
        for (auto& f : fs) {
            if (f.first == v) {
                f.second -= 1;
            }
        }
        r.add_term(Monomial::from_factors(std::move(fs)), c * e);
    }
    return r;
}

/// Simultaneous substitution of every variable of p.
inline LoopPoly substitute(const LoopPoly& p, const std::map<LoopVar, LoopPoly>& assignment)
{
    std::map<std::pair<LoopVar, std::uint32_t>, LoopPoly> powers;
    auto power_of = [&](LoopVar v, std::uint32_t e) -> const LoopPoly& {
        auto key = std::make_pair(v, e);
        auto it = powers.find(key);
        if (it == powers.end()) {
            auto a = assignment.find(v);
            if (a == assignment.end()) {
                throw MissingAssignment(v);
            }
            it = powers.emplace(key, pow(a->second, e)).first;
        }
        return it->second;
    };
    LoopPoly r;
    for (const auto& [m, c] : p.terms()) {
        LoopPoly t(c);
        for (const auto& [v, e] : m.factors()) {
            t = t * power_of(v, e);
        }
        r += t;
    }
    return r;
}

using WeightFn = std::function<long long(const LoopVar&)>;

/// Weights of the homogeneous components of p under a linear weight on variables.
inline std::set<long long> grading(const LoopPoly& p, const WeightFn& weight)
{
    std::set<long long> out;
    for (const auto& [m, c] : p.terms()) {
        long long w = 0;
        for (const auto& [v, e] : m.factors()) {
            w += weight(v) * static_cast<long long>(e);
        }
        out.insert(w);
    }
    return out;
}

inline long long cdeg_weight(const LoopVar& v) { return v.cdeg; }
inline long long unit_weight(const LoopVar&) { return 1; }

inline long long monomial_weight(const Monomial& m, const WeightFn& weight)
{
    long long w = 0;
    for (const auto& [v, e] : m.factors()) {
        w += weight(v) * static_cast<long long>(e);
    }
    return w;
}

// ---------------------------------------------------------------------------
// Rendering

using VarNamer = std::function<std::string(const LoopVar&)>;

/// Default loop-variable rendering: z<coord>_<cdeg>, e.g. z1_-2.
inline std::string default_var_name(const LoopVar& v)
{
    return "z" + std::to_string(v.coord) + "_" + std::to_string(v.cdeg);
}

/// Rendering with coordinate names, e.g. x_-2, z_0.
inline VarNamer loop_namer(std::vector<std::string> names)
{
    return [names = std::move(names)](const LoopVar& v) {
        const auto i = static_cast<std::size_t>(v.coord - 1);
        const std::string base = i < names.size() ? names[i] : "z" + std::to_string(v.coord);
        return base + "_" + std::to_string(v.cdeg);
    };
}

/// Rendering of ambient variables by bare name (for parseable output of F).
inline VarNamer ambient_namer(std::vector<std::string> names)
{
    return [names = std::move(names)](const LoopVar& v) {
        const auto i = static_cast<std::size_t>(v.coord - 1);
        return i < names.size() ? names[i] : "z" + std::to_string(v.coord);
    };
}

inline std::string to_string(const Rational& r)
{
    return r.str();
}

inline std::string to_string(const Monomial& m, const VarNamer& name = default_var_name)
{
    if (m.is_unit()) {
        return "1";
    }
    std::string s;
    for (const auto& [v, e] : m.factors()) {
        if (!s.empty()) {
            s += '*';
        }
        s += name(v);
        if (e != 1) {
            s += '^' + std::to_string(e);
        }
    }
    return s;
}

inline std::string to_string(const LoopPoly& p, const VarNamer& name = default_var_name)
{
    if (p.is_zero()) {
        return "0";
    }
    std::string s;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rational a = c;
        if (first) {
            if (a < 0) {
                s += '-';
                a = -a;
            }
        } else {
            s += a < 0 ? " - " : " + ";
            if (a < 0) {
                a = -a;
            }
        }
        first = false;
        if (m.is_unit()) {
            s += to_string(a);
        } else if (a == 1) {
            s += to_string(m, name);
        } else {
            s += to_string(a) + "*" + to_string(m, name);
        }
    }
    return s;
}

}  // namespace loopsing
