#pragma once

// Truncated Laurent jets of a homogeneous polynomial F on A^d, the loop
// functional Lambda(F) (constant term of F(z(t))), and symbolic checks of
// its structure near the top of a truncation window.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "exactalg.hpp"

namespace loopsing {

class NotHomogeneous : public error {
public:
    NotHomogeneous(std::uint64_t a, std::uint64_t b)
        : error("function is not homogeneous: monomials of degree " + std::to_string(a) +
                " and " + std::to_string(b)),
          first_degree(a),
          second_degree(b)
    {
    }
    std::uint64_t first_degree;
    std::uint64_t second_degree;
};

class DegreeTooLow : public error {
public:
    explicit DegreeTooLow(std::uint64_t delta)
        : error("degree of homogeneity " + std::to_string(delta) + " is below 2"), degree(delta)
    {
    }
    std::uint64_t degree;
};

class ZeroFunction : public error {
public:
    ZeroFunction() : error("function is identically zero") {}
};

/// Truncation of conformal degrees to the closed interval [-bottom, top].
class Window {
public:
    Window(int bottom, int top) : bottom_(bottom), top_(top)
    {
        if (bottom < 0) {
            throw std::invalid_argument("window bottom must be nonnegative");
        }
        if (top < -bottom) {
            throw std::invalid_argument("window top " + std::to_string(top) + " below -bottom " +
                                        std::to_string(-bottom));
        }
    }

    int bottom() const { return bottom_; }
    int top() const { return top_; }
    int lowest() const { return -bottom_; }
    bool contains(int cdeg) const { return cdeg >= -bottom_ && cdeg <= top_; }
    int width() const { return top_ + bottom_ + 1; }

    friend bool operator==(const Window&, const Window&) = default;

private:
    int bottom_;
    int top_;
};

/// A homogeneous polynomial F of degree delta >= 2 in the ambient variables
/// z^1_0 .. z^d_0. Names are used only for rendering.
class InputFunction {
public:
    InputFunction(LoopPoly poly, int d, std::vector<std::string> names = {})
        : d_(d), poly_(std::move(poly)), names_(std::move(names))
    {
        if (d < 1) {
            throw std::invalid_argument("number of coordinates must be positive");
        }
        if (poly_.is_zero()) {
            throw ZeroFunction();
        }
        for (const auto& v : poly_.variables()) {
            if (v.cdeg != 0 || v.coord < 1 || v.coord > d) {
                throw std::invalid_argument("input function uses a non-ambient variable");
            }
        }
        const auto lead_deg = poly_.leading_monomial().degree();
        for (const auto& [m, c] : poly_.terms()) {
            if (m.degree() != lead_deg) {
                throw NotHomogeneous(lead_deg, m.degree());
            }
        }
        if (lead_deg < 2) {
            throw DegreeTooLow(lead_deg);
        }
        delta_ = static_cast<int>(lead_deg);
        if (names_.empty()) {
            for (int i = 1; i <= d; ++i) {
                names_.push_back(d == 1 ? "z" : "z" + std::to_string(i));
            }
        }
        if (names_.size() != static_cast<std::size_t>(d)) {
            throw std::invalid_argument("expected one name per coordinate");
        }
    }

    int d() const { return d_; }
    int delta() const { return delta_; }
    const LoopPoly& poly() const { return poly_; }
    const std::vector<std::string>& names() const { return names_; }

    /// Top of the minimal sufficient window for bottom b: b(delta - 1).
    int top_for(int b) const { return b * (delta_ - 1); }
    Window default_window(int b) const { return Window(b, top_for(b)); }

    friend bool operator==(const InputFunction&, const InputFunction&) = default;

private:
    int d_;
    int delta_ = 0;
    LoopPoly poly_;
    std::vector<std::string> names_;
};

/// Coefficient of t^k in p(z^1(t), ..., z^d(t)) where z^i(t) = sum over the
/// window of z^i_j t^j and p is a polynomial in the ambient variables.
///
/// Expansion runs slot by slot over each monomial, discarding partial
/// t-degrees that the remaining slots can no longer bring to k.
inline LoopPoly jet_coefficient(const LoopPoly& p, const Window& w, long k)
{
    LoopPoly out;
    for (const auto& [mono, coeff] : p.terms()) {
        std::vector<int> slots;
        for (const auto& [v, e] : mono.factors()) {
            if (v.cdeg != 0) {
                throw std::invalid_argument("jet_coefficient expects a polynomial in ambient variables");
            }
            slots.insert(slots.end(), e, v.coord);
        }
        std::map<long, LoopPoly> partials;
        partials.emplace(0, LoopPoly(coeff));
        for (std::size_t s = 0; s < slots.size(); ++s) {
            const auto remaining = static_cast<long>(slots.size() - s - 1);
            const long reach_lo = -static_cast<long>(w.bottom()) * remaining;
            const long reach_hi = static_cast<long>(w.top()) * remaining;
            std::map<long, LoopPoly> next;
            for (const auto& [tdeg, poly] : partials) {
                for (int j = w.lowest(); j <= w.top(); ++j) {
                    const long q = tdeg + j;
                    if (k - q < reach_lo || k - q > reach_hi) {
                        continue;
                    }
                    next[q] += poly.times_term(1, Monomial::var(LoopVar{slots[s], j}));
                }
            }
            partials = std::move(next);
        }
        if (auto it = partials.find(k); it != partials.end()) {
            out += it->second;
        }
    }
    return out;
}

inline LoopPoly jet_coefficient(const InputFunction& f, const Window& w, long k)
{
    return jet_coefficient(f.poly(), w, k);
}

/// Lambda(F) on the window: the constant term of F(z(t)).
inline LoopPoly lambda_of(const InputFunction& f, const Window& w)
{
    LoopPoly lam = jet_coefficient(f, w, 0);
    if (!lam.is_zero()) {
        if (grading(lam, cdeg_weight) != std::set<long long>{0}) {
            throw std::logic_error("lambda_of: result is not of conformal weight 0");
        }
        if (grading(lam, unit_weight) != std::set<long long>{f.delta()}) {
            throw std::logic_error("lambda_of: result is not of total degree delta");
        }
    }
    return lam;
}

/// Drops every monomial containing a variable outside the window.
inline LoopPoly restrict_to_window(const LoopPoly& p, const Window& w)
{
    LoopPoly r;
    for (const auto& [m, c] : p.terms()) {
        bool inside = true;
        for (const auto& [v, e] : m.factors()) {
            inside = inside && w.contains(v.cdeg);
        }
        if (inside) {
            r.add_term(m, c);
        }
    }
    return r;
}

struct SupportReport {
    int bottom = 0;
    int max_cdeg_present = 0;
    int bound = 0;
    bool ok = false;
    std::optional<Monomial> witness;  // a monomial using a variable beyond the bound
};

/// With poles bounded by b, no variable of conformal degree above b(delta-1)
/// occurs in Lambda(F). Checked on a window reaching delta past the bound.
inline SupportReport check_support_bound(const InputFunction& f, int b)
{
    SupportReport r;
    r.bottom = b;
    r.bound = f.top_for(b);
    const LoopPoly lam = lambda_of(f, Window(b, r.bound + f.delta()));
    r.max_cdeg_present = lam.variables().rbegin()->cdeg;
    for (const auto& [m, c] : lam.terms()) {
        if (m.factors().back().first.cdeg > r.bound) {
            r.witness = m;
            break;
        }
    }
    r.ok = !r.witness.has_value();
    return r;
}

struct TopLinearityReport {
    int bottom = 0;
    int top = 0;  // N = b(delta-1)
    bool ok = false;
    std::vector<Monomial> offending_monomials;
    LoopPoly linear_part;  // sum_j z^j_N * d Lambda / d z^j_N
    LoopPoly remainder;    // no variable of conformal degree N
};

/// Every monomial of Lambda(F) on [-b, N] is at most linear in the variables
/// of conformal degree N.
inline TopLinearityReport check_top_linearity(const InputFunction& f, int b)
{
    if (b < 1) {
        throw std::invalid_argument("check_top_linearity requires b >= 1");
    }
    TopLinearityReport r;
    r.bottom = b;
    r.top = f.top_for(b);
    const LoopPoly lam = lambda_of(f, Window(b, r.top));
    for (const auto& [m, c] : lam.terms()) {
        std::uint32_t top_exp = 0;
        for (const auto& [v, e] : m.factors()) {
            if (v.cdeg == r.top) {
                top_exp += e;
            }
        }
        if (top_exp == 0) {
            r.remainder.add_term(m, c);
        } else if (top_exp == 1) {
            r.linear_part.add_term(m, c);
        } else {
            r.offending_monomials.push_back(m);
        }
    }
    LoopPoly euler;
    for (int j = 1; j <= f.d(); ++j) {
        const LoopVar top_var{j, r.top};
        euler += LoopPoly::var(top_var) * partial(lam, top_var);
    }
    r.ok = r.offending_monomials.empty() && euler == r.linear_part &&
           r.linear_part + r.remainder == lam;
    return r;
}

struct DerivativeCheck {
    int coord = 0;
    LoopPoly lhs;         // d Lambda / d z^j_N
    LoopPoly via_jet;     // t^{-N} coefficient of (d_j F)(z(t))
    LoopPoly via_bottom;  // (d_j F)(z^1_{-b}, ..., z^d_{-b})
    bool ok_jet = false;
    bool ok_bottom = false;
};

struct DerivativeReport {
    int bottom = 0;
    int top = 0;
    std::vector<DerivativeCheck> checks;
    std::vector<bool> ok_per_coord;

    bool ok() const
    {
        for (bool b : ok_per_coord) {
            if (!b) {
                return false;
            }
        }
        return true;
    }
};

/// Verifies both descriptions of the top-degree partials of Lambda(F):
/// as a jet coefficient of d_j F and as d_j F evaluated at the most
/// negative window index.
inline DerivativeReport check_derivative_identity(const InputFunction& f, int b)
{
    if (b < 1) {
        throw std::invalid_argument("check_derivative_identity requires b >= 1");
    }
    DerivativeReport r;
    r.bottom = b;
    r.top = f.top_for(b);
    const Window w(b, r.top);
    const LoopPoly lam = lambda_of(f, w);

    std::map<LoopVar, LoopPoly> to_bottom;
    for (int i = 1; i <= f.d(); ++i) {
        to_bottom.emplace(ambient(i), LoopPoly::var(LoopVar{i, -b}));
    }
    for (int j = 1; j <= f.d(); ++j) {
        DerivativeCheck c;
        c.coord = j;
        const LoopPoly dF = partial(f.poly(), ambient(j));
        c.lhs = partial(lam, LoopVar{j, r.top});
        c.via_jet = jet_coefficient(dF, w, -static_cast<long>(r.top));
        c.via_bottom = substitute(dF, to_bottom);
        c.ok_jet = c.lhs == c.via_jet;
        c.ok_bottom = c.lhs == c.via_bottom;
        r.ok_per_coord.push_back(c.ok_jet && c.ok_bottom);
        r.checks.push_back(std::move(c));
    }
    return r;
}

/// Lambda(F) restricted to constant loops; always F itself in the z^i_0.
inline LoopPoly constant_loop_restriction(const InputFunction& f, const Window& w)
{
    if (!w.contains(0)) {
        throw std::invalid_argument("constant_loop_restriction: window must contain 0");
    }
    LoopPoly r = restrict_to_window(lambda_of(f, w), Window(0, 0));
    if (r != f.poly()) {
        throw std::logic_error("constant_loop_restriction: restriction differs from F");
    }
    return r;
}

}  // namespace loopsing
