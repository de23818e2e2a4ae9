#pragma once

// Graded dimension bookkeeping for the Gysin long exact sequence
//
//   ... -> H^{s-2c}(X^n) -> H^s(X^{n+1}) -> H^s(U^n) -> H^{s-2c+1}(X^n) -> ...
//
// with c = d, the truncation cohomologies H*(X^n) it produces, and the
// renormalized colimit along the Gysin maps.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "exactalg.hpp"

namespace loopsing {

/// Finite-support map degree -> dimension. Zero entries are never stored.
class GradedDims {
public:
    using Map = std::map<int, std::uint64_t>;

    GradedDims() = default;
    GradedDims(std::initializer_list<std::pair<const int, std::uint64_t>> init)
    {
        for (const auto& [deg, dim] : init) {
            add(deg, dim);
        }
    }

    std::uint64_t at(int deg) const
    {
        auto it = dims_.find(deg);
        return it == dims_.end() ? 0 : it->second;
    }

    void set(int deg, std::uint64_t dim)
    {
        if (dim == 0) {
            dims_.erase(deg);
        } else {
            dims_[deg] = dim;
        }
    }

    void add(int deg, std::uint64_t dim) { set(deg, at(deg) + dim); }

    const Map& entries() const { return dims_; }
    bool empty() const { return dims_.empty(); }
    int min_degree() const { return dims_.begin()->first; }
    int max_degree() const { return dims_.rbegin()->first; }

    GradedDims shifted(int by) const
    {
        GradedDims r;
        for (const auto& [deg, dim] : dims_) {
            r.dims_.emplace(deg + by, dim);
        }
        return r;
    }

    friend GradedDims operator+(GradedDims a, const GradedDims& b)
    {
        for (const auto& [deg, dim] : b.dims_) {
            a.add(deg, dim);
        }
        return a;
    }

    /// a - b, requiring b <= a degreewise.
    friend GradedDims operator-(GradedDims a, const GradedDims& b)
    {
        for (const auto& [deg, dim] : b.dims_) {
            if (a.at(deg) < dim) {
                throw std::logic_error("GradedDims subtraction below zero at degree " +
                                       std::to_string(deg));
            }
            a.set(deg, a.at(deg) - dim);
        }
        return a;
    }

    long long euler_characteristic() const
    {
        long long chi = 0;
        for (const auto& [deg, dim] : dims_) {
            chi += (deg % 2 == 0 ? 1 : -1) * static_cast<long long>(dim);
        }
        return chi;
    }

    friend bool operator==(const GradedDims&, const GradedDims&) = default;

private:
    Map dims_;
};

inline std::string to_string(const GradedDims& g)
{
    std::string s = "{";
    for (const auto& [deg, dim] : g.entries()) {
        if (s.size() > 1) {
            s += ", ";
        }
        s += std::to_string(deg) + ": " + std::to_string(dim);
    }
    return s + "}";
}

class Inconsistent : public error {
public:
    using error::error;
};

class NotStabilized : public error {
public:
    using error::error;
};

inline const std::string kResidueAxiom =
    "paper-proved input (Step 4 residue): the residue map H^{2d-1}(U^n) -> H^0(X^n) "
    "has full rank";

/// H* of the Milnor fibre of a homogeneous isolated singularity: a wedge of
/// mu spheres of dimension d-1.
inline GradedDims milnor_fiber_cohomology(int d, std::uint64_t mu)
{
    GradedDims g{{0, 1}};
    g.add(d - 1, mu);
    return g;
}

/// H*(A^d \ {0}) = H*(S^{2d-1}); the cohomology of every U^n.
inline GradedDims sphere_cohomology(int d)
{
    return GradedDims{{0, 1}, {2 * d - 1, 1}};
}

// ---------------------------------------------------------------------------
// Long exact sequence solver

enum class MapKind {
    gysin,        // A^{s-2c} -> B^s
    restriction,  // B^s -> C^s
    residue,      // C^s -> A^{s-2c+1}
};

inline const char* to_string(MapKind k)
{
    switch (k) {
    case MapKind::gysin:
        return "gysin";
    case MapKind::restriction:
        return "restriction";
    case MapKind::residue:
        return "residue";
    }
    return "?";
}

/// A declared rank of the map of the given kind indexed by s.
struct RankFact {
    MapKind kind = MapKind::residue;
    int degree = 0;
    std::uint64_t rank = 0;
    std::string justification;
};

/// The repeating pattern A^{s-2c} -> B^s -> C^s -> A^{s-2c+1} with A and C
/// known and B unknown.
struct LesSystem {
    int codim = 1;
    GradedDims a;
    GradedDims c;
    std::vector<RankFact> rank_facts;
};

struct LesSolution {
    GradedDims b;
    // all keyed by s
    std::map<int, std::uint64_t> gysin_rank;
    std::map<int, std::uint64_t> restriction_rank;
    std::map<int, std::uint64_t> residue_rank;
    int lo = 0;  // range of s covered
    int hi = 0;
    std::vector<RankFact> axioms_used;
};

struct Underdetermined {
    std::vector<int> degrees;  // values of s whose residue rank is not pinned down
};

/// Solves for B. Exactness gives
///   dim C^s = rk restriction(s) + rk residue(s)
///   dim A^{s-2c+1} = rk residue(s) + rk gysin(s+1)
///   dim B^s = rk gysin(s) + rk restriction(s)
/// so everything follows from the residue ranks. A residue rank is forced to
/// zero when its source or target vanishes; otherwise it must come from a
/// rank fact (directly, or through the adjacent gysin/restriction rank).
inline std::variant<LesSolution, Underdetermined> solve_les(const LesSystem& sys)
{
    const int c2 = 2 * sys.codim;
    auto a_at = [&](int s) { return s < 0 ? 0 : sys.a.at(s); };  // H^{<0} = 0
    int lo = 0;
    int hi = 0;
    if (!sys.a.empty()) {
        lo = std::min(lo, sys.a.min_degree() + c2 - 1);
        hi = std::max(hi, sys.a.max_degree() + c2);
    }
    if (!sys.c.empty()) {
        lo = std::min(lo, sys.c.min_degree() - 1);
        hi = std::max(hi, sys.c.max_degree() + 1);
    }
    lo = std::min(lo, 0);

    std::map<int, std::uint64_t> residue;
    std::vector<RankFact> used;
    auto pin = [&](int s, std::uint64_t r, const RankFact& fact) {
        auto [it, inserted] = residue.emplace(s, r);
        if (!inserted && it->second != r) {
            throw Inconsistent("rank facts disagree on the residue map at degree " + std::to_string(s));
        }
        used.push_back(fact);
    };
    for (const auto& f : sys.rank_facts) {
        switch (f.kind) {
        case MapKind::residue:
            pin(f.degree, f.rank, f);
            break;
        case MapKind::restriction:
            if (f.rank > sys.c.at(f.degree)) {
                throw Inconsistent("restriction rank exceeds dim C at degree " + std::to_string(f.degree));
            }
            pin(f.degree, sys.c.at(f.degree) - f.rank, f);
            break;
        case MapKind::gysin: {
            const auto src = a_at(f.degree - c2);
            if (f.rank > src) {
                throw Inconsistent("gysin rank exceeds dim A at degree " + std::to_string(f.degree));
            }
            pin(f.degree - 1, src - f.rank, f);
            break;
        }
        }
    }

    std::vector<int> ambiguous;
    for (int s = lo; s <= hi; ++s) {
        const auto cap = std::min(sys.c.at(s), a_at(s - c2 + 1));
        auto it = residue.find(s);
        if (it != residue.end()) {
            if (it->second > cap) {
                throw Inconsistent("residue rank " + std::to_string(it->second) + " exceeds " +
                                   std::to_string(cap) + " at degree " + std::to_string(s));
            }
        } else if (cap == 0) {
            residue.emplace(s, 0);
        } else {
            ambiguous.push_back(s);
        }
    }
    for (const auto& [s, r] : residue) {
        if (s < lo || s > hi) {
            if (r != 0) {
                throw Inconsistent("nonzero residue rank outside the support at degree " +
                                   std::to_string(s));
            }
        }
    }
    if (!ambiguous.empty()) {
        return Underdetermined{ambiguous};
    }

    LesSolution sol;
    sol.lo = lo;
    sol.hi = hi;
    sol.axioms_used = std::move(used);
    for (int s = lo; s <= hi; ++s) {
        const auto res = residue.at(s);
        sol.residue_rank[s] = res;
        sol.restriction_rank[s] = sys.c.at(s) - res;
        const auto prev_res = s - 1 >= lo ? residue.at(s - 1) : 0;
        sol.gysin_rank[s] = a_at(s - c2) - prev_res;
        sol.b.set(s, sol.gysin_rank[s] + sol.restriction_rank[s]);
    }
    return sol;
}

/// Splits the sequence A^{s-2c}, B^s, C^s (s = lo..hi) at its zero entries
/// and checks that each segment has alternating dimension sum zero.
inline bool exactness_audit(const LesSystem& sys, const LesSolution& sol)
{
    const int c2 = 2 * sys.codim;
    std::vector<std::uint64_t> seq{0};
    for (int s = sol.lo; s <= sol.hi; ++s) {
        seq.push_back(s - c2 < 0 ? 0 : sys.a.at(s - c2));
        seq.push_back(sol.b.at(s));
        seq.push_back(sys.c.at(s));
    }
    seq.push_back(0);
    long long alt = 0;
    long long sign = 1;
    for (auto dim : seq) {
        if (dim == 0) {
            if (alt != 0) {
                return false;
            }
            sign = 1;
            continue;
        }
        alt += sign * static_cast<long long>(dim);
        sign = -sign;
    }
    // rank bookkeeping must also be internally exact
    for (int s = sol.lo; s < sol.hi; ++s) {
        const auto a_next = s - c2 + 1 < 0 ? 0 : sys.a.at(s - c2 + 1);
        if (sol.residue_rank.at(s) + sol.gysin_rank.at(s + 1) != a_next) {
            return false;
        }
    }
    return true;
}

/// The Gysin system for X^n -> X^{n+1} given the full H*(X^n).
inline LesSystem gysin_system(const GradedDims& full_h, int d)
{
    LesSystem sys;
    sys.codim = d;
    sys.a = full_h;
    sys.c = sphere_cohomology(d);
    const auto top = 2 * d - 1;
    sys.rank_facts.push_back(
        RankFact{MapKind::residue, top, std::min(sys.c.at(top), full_h.at(0)), kResidueAxiom});
    return sys;
}

/// Reduced H*(X^{n+1}) from reduced H*(X^n): a shift by 2d. Checked against
/// the generic solver on every call.
inline GradedDims gysin_step(const GradedDims& reduced_h, int d)
{
    const GradedDims unit{{0, 1}};
    const LesSystem sys = gysin_system(reduced_h + unit, d);
    auto solved = solve_les(sys);
    if (std::holds_alternative<Underdetermined>(solved)) {
        throw std::logic_error("gysin_step: Gysin system is underdetermined");
    }
    const auto& sol = std::get<LesSolution>(solved);
    if (!exactness_audit(sys, sol)) {
        throw std::logic_error("gysin_step: exactness audit failed");
    }
    GradedDims shifted = reduced_h.shifted(2 * d);
    if (sol.b - unit != shifted) {
        throw std::logic_error("gysin_step: shift rule disagrees with the solver: " +
                               to_string(sol.b - unit) + " vs " + to_string(shifted));
    }
    return shifted;
}

/// Full H*(X^n), iterating the Gysin step from the Milnor fibre.
inline GradedDims truncation_cohomology(int d, std::uint64_t mu, int n)
{
    if (n < 0) {
        throw std::invalid_argument("truncation_cohomology requires n >= 0");
    }
    const GradedDims unit{{0, 1}};
    GradedDims reduced = milnor_fiber_cohomology(d, mu) - unit;
    for (int i = 0; i < n; ++i) {
        reduced = gysin_step(reduced, d);
    }
    return reduced + unit;
}

/// H*(X^0), ..., H*(X^{n_max}) together with each solved Gysin system.
struct TruncationTower {
    int d = 1;
    std::uint64_t mu = 0;
    std::vector<GradedDims> levels;
    std::vector<LesSystem> systems;  // systems[n]: X^n -> X^{n+1}
    std::vector<LesSolution> steps;
    bool audits_ok = true;
    bool shift_rule_ok = true;
};

inline TruncationTower truncation_tower(int d, std::uint64_t mu, int n_max)
{
    TruncationTower t;
    t.d = d;
    t.mu = mu;
    t.levels.push_back(milnor_fiber_cohomology(d, mu));
    const GradedDims unit{{0, 1}};
    for (int n = 0; n < n_max; ++n) {
        LesSystem sys = gysin_system(t.levels.back(), d);
        auto solved = solve_les(sys);
        if (std::holds_alternative<Underdetermined>(solved)) {
            throw std::logic_error("truncation_tower: Gysin system is underdetermined");
        }
        auto sol = std::get<LesSolution>(std::move(solved));
        t.audits_ok = t.audits_ok && exactness_audit(sys, sol);
        t.shift_rule_ok =
            t.shift_rule_ok && sol.b == gysin_step(t.levels.back() - unit, d) + unit;
        t.levels.push_back(sol.b);
        t.systems.push_back(std::move(sys));
        t.steps.push_back(std::move(sol));
    }
    return t;
}

/// Delta(X^n) = normalization + n * offset_per_step.
struct DimensionTheory {
    int offset_per_step = 1;
    int normalization = 0;

    int at(int n) const { return normalization + n * offset_per_step; }
};

struct RenormalizedReport {
    GradedDims stable;
    std::map<int, int> stabilization_step;
    std::map<int, int> predicted_step;  // hand-derived bound on the stabilization step
    bool concentrated = false;          // stable == {d-1: mu} (shifted by the normalization)
    bool within_predicted = false;
    std::vector<std::string> axioms;
};

/// Step at which degree k of the renormalized colimit is argued to be stable
/// (normalization Delta(X^0) = 0): 0 for k > 0, 1 for k = 0, and for k < 0
/// the least n > 0 with k + 2nd >= 0, plus one when 2d divides k.
inline int predicted_stabilization_step(int k, int d)
{
    if (k > 0) {
        return 0;
    }
    if (k == 0) {
        return 1;
    }
    int n = 1;
    while (k + 2 * n * d < 0) {
        ++n;
    }
    return (-k) % (2 * d) == 0 ? n + 1 : n;
}

/// Colimit of H^{k + 2 Delta(n)}(X^n) along the Gysin maps, for every degree
/// k with enough room to observe at least one isomorphism before n_max.
inline RenormalizedReport renormalized_nearby_cohomology(int d, std::uint64_t mu, int n_max,
                                                         std::optional<DimensionTheory> theory = {})
{
    if (n_max < 2) {
        throw std::invalid_argument("renormalized_nearby_cohomology requires n_max >= 2");
    }
    const DimensionTheory dt = theory.value_or(DimensionTheory{d, 0});
    if (dt.offset_per_step != d) {
        throw std::invalid_argument("dimension theory must step by the codimension d");
    }
    const TruncationTower tower = truncation_tower(d, mu, n_max);
    if (!tower.audits_ok || !tower.shift_rule_ok) {
        throw std::logic_error("renormalized_nearby_cohomology: solver coherence failed");
    }

    RenormalizedReport r;
    r.axioms.push_back(kResidueAxiom);
    r.within_predicted = true;
    const int k_lo = -2 * d * (n_max - 1) + 1;
    const int k_hi = 2 * d - 1;
    for (int k = k_lo; k <= k_hi; ++k) {
        // raw degree of k at level n, with Delta(X^0) = 0
        auto raw = [&](int n) { return k + 2 * n * d; };
        auto dim_at = [&](int n) -> std::uint64_t {
            return raw(n) < 0 ? 0 : tower.levels[static_cast<std::size_t>(n)].at(raw(n));
        };
        auto iso_at = [&](int n) {
            const auto& step = tower.steps[static_cast<std::size_t>(n)];
            const auto target = raw(n + 1);
            const auto it = step.gysin_rank.find(target);
            const std::uint64_t rank = it == step.gysin_rank.end() ? 0 : it->second;
            return rank == dim_at(n) && rank == dim_at(n + 1);
        };
        int first = n_max;
        for (int n = n_max - 1; n >= 0 && iso_at(n); --n) {
            first = n;
        }
        if (first == n_max) {
            throw NotStabilized("degree " + std::to_string(k) + " does not stabilize by n = " +
                                std::to_string(n_max));
        }
        const int shifted_k = k - 2 * dt.normalization;
        r.stabilization_step[shifted_k] = first;
        r.stable.set(shifted_k, dim_at(n_max));
        r.predicted_step[shifted_k] = predicted_stabilization_step(k, d);
        r.within_predicted = r.within_predicted && first <= r.predicted_step[shifted_k];
    }
    r.concentrated = r.stable == GradedDims{{d - 1 - 2 * dt.normalization, mu}};
    return r;
}

struct EscapeEntry {
    int n = 0;
    int degree = 0;        // the single degree carrying reduced H*(X^n)
    int stated_bound = 0;  // 2(n+1)d - 1
    bool meets_stated_bound = false;

    friend bool operator==(const EscapeEntry&, const EscapeEntry&) = default;
};

/// Where the reduced cohomology of X^n lives, n = 0..n_max.
inline std::vector<EscapeEntry> escape_report(int d, std::uint64_t mu, int n_max)
{
    std::vector<EscapeEntry> out;
    const GradedDims unit{{0, 1}};
    for (int n = 0; n <= n_max; ++n) {
        const GradedDims reduced = truncation_cohomology(d, mu, n) - unit;
        if (reduced.entries().size() != 1) {
            throw std::logic_error("escape_report: reduced cohomology of X^" + std::to_string(n) +
                                   " is not concentrated in one degree");
        }
        EscapeEntry e;
        e.n = n;
        e.degree = reduced.min_degree();
        e.stated_bound = 2 * (n + 1) * d - 1;
        e.meets_stated_bound = e.degree >= e.stated_bound;
        out.push_back(e);
    }
    return out;
}

}  // namespace loopsing
