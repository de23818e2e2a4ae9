#include <gtest/gtest.h>

#include <loopsing/cohom.hpp>

using namespace loopsing;

namespace {

const LesSolution& solved(const std::variant<LesSolution, Underdetermined>& v)
{
    return std::get<LesSolution>(v);
}

struct Case {
    int d;
    std::uint64_t mu;
};

// (d, mu) pairs of the isolated corpus, plus a few larger Fermat values
const std::vector<Case> kCases{{1, 1}, {1, 2}, {1, 4}, {2, 1}, {2, 4}, {2, 9}, {3, 1}, {3, 8}, {3, 64}};

}  // namespace

TEST(GradedDims, NoZeroEntriesAndShift)
{
    GradedDims g{{0, 1}, {3, 0}, {-2, 4}};
    EXPECT_EQ(g.entries().size(), 2U);
    EXPECT_EQ(g.at(3), 0U);
    EXPECT_EQ(g.shifted(5), (GradedDims{{5, 1}, {3, 4}}));
    g.set(0, 0);
    EXPECT_EQ(g, (GradedDims{{-2, 4}}));
    EXPECT_THROW((GradedDims{} - GradedDims{{1, 1}}), std::logic_error);
}

TEST(MilnorFiberCohomology, Examples)
{
    EXPECT_EQ(milnor_fiber_cohomology(1, 1), (GradedDims{{0, 2}}));
    EXPECT_EQ(milnor_fiber_cohomology(2, 4), (GradedDims{{0, 1}, {1, 4}}));
    EXPECT_EQ(milnor_fiber_cohomology(3, 1), (GradedDims{{0, 1}, {2, 1}}));
    // Euler characteristic 1 + (-1)^{d-1} mu
    EXPECT_EQ(milnor_fiber_cohomology(2, 4).euler_characteristic(), -3);
    EXPECT_EQ(milnor_fiber_cohomology(3, 1).euler_characteristic(), 2);
}

TEST(SphereCohomology, Examples)
{
    EXPECT_EQ(sphere_cohomology(1), (GradedDims{{0, 1}, {1, 1}}));
    EXPECT_EQ(sphere_cohomology(2), (GradedDims{{0, 1}, {3, 1}}));
    EXPECT_EQ(sphere_cohomology(5), (GradedDims{{0, 1}, {9, 1}}));
}

TEST(SolveLes, QuadricFirstStepGivesTwoSphere)
{
    const LesSystem sys = gysin_system(GradedDims{{0, 2}}, 1);
    const auto r = solve_les(sys);
    ASSERT_TRUE(std::holds_alternative<LesSolution>(r));
    EXPECT_EQ(solved(r).b, (GradedDims{{0, 1}, {2, 1}}));
    EXPECT_TRUE(exactness_audit(sys, solved(r)));
    ASSERT_EQ(solved(r).axioms_used.size(), 1U);
    EXPECT_EQ(solved(r).axioms_used[0].justification, kResidueAxiom);
}

TEST(SolveLes, ZeroSystem)
{
    const auto r = solve_les(LesSystem{2, {}, {}, {}});
    ASSERT_TRUE(std::holds_alternative<LesSolution>(r));
    EXPECT_TRUE(solved(r).b.empty());
}

TEST(SolveLes, FermatCubicFirstStep)
{
    // hand rank-chase: the unit of H^0(X^0) is hit by the residue from H^3(U),
    // the four classes of H^1(X^0) map isomorphically to H^5(X^1)
    const LesSystem sys = gysin_system(GradedDims{{0, 1}, {1, 4}}, 2);
    const auto& sol = solved(solve_les(sys));
    EXPECT_EQ(sol.b, (GradedDims{{0, 1}, {5, 4}}));
    EXPECT_EQ(sol.residue_rank.at(3), 1U);
    EXPECT_EQ(sol.gysin_rank.at(4), 0U);
    EXPECT_EQ(sol.gysin_rank.at(5), 4U);
    EXPECT_EQ(sol.restriction_rank.at(0), 1U);
    EXPECT_EQ(gysin_step(GradedDims{{1, 4}}, 2), (GradedDims{{5, 4}}));
}

TEST(SolveLes, WithoutResidueFactIsUnderdetermined)
{
    LesSystem sys = gysin_system(GradedDims{{0, 1}, {1, 4}}, 2);
    sys.rank_facts.clear();
    const auto r = solve_les(sys);
    ASSERT_TRUE(std::holds_alternative<Underdetermined>(r));
    EXPECT_EQ(std::get<Underdetermined>(r).degrees, (std::vector<int>{3}));
}

TEST(SolveLes, FactsOnAdjacentMapsPinTheResidue)
{
    LesSystem sys = gysin_system(GradedDims{{0, 1}, {1, 4}}, 2);
    sys.rank_facts = {RankFact{MapKind::restriction, 3, 0, "test"}};
    EXPECT_EQ(solved(solve_les(sys)).b, (GradedDims{{0, 1}, {5, 4}}));
    sys.rank_facts = {RankFact{MapKind::gysin, 4, 0, "test"}};
    EXPECT_EQ(solved(solve_les(sys)).b, (GradedDims{{0, 1}, {5, 4}}));
    // rank zero residue instead: the unit survives into H^4(X^1) and H^3(U) lifts
    sys.rank_facts = {RankFact{MapKind::residue, 3, 0, "test"}};
    EXPECT_EQ(solved(solve_les(sys)).b, (GradedDims{{0, 1}, {3, 1}, {4, 1}, {5, 4}}));
}

TEST(SolveLes, InconsistentFacts)
{
    LesSystem sys = gysin_system(GradedDims{{0, 1}, {1, 4}}, 2);
    sys.rank_facts.push_back(RankFact{MapKind::residue, 3, 0, "conflict"});
    EXPECT_THROW(solve_les(sys), Inconsistent);

    sys.rank_facts = {RankFact{MapKind::residue, 3, 2, "too large"}};
    EXPECT_THROW(solve_les(sys), Inconsistent);

    sys.rank_facts = {RankFact{MapKind::residue, 1, 1, "zero source"}};
    EXPECT_THROW(solve_les(sys), Inconsistent);
}

TEST(GysinStep, Examples)
{
    EXPECT_EQ(gysin_step(GradedDims{{0, 1}}, 1), (GradedDims{{2, 1}}));
    EXPECT_EQ(gysin_step(GradedDims{{1, 4}}, 2), (GradedDims{{5, 4}}));
    EXPECT_EQ(gysin_step(GradedDims{}, 3), GradedDims{});
}

TEST(TruncationCohomology, Examples)
{
    EXPECT_EQ(truncation_cohomology(1, 1, 2), (GradedDims{{0, 1}, {4, 1}}));
    EXPECT_EQ(truncation_cohomology(2, 4, 0), (GradedDims{{0, 1}, {1, 4}}));
    EXPECT_EQ(truncation_cohomology(2, 4, 2), (GradedDims{{0, 1}, {9, 4}}));
    for (int n = 0; n <= 5; ++n) {
        // the quadric truncations are homotopy 2n-spheres
        GradedDims sphere{{0, 1}};
        sphere.add(2 * n, 1);
        EXPECT_EQ(truncation_cohomology(1, 1, n), sphere);
    }
}

TEST(TruncationTower, SolverCoherenceAndEulerCharacteristic)
{
    for (const auto& [d, mu] : kCases) {
        const auto tower = truncation_tower(d, mu, 4);
        EXPECT_TRUE(tower.audits_ok);
        EXPECT_TRUE(tower.shift_rule_ok);
        for (int n = 0; n < 4; ++n) {
            const auto& sys = tower.systems[static_cast<std::size_t>(n)];
            // chi(B) = chi(A) + chi(C), and chi(S^{2d-1}) = 0
            EXPECT_EQ(tower.levels[static_cast<std::size_t>(n + 1)].euler_characteristic(),
                      sys.a.euler_characteristic() + sys.c.euler_characteristic());
            EXPECT_EQ(tower.levels[static_cast<std::size_t>(n + 1)],
                      truncation_cohomology(d, mu, n + 1));
        }
    }
}

TEST(Renormalized, Examples)
{
    auto r = renormalized_nearby_cohomology(1, 1, 4);
    EXPECT_EQ(r.stable, (GradedDims{{0, 1}}));
    EXPECT_TRUE(r.concentrated);
    EXPECT_EQ(r.stabilization_step.at(0), 1);

    r = renormalized_nearby_cohomology(2, 4, 4);
    EXPECT_EQ(r.stable, (GradedDims{{1, 4}}));
    EXPECT_EQ(r.stabilization_step.at(1), 0);
    EXPECT_EQ(r.stabilization_step.at(0), 1);

    r = renormalized_nearby_cohomology(3, 8, 4);
    EXPECT_EQ(r.stable, (GradedDims{{2, 8}}));
    ASSERT_EQ(r.axioms.size(), 1U);
    EXPECT_EQ(r.axioms[0], kResidueAxiom);

    EXPECT_THROW(renormalized_nearby_cohomology(1, 1, 1), std::invalid_argument);
}

TEST(Renormalized, ConcentratedInOneDegreeWithinPredictedSteps)
{
    for (const auto& [d, mu] : kCases) {
        const auto r = renormalized_nearby_cohomology(d, mu, 4);
        EXPECT_EQ(r.stable, (GradedDims{{d - 1, mu}})) << d << "," << mu;
        EXPECT_TRUE(r.concentrated);
        EXPECT_TRUE(r.within_predicted);
        for (const auto& [k, n] : r.stabilization_step) {
            if (k > 0) {
                EXPECT_EQ(n, 0);
            }
            if (k < 0) {
                EXPECT_EQ(r.stable.at(k), 0U);
            }
        }
        // negative degrees are tracked, not clamped
        EXPECT_LT(r.stabilization_step.begin()->first, 0);
    }
}

TEST(Renormalized, NegativeMultiplesOfTwoDStabilizeOneStepLate)
{
    // the unit class of X^j sits in renormalized degree -2jd and dies at j+1
    const auto r = renormalized_nearby_cohomology(2, 4, 5);
    EXPECT_EQ(r.stabilization_step.at(-4), 2);
    EXPECT_EQ(r.stabilization_step.at(-8), 3);
    EXPECT_EQ(predicted_stabilization_step(-4, 2), 2);
    EXPECT_EQ(predicted_stabilization_step(-3, 2), 1);
    EXPECT_EQ(predicted_stabilization_step(-5, 2), 2);
}

TEST(Renormalized, DimensionTheoryShiftCovariance)
{
    for (const auto& [d, mu] : kCases) {
        const auto base = renormalized_nearby_cohomology(d, mu, 4);
        for (int k : {-3, -1, 1, 2}) {
            const auto moved = renormalized_nearby_cohomology(d, mu, 4, DimensionTheory{d, k});
            EXPECT_EQ(moved.stable, base.stable.shifted(-2 * k));
            EXPECT_TRUE(moved.concentrated);
            ASSERT_EQ(moved.stabilization_step.size(), base.stabilization_step.size());
            for (const auto& [deg, n] : base.stabilization_step) {
                EXPECT_EQ(moved.stabilization_step.at(deg - 2 * k), n);
            }
        }
    }
}

TEST(EscapeReport, Examples)
{
    const auto e = escape_report(1, 1, 3);
    std::vector<std::pair<int, int>> got;
    for (const auto& x : e) {
        got.emplace_back(x.n, x.degree);
    }
    EXPECT_EQ(got, (std::vector<std::pair<int, int>>{{0, 0}, {1, 2}, {2, 4}, {3, 6}}));

    const auto f = escape_report(2, 4, 2);
    EXPECT_EQ(f[0].degree, 1);
    EXPECT_EQ(f[1].degree, 5);
    EXPECT_EQ(f[2].degree, 9);
    // the stated bound 2(n+1)d - 1 sits d above the computed degree
    EXPECT_EQ(f[0].stated_bound, 3);
    EXPECT_FALSE(f[0].meets_stated_bound);
}

TEST(EscapeReport, ArithmeticProgression)
{
    for (const auto& [d, mu] : kCases) {
        const auto e = escape_report(d, mu, 4);
        for (std::size_t i = 0; i < e.size(); ++i) {
            EXPECT_EQ(e[i].degree, 2 * static_cast<int>(i) * d + d - 1);
            EXPECT_EQ(e[i].stated_bound - e[i].degree, d);
            if (i > 0) {
                EXPECT_EQ(e[i].degree - e[i - 1].degree, 2 * d);
            }
        }
    }
}
