#include <random>

#include <gtest/gtest.h>

#include <loopsing/grobner.hpp>
#include <loopsing/parser.hpp>

#include "oracles.hpp"

using namespace loopsing;
using loopsing::testing::isolated_corpus;
using loopsing::testing::non_isolated_corpus;

namespace {

Ideal ideal_of(const std::vector<std::string>& gens, int d)
{
    Ideal I;
    for (int i = 1; i <= d; ++i) {
        I.variables.push_back(ambient(i));
    }
    for (const auto& g : gens) {
        // parse against a fixed variable order x, y, w
        std::string src = "0*x + 0*y + 0*w + " + g;
        I.generators.push_back(parse_polynomial(src).poly);
    }
    return I;
}

LoopPoly ax(int coord, std::uint32_t e = 1) { return LoopPoly::var(ambient(coord), e); }

}  // namespace

TEST(Buchberger, PrincipalIdealIsNormalized)
{
    const auto G = buchberger(ideal_of({"2*x"}, 1));
    ASSERT_EQ(G.elements.size(), 1U);
    EXPECT_EQ(G.elements[0], ax(1));
    EXPECT_TRUE(G.reduced);
}

TEST(Buchberger, PureSquares)
{
    const auto G = buchberger(ideal_of({"3*x^2", "3*y^2"}, 2));
    EXPECT_EQ(G.elements, (std::vector<LoopPoly>{ax(1, 2), ax(2, 2)}));
}

TEST(Buchberger, LinearSystem)
{
    const auto G = buchberger(ideal_of({"x + y", "x - y"}, 2));
    EXPECT_EQ(G.elements, (std::vector<LoopPoly>{ax(1), ax(2)}));
}

TEST(Buchberger, NonTrivialCompletion)
{
    // Jacobian of x^3 + x*y^2: (3x^2 + y^2, 2xy) needs a new element y^3
    const InputFunction f = parse_function("x^3 + x*y^2");
    const auto G = buchberger(jacobian_ideal(f));
    EXPECT_TRUE(is_groebner_basis(G.elements));
    bool has_y_cubed = false;
    for (const auto& g : G.elements) {
        has_y_cubed = has_y_cubed || g.leading_monomial() == Monomial::var(ambient(2), 3);
    }
    EXPECT_TRUE(has_y_cubed);
}

TEST(Buchberger, IdempotentAndReduced)
{
    for (const auto& src : isolated_corpus()) {
        const InputFunction f = parse_function(src);
        const auto G = buchberger(jacobian_ideal(f));
        Ideal again{G.elements, G.variables};
        EXPECT_EQ(buchberger(again), G) << src;
        for (std::size_t i = 0; i < G.elements.size(); ++i) {
            EXPECT_EQ(G.elements[i].leading_coefficient(), 1);
            for (std::size_t j = 0; j < G.elements.size(); ++j) {
                if (i == j) {
                    continue;
                }
                for (const auto& [m, c] : G.elements[i].terms()) {
                    EXPECT_FALSE(G.elements[j].leading_monomial().divides(m)) << src;
                }
            }
        }
    }
}

TEST(NormalForm, ReductionIsIdempotent)
{
    std::mt19937 rng(17);
    const auto G = buchberger(jacobian_ideal(parse_function("x^3 + x*y^2")));
    for (int i = 0; i < 50; ++i) {
        LoopPoly p;
        std::uniform_int_distribution<int> e(0, 4);
        std::uniform_int_distribution<int> co(-3, 3);
        for (int t = 0; t < 5; ++t) {
            p.add_term(Monomial::from_factors({{ambient(1), static_cast<std::uint32_t>(e(rng))},
                                                {ambient(2), static_cast<std::uint32_t>(e(rng))}}),
                       co(rng));
        }
        const LoopPoly once = normal_form(p, G.elements);
        EXPECT_EQ(normal_form(once, G.elements), once);
    }
}

TEST(StandardMonomials, Examples)
{
    const auto one = standard_monomials(buchberger(ideal_of({"x"}, 1)), 100);
    ASSERT_TRUE(std::holds_alternative<std::vector<Monomial>>(one));
    EXPECT_EQ(std::get<std::vector<Monomial>>(one), (std::vector<Monomial>{Monomial{}}));

    const auto four = standard_monomials(buchberger(ideal_of({"x^2", "y^2"}, 2)), 100);
    ASSERT_TRUE(std::holds_alternative<std::vector<Monomial>>(four));
    const Monomial x = Monomial::var(ambient(1));
    const Monomial y = Monomial::var(ambient(2));
    EXPECT_EQ(std::get<std::vector<Monomial>>(four), (std::vector<Monomial>{Monomial{}, y, x, x * y}));

    const auto inf = standard_monomials(buchberger(ideal_of({"x"}, 2)), 100);
    ASSERT_TRUE(std::holds_alternative<Infinite>(inf));
    EXPECT_EQ(std::get<Infinite>(inf).free_variables, (std::vector<LoopVar>{ambient(2)}));

    EXPECT_THROW(standard_monomials(buchberger(ideal_of({"x^3", "y^3"}, 2)), 5), CapExceeded);
}

TEST(MilnorNumber, Examples)
{
    EXPECT_EQ(milnor_number(parse_function("z^2")), 1U);
    EXPECT_EQ(milnor_number(parse_function("x^3 + y^3")), 4U);
    EXPECT_THROW(milnor_number(parse_function("x^2*y")), NotIsolated);
}

TEST(MilnorNumberOracle, Examples)
{
    EXPECT_EQ(milnor_number_oracle(parse_function("z^2")), 1U);
    EXPECT_EQ(milnor_number_oracle(parse_function("x^3 + y^3")), 4U);
    EXPECT_EQ(milnor_number_oracle(parse_function("x^2 + y^2 + w^2")), 1U);
    EXPECT_THROW(milnor_number_oracle(parse_function("x^2*y")), NotIsolated);
    EXPECT_THROW(milnor_number_oracle(parse_function("a^2 + b^2 + c^2 + e^2")), std::invalid_argument);
}

TEST(MilnorNumber, FermatGrid)
{
    const std::vector<std::string> names{"x", "y", "w"};
    for (int d = 1; d <= 3; ++d) {
        for (int delta = 2; delta <= 5; ++delta) {
            std::string src;
            for (int i = 0; i < d; ++i) {
                src += (i ? " + " : "") + names[static_cast<std::size_t>(i)] + "^" + std::to_string(delta);
            }
            const InputFunction f = parse_function(src);
            std::uint64_t expected = 1;
            for (int i = 0; i < d; ++i) {
                expected *= static_cast<std::uint64_t>(delta - 1);
            }
            EXPECT_EQ(milnor_number(f), expected) << src;
            EXPECT_EQ(milnor_number_oracle(f), expected) << src;
        }
    }
}

TEST(MilnorNumber, BothRoutesAgreeOnCorpus)
{
    for (const auto& src : isolated_corpus()) {
        const InputFunction f = parse_function(src);
        EXPECT_EQ(milnor_number(f), milnor_number_oracle(f)) << src;
    }
}

TEST(MilnorNumber, NonIsolatedCorpusRejectedByBothRoutes)
{
    for (const auto& src : non_isolated_corpus()) {
        const InputFunction f = parse_function(src);
        EXPECT_THROW(milnor_number(f), NotIsolated) << src;
        EXPECT_THROW(milnor_number_oracle(f), NotIsolated) << src;
    }
}
