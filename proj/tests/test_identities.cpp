#include <vector>

#include <gtest/gtest.h>

#include "mvh/identities.hpp"
#include "oracles.hpp"

using mvh::MultiIndex;
using mvh::Rational;
using namespace mvh::identities;

namespace {

IdentitySpec make_spec(IdentityId id, mvh::ExactParams params, Rational lambda, unsigned N, unsigned D)
{
    IdentitySpec s;
    s.id = id;
    s.params = std::move(params);
    s.lambda = lambda;
    s.orders = Orders{N, D, 4, 3};
    return s;
}

mvh::ExactParams t1_params()
{
    return mvh::make_params(Rational(1, 3), {Rational(3, 2)}, {Rational(5, 2), Rational(-1, 3)}, 2, 1);
}

Rational coeff(const mvh::fps::FormalSeries& s, unsigned n, const MultiIndex& m)
{
    return mvh::fps::fs_coefficient(s, n, m);
}

} // namespace

TEST(Catalog, NamesRoundTrip)
{
    for (IdentityId id : kAllIdentities) {
        EXPECT_EQ(parse_identity_id(to_string(id)), id);
    }
    EXPECT_THROW(parse_identity_id("T10"), mvh::InvalidArgument);
    EXPECT_TRUE(is_bilateral(IdentityId::R14));
    EXPECT_FALSE(is_bilateral(IdentityId::D3));
    EXPECT_TRUE(is_reduction(IdentityId::REDUCE_H4));
}

TEST(SeriesExamples, T1LowOrderCoefficients)
{
    const auto spec = make_spec(IdentityId::T1, t1_params(), Rational(1, 2), 6, 6);
    const auto lhs = lhs_series(spec);
    const auto rhs = rhs_series(spec);
    EXPECT_EQ(coeff(lhs, 1, MultiIndex{0, 0}), Rational(1, 2));
    EXPECT_EQ(coeff(rhs, 1, MultiIndex{0, 0}), Rational(1, 2));
    auto with_lambda = spec.params;
    with_lambda.alpha = spec.lambda;
    for (const auto& m : mvh::enumerate_multi_indices(2, 6)) {
        EXPECT_EQ(coeff(lhs, 0, m), mvh::e_term_coefficient(with_lambda, m)) << m;
    }
}

TEST(SeriesExamples, T3LinearTermIsOne)
{
    const auto spec = make_spec(IdentityId::T3, t1_params(), Rational(1, 2), 6, 6);
    EXPECT_EQ(coeff(lhs_series(spec), 1, MultiIndex{0, 0}), Rational(1));
    EXPECT_EQ(coeff(rhs_series(spec), 1, MultiIndex{0, 0}), Rational(1));
    for (unsigned n = 0; n <= 6; ++n) {
        EXPECT_EQ(coeff(lhs_series(spec), n, MultiIndex{0, 0}), Rational(1) / mvh::factorial(n));
    }
}

TEST(SeriesExamples, T4FirstVariableCarriesOneMinusT)
{
    const Rational lambda(1, 3);
    const auto spec = make_spec(IdentityId::T4, t1_params(), lambda, 6, 6);
    const auto rhs = rhs_series(spec);
    auto shifted = spec.params;
    shifted.gamma[0] = Rational(1) - lambda;
    const Rational c1 = mvh::e_term_coefficient(shifted, MultiIndex{1, 0});
    EXPECT_EQ(coeff(rhs, 0, MultiIndex{1, 0}), c1);
    EXPECT_EQ(coeff(rhs, 1, MultiIndex{1, 0}), c1 * (lambda - Rational(1)));
    EXPECT_EQ(coeff(lhs_series(spec), 1, MultiIndex{1, 0}), c1 * (lambda - Rational(1)));
}

TEST(SeriesExamples, D3SingleVariableAgainstDirectSum)
{
    const Rational gamma(3, 2);
    const auto spec = make_spec(IdentityId::D3, mvh::make_params(Rational(1), {}, {gamma}, 2, 1), Rational(1), 6, 6);
    const auto lhs = lhs_series(spec);
    const auto rhs = rhs_series(spec);
    for (unsigned n = 0; n <= 6; ++n) {
        // (-n)_2 / (gamma)_1 on the left; 2/gamma times C(n, 2) from x t^2 (1-t)^-3 on the right.
        const Rational expected = Rational(n) * Rational(static_cast<long>(n) - 1) / gamma;
        mpq_class direct;
        ASSERT_TRUE(oracle::weighted_term(-mpq_class(n), {}, {gamma.raw()}, 2, 1, {1}, direct));
        EXPECT_EQ(Rational(direct), expected);
        EXPECT_EQ(coeff(lhs, n, MultiIndex{1}), expected) << n;
        EXPECT_EQ(coeff(rhs, n, MultiIndex{1}), expected) << n;
    }
    EXPECT_TRUE(verify(spec).pass);
}

TEST(Verify, T1SpecExample)
{
    const auto rep = verify(make_spec(IdentityId::T1, t1_params(), Rational(1, 2), 6, 6));
    EXPECT_TRUE(rep.pass);
    EXPECT_EQ(rep.max_discrepancy, Rational(0));
    EXPECT_EQ(rep.checked_monomials, 7U * oracle::stars_and_bars(2, 6));
    EXPECT_EQ(rep.mismatch_count, 0U);
    EXPECT_TRUE(rep.first_failure().empty());
}

TEST(Verify, ReduceK0R2ToDegreeSix)
{
    auto spec = make_spec(IdentityId::REDUCE_K0R2,
                          mvh::make_params(Rational(5, 2), {Rational(1, 2), Rational(-1, 3)},
                                           {Rational(3, 2), Rational(1, 3)}, 2, 0),
                          Rational(1, 2), 0, 6);
    const auto rep = verify(spec);
    EXPECT_TRUE(rep.pass);
    EXPECT_EQ(rep.checked_monomials, oracle::stars_and_bars(2, 6));
}

TEST(Verify, T5IsT4WithShiftedLambda)
{
    const auto params = mvh::make_params(Rational(1, 2), {Rational(2)}, {Rational(1), Rational(5, 2)}, 1, 1);
    auto t5 = make_spec(IdentityId::T5, params, Rational(3, 2), 6, 6);
    t5.m = 2;
    const auto t4 = make_spec(IdentityId::T4, params, Rational(7, 2), 6, 6);
    const auto r5 = verify(t5);
    const auto r4 = verify(t4);
    EXPECT_TRUE(r5.pass);
    EXPECT_TRUE(r5.same_outcome(r4));
    EXPECT_EQ(lhs_series(t5), lhs_series(t4));
    EXPECT_EQ(rhs_series(t5), rhs_series(t4));
}

TEST(Verify, NamedSpecialisationsMatchTheGeneralRelation)
{
    struct Case {
        IdentityId special;
        IdentityId general;
        Shape shape;
    };
    const std::vector<Case> cases{
        {IdentityId::C1, IdentityId::T1, {2, 1, 3}},
        {IdentityId::R1, IdentityId::C1, {2, 1, 2}},
        {IdentityId::R2, IdentityId::C1, {2, 0, 3}},
        {IdentityId::R3, IdentityId::C1, {2, 0, 2}},
    };
    for (const auto& c : cases) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            auto special = draw_spec(c.special, c.shape, Orders{5, 5, 4, 3}, seed);
            auto general = special;
            general.id = c.general;
            const auto rs = verify(special);
            EXPECT_TRUE(rs.pass) << rs.label;
            EXPECT_TRUE(rs.same_outcome(verify(general))) << rs.label;
            EXPECT_EQ(lhs_series(special), lhs_series(general)) << rs.label;
            EXPECT_EQ(rhs_series(special), rhs_series(general)) << rs.label;
        }
    }
}

TEST(Verify, ClassicalFamiliesUnderT2ToT5)
{
    struct Case {
        TermFamily family;
        Shape shape;
    };
    const std::vector<Case> cases{
        {TermFamily::multi_horn, {2, 2, 3}},
        {TermFamily::horn_h4, {2, 1, 2}},
        {TermFamily::lauricella_fa, {2, 0, 3}},
        {TermFamily::appell_f2, {2, 0, 2}},
    };
    for (IdentityId id : {IdentityId::T2, IdentityId::T3, IdentityId::T4, IdentityId::T5}) {
        for (const auto& c : cases) {
            auto e_spec = draw_spec(id, c.shape, Orders{5, 5, 4, 3}, 40 + static_cast<int>(c.family));
            auto classical = e_spec;
            classical.family = c.family;
            const auto rep = verify(classical);
            EXPECT_TRUE(rep.pass) << rep.label;
            EXPECT_EQ(lhs_series(classical), lhs_series(e_spec)) << rep.label;
        }
    }
    auto bad = draw_spec(IdentityId::T2, Shape{3, 1, 2}, Orders{4, 4, 4, 3}, 1);
    bad.family = TermFamily::horn_h4;
    EXPECT_THROW(verify(bad), mvh::InvalidArgument);
}

TEST(Verify, SmallGridOfUnilateralRelations)
{
    std::uint64_t seed = 500;
    for (IdentityId id : {IdentityId::T1, IdentityId::T2, IdentityId::T3, IdentityId::T4, IdentityId::T5}) {
        for (std::uint32_t rho = 0; rho <= 3; ++rho) {
            for (std::size_t r = 1; r <= 3; ++r) {
                for (std::size_t k = 0; k <= std::min<std::size_t>(2, r); ++k) {
                    const auto spec = draw_spec(id, Shape{rho, k, r}, Orders{4, 4, 4, 3}, seed++);
                    const auto rep = verify(spec);
                    EXPECT_TRUE(rep.pass) << rep.label << " at " << rep.first_failure();
                }
            }
        }
    }
}

TEST(Verify, WholeCatalogPasses)
{
    for (std::uint64_t seed : {1U, 77U}) {
        for (const auto& spec : catalog(4, 4, seed)) {
            const auto rep = verify(spec);
            EXPECT_TRUE(rep.pass) << rep.label << " at " << rep.first_failure();
        }
    }
}

TEST(Verify, InvalidSpecsAreRejected)
{
    auto t4 = make_spec(IdentityId::T4, t1_params(), Rational(2), 4, 4);
    EXPECT_THROW(verify(t4), mvh::InvalidArgument);
    auto zero_order = make_spec(IdentityId::T1, t1_params(), Rational(1, 2), 0, 4);
    EXPECT_THROW(verify(zero_order), mvh::InvalidArgument);
    EXPECT_THROW(mvh::make_params(Rational(1), {Rational(1)}, {Rational(1), Rational(-2)}, 2, 1), mvh::DenominatorPole);
    EXPECT_THROW(verify_bilateral(make_spec(IdentityId::T1, t1_params(), Rational(1, 2), 3, 3)), mvh::InvalidArgument);
}

TEST(Mutation, T1FailsAtLowOrderForEveryRhsPochhammer)
{
    const auto spec = make_spec(IdentityId::T1, t1_params(), Rational(1, 2), 3, 3);
    ASSERT_TRUE(verify(spec).pass);
    using T = Perturbation::Target;
    for (const Perturbation p : {Perturbation{T::lambda, 0}, Perturbation{T::beta, 0}, Perturbation{T::gamma, 0},
                                 Perturbation{T::gamma, 1}}) {
        const auto rep = verify(spec, p);
        EXPECT_FALSE(rep.pass) << to_string(p);
        EXPECT_GT(rep.mismatch_count, 0U);
        EXPECT_FALSE(rep.first_failure().empty());
        EXPECT_NE(rep.label.find("mutate=" + to_string(p)), std::string::npos);
    }
    EXPECT_THROW(verify(spec, Perturbation{T::gamma, 5}), mvh::InvalidArgument);
}

TEST(Mutation, EveryIdentityDetectsALastGammaShift)
{
    for (const auto& spec : catalog(4, 4, 3)) {
        const auto rep = verify(spec, Perturbation{Perturbation::Target::gamma, spec.params.r() - 1});
        EXPECT_FALSE(rep.pass) << rep.label;
    }
}

TEST(Mutation, FirstFailureNamesTheLowestMonomial)
{
    const auto spec = make_spec(IdentityId::T1, t1_params(), Rational(1, 2), 3, 3);
    const auto rep = verify(spec, Perturbation{Perturbation::Target::gamma, 0});
    ASSERT_FALSE(rep.pass);
    EXPECT_EQ(rep.first_failure(), "t^0 x^(1,0)");
    EXPECT_EQ(rep.mismatches.front().lhs, coeff(lhs_series(spec), 0, MultiIndex{1, 0}));
}

TEST(FloatCheck, SingleSeriesRelationsAgreeAtAPoint)
{
    for (IdentityId id : {IdentityId::T1, IdentityId::T2, IdentityId::T3, IdentityId::T4, IdentityId::T5,
                          IdentityId::C1, IdentityId::R1, IdentityId::R2, IdentityId::R3, IdentityId::D3}) {
        const auto spec = draw_spec(id, Shape{2, 1, 2}, default_orders(id), 9);
        const std::vector<double> x{0.03, -0.05};
        const auto rep = verify_float(spec, x, 0.15);
        EXPECT_TRUE(rep.pass) << rep.label << " " << rep.max_discrepancy_real;
        EXPECT_EQ(rep.mode, Mode::floating);
    }
    const auto t6 = draw_spec(IdentityId::T6, Shape{}, default_orders(IdentityId::T6), 1);
    EXPECT_THROW(verify_float(t6, std::vector<double>{0.1, 0.1}, 0.1), mvh::InvalidArgument);
}

TEST(Draws, DeterministicAndPinned)
{
    const auto a = draw_spec(IdentityId::T9, Shape{3, 1, 3}, default_orders(IdentityId::T9), 12);
    const auto b = draw_spec(IdentityId::T9, Shape{3, 1, 3}, default_orders(IdentityId::T9), 12);
    EXPECT_EQ(a, b);
    EXPECT_FALSE(a.lambda.is_integer());
    const auto r1 = draw_spec(IdentityId::R1, Shape{0, 0, 3}, default_orders(IdentityId::R1), 1);
    EXPECT_EQ(r1.params.weight.rho, 2U);
    EXPECT_EQ(r1.params.k(), 1U);
    EXPECT_EQ(r1.params.r(), 2U);
    for (int seed = 0; seed < 50; ++seed) {
        const auto s = draw_spec(IdentityId::T1, Shape{1, 1, 3}, default_orders(IdentityId::T1), seed);
        for (const auto& g : s.params.gamma) {
            EXPECT_FALSE(g.is_nonpositive_integer());
        }
    }
    EXPECT_THROW(draw_spec(IdentityId::T1, Shape{1, 3, 2}, Orders{}, 0), mvh::InvalidArgument);
}
