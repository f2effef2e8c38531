#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "mvh/hyperfam.hpp"
#include "oracles.hpp"

using mvh::ExactParams;
using mvh::MultiIndex;
using mvh::Rational;

namespace {

const std::vector<Rational> kPool{Rational(1, 2), Rational(-1, 2), Rational(1, 3), Rational(-1, 3),
                                  Rational(1),    Rational(3, 2),  Rational(2),    Rational(5, 2)};

struct Draw {
    std::mt19937_64 rng;
    explicit Draw(std::uint64_t seed) : rng(seed) {}
    Rational value() { return kPool[rng() % kPool.size()]; }
    std::vector<Rational> values(std::size_t n)
    {
        std::vector<Rational> v;
        for (std::size_t i = 0; i < n; ++i) {
            v.push_back(value());
        }
        return v;
    }
    ExactParams params(std::uint32_t rho, std::size_t k, std::size_t r)
    {
        return mvh::make_params(value(), values(r - k), values(r), rho, k);
    }
};

std::vector<mpq_class> raw(const std::vector<Rational>& v)
{
    std::vector<mpq_class> out;
    for (const auto& q : v) {
        out.push_back(q.raw());
    }
    return out;
}

} // namespace

TEST(ETerm, SpecExamples)
{
    const auto p = mvh::make_params(Rational(2), {Rational(3)}, {Rational(1), Rational(1)}, 1, 1);
    EXPECT_EQ(mvh::e_term_coefficient(p, MultiIndex{0, 0}), Rational(1));
    EXPECT_EQ(mvh::e_term_coefficient(p, MultiIndex{1, 1}), Rational(18));
    const auto q = mvh::make_params(Rational(-2), {}, {Rational(1, 2)}, 2, 1);
    EXPECT_EQ(mvh::e_term_coefficient(q, MultiIndex{2}), Rational(0));
}

TEST(ETerm, MatchesDefinitionOracle)
{
    Draw draw(11);
    for (std::uint32_t rho = 0; rho <= 3; ++rho) {
        for (std::size_t r = 1; r <= 3; ++r) {
            for (std::size_t k = 0; k <= r; ++k) {
                const auto p = draw.params(rho, k, r);
                for (const auto& m : mvh::enumerate_multi_indices(r, 5)) {
                    mpq_class expected;
                    ASSERT_TRUE(oracle::weighted_term(p.alpha.raw(), raw(p.beta), raw(p.gamma), rho, k, m.entries(),
                                                      expected));
                    EXPECT_EQ(mvh::e_term_coefficient(p, m).raw(), expected);
                }
            }
        }
    }
}

TEST(ETerm, DenominatorPoleDetection)
{
    ExactParams p{Rational(1, 2), {}, {Rational(-1)}, mvh::WeightSpec{1, 1, 1}};
    EXPECT_EQ(mvh::e_term_coefficient(p, MultiIndex{1}), Rational(-1, 2));
    EXPECT_THROW(mvh::e_term_coefficient(p, MultiIndex{2}), mvh::DenominatorPole);
    EXPECT_THROW(mvh::make_params(Rational(1, 2), {}, {Rational(-1)}, 1, 1), mvh::DenominatorPole);
    // alpha = -1 stops the series before gamma_1 = -1 reaches its pole at m_1 = 2.
    const auto rescued = mvh::make_params(Rational(-1), {}, {Rational(-1)}, 1, 1);
    EXPECT_EQ(mvh::e_term_coefficient(rescued, MultiIndex{2}), Rational(0));
    // beta = -1 against gamma = -2 vanishes first as well.
    EXPECT_NO_THROW(mvh::make_params(Rational(1, 2), {Rational(-1)}, {Rational(-2)}, 1, 0));
}

TEST(ETerm, ShapeErrors)
{
    ExactParams p{Rational(1), {Rational(1)}, {Rational(1)}, mvh::WeightSpec{1, 0, 2}};
    EXPECT_THROW(mvh::e_term_coefficient(p, MultiIndex{0, 0}), mvh::DimensionMismatch);
    const auto ok = mvh::make_params(Rational(1), {Rational(1)}, {Rational(1), Rational(2)}, 2, 1);
    EXPECT_THROW(mvh::e_term_coefficient(ok, MultiIndex{1}), mvh::DimensionMismatch);
}

TEST(Reductions, ClassicalTermsAgreeOverRandomDraws)
{
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Draw draw(seed);
        const std::size_t r = 1 + seed % 3;
        const std::size_t k = seed % (r + 1);
        const auto horn = draw.params(2, k, r);
        const auto fa = draw.params(static_cast<std::uint32_t>(seed % 4), 0, r);
        const auto f2 = draw.params(1, 0, 2);
        const auto h4 = draw.params(2, 1, 2);
        for (const auto& m : mvh::enumerate_multi_indices(r, 6)) {
            EXPECT_EQ(mvh::e_term_coefficient(horn, m),
                      mvh::classical::kh4r_coefficient(horn.alpha, horn.beta, horn.gamma, k, m));
            EXPECT_EQ(mvh::e_term_coefficient(fa, m), mvh::classical::fa_coefficient(fa.alpha, fa.beta, fa.gamma, m));
        }
        for (const auto& m : mvh::enumerate_multi_indices(2, 6)) {
            EXPECT_EQ(mvh::e_term_coefficient(f2, m),
                      mvh::classical::f2_coefficient(f2.alpha, f2.beta[0], f2.beta[1], f2.gamma[0], f2.gamma[1], m[0],
                                                     m[1]));
            EXPECT_EQ(mvh::e_term_coefficient(h4, m),
                      mvh::classical::h4_coefficient(h4.alpha, h4.beta[0], h4.gamma[0], h4.gamma[1], m[0], m[1]));
        }
    }
}

TEST(Reductions, SpecExamples)
{
    // H4 term at m = (1,0), alpha = 1, gamma_1 = 2.
    EXPECT_EQ(mvh::classical::h4_coefficient(Rational(1), Rational(1), Rational(2), Rational(1), 1, 0), Rational(1));
    const auto p = mvh::make_params(Rational(1), {Rational(1)}, {Rational(2), Rational(1)}, 2, 1);
    EXPECT_EQ(mvh::e_term_coefficient(p, MultiIndex{1, 0}), Rational(1));
    const std::vector<Rational> ones{Rational(1), Rational(1)};
    EXPECT_EQ(mvh::classical::fa_coefficient(Rational(1), ones, ones, MultiIndex{1, 1}), Rational(2));
}

TEST(Termination, WeightBound)
{
    auto bound = [](Rational alpha) {
        return mvh::terminating_weight_bound(ExactParams{alpha, {}, {Rational(1)}, mvh::WeightSpec{1, 1, 1}});
    };
    EXPECT_EQ(bound(Rational(-3)), 3U);
    EXPECT_FALSE(bound(Rational(1, 2)).has_value());
    EXPECT_EQ(bound(Rational(0)), 0U);
    EXPECT_FALSE(bound(Rational(2)).has_value());
}

TEST(Termination, TermsBeyondTheBoundVanish)
{
    Draw draw(3);
    for (unsigned n = 0; n <= 5; ++n) {
        for (std::uint32_t rho = 0; rho <= 3; ++rho) {
            for (std::size_t r = 1; r <= 3; ++r) {
                for (std::size_t k = 0; k <= r; ++k) {
                    auto p = draw.params(rho, k, r);
                    p.alpha = -Rational(n);
                    for (const auto& m : mvh::enumerate_multi_indices(r, n + 4)) {
                        if (mvh::weight(p.weight, m) > n) {
                            EXPECT_TRUE(mvh::e_term_coefficient(p, m).is_zero());
                        }
                    }
                }
            }
        }
    }
}

TEST(EvalE, ValueOneAtOrigin)
{
    Draw draw(4);
    for (std::size_t r = 1; r <= 3; ++r) {
        const auto p = draw.params(2, 1 % (r + 1), r);
        const auto res = mvh::eval_E(p, mvh::EvalPoint<double>{std::vector<double>(r, 0.0)}, mvh::Truncation{});
        EXPECT_EQ(res.value, 1.0);
        EXPECT_TRUE(res.in_region);
    }
}

TEST(EvalE, TerminatingLinearPolynomial)
{
    const double b = 1.5;
    const double c = 2.5;
    for (double x : {0.3, -0.7, 3.0}) {
        const mvh::RealParams p{-1.0, {b}, {c}, mvh::RealWeightSpec{1.0, 0, 1}};
        const auto res = mvh::eval_E(p, mvh::EvalPoint<double>{{x}}, mvh::Truncation{});
        EXPECT_DOUBLE_EQ(res.value, 1.0 - b / c * x);
        EXPECT_TRUE(res.terminated);
        EXPECT_EQ(res.tail_estimate, 0.0);
        EXPECT_EQ(res.terms_summed, 2U);
    }
}

TEST(EvalE, RegionExamplesAndStrictMode)
{
    const mvh::RealWeightSpec w{2.0, 1, 2};
    EXPECT_TRUE(mvh::in_region(w, std::vector<double>{0.04, 0.5}));
    EXPECT_FALSE(mvh::in_region(w, std::vector<double>{0.25, 0.2}));
    EXPECT_NEAR(mvh::region_measure(w, std::vector<double>{0.25, 0.2}), 1.2, 1e-15);
    const mvh::RealParams p{1.0, {1.0}, {1.0, 1.0}, w};
    const mvh::EvalPoint<double> outside{{0.25, 0.2}};
    EXPECT_THROW(mvh::eval_E(p, outside, mvh::Truncation{}, true), mvh::OutOfRegion);
    const auto lax = mvh::eval_E(p, outside, mvh::Truncation{10, 1e-16, 1000});
    EXPECT_FALSE(lax.in_region);
    // A terminating series is fine anywhere.
    mvh::RealParams poly = p;
    poly.alpha = -2;
    EXPECT_NO_THROW(mvh::eval_E(poly, outside, mvh::Truncation{}, true));
}

TEST(EvalE, AgreesWithBruteForceSum)
{
    const mvh::RealParams p{0.5, {1.5}, {2.0, 1.0 / 3.0}, mvh::RealWeightSpec{2.0, 1, 2}};
    const std::vector<double> x{0.01, 0.2};
    const double ref = oracle::weighted_sum_real(0.5, {1.5}, {2.0, 1.0 / 3.0}, 2, 1, x, 60);
    const auto res = mvh::eval_E(p, mvh::EvalPoint<double>{x}, mvh::Truncation{80, 0.0, 10'000'000});
    EXPECT_NEAR(res.value, ref, 1e-13 * std::abs(ref));
}

TEST(EvalE, NonIntegerRhoUsesRealPochhammer)
{
    const mvh::RealParams p{0.75, {}, {1.5}, mvh::RealWeightSpec{0.5, 1, 1}};
    const double x = 0.3;
    long double ref = 0;
    for (unsigned m = 0; m < 200; ++m) {
        ref += oracle::gamma_ratio(0.75, 0.5 * m) / oracle::gamma_ratio(1.5, m) / std::tgamma(m + 1.0) * std::pow(x, m);
    }
    const auto res = mvh::eval_E(p, mvh::EvalPoint<double>{{x}}, mvh::Truncation{200, 0.0, 1'000'000});
    EXPECT_NEAR(res.value, static_cast<double>(ref), 1e-12);
}

TEST(EvalE, MonotoneRefinementAndTailBound)
{
    const mvh::RealParams p{0.5, {1.5, 1.0}, {2.0, 1.5, 2.5}, mvh::RealWeightSpec{2.0, 1, 3}};
    const mvh::EvalPoint<double> x{{0.01, 0.2, 0.3}};
    const double deep = mvh::eval_E(p, x, mvh::Truncation{120, 0.0, 50'000'000}).value;
    double previous = 0;
    for (unsigned d = 0; d <= 30; ++d) {
        const auto res = mvh::eval_E(p, x, mvh::Truncation{d, 0.0, 50'000'000});
        EXPECT_GE(res.value, previous);
        previous = res.value;
        if (d >= 8) {
            EXPECT_GE(res.tail_estimate, deep - res.value) << "degree " << d;
        }
    }
}

TEST(EvalE, TermCapStopsEarly)
{
    const mvh::RealParams p{1.0, {1.0, 1.0}, {1.0, 1.0}, mvh::RealWeightSpec{1.0, 0, 2}};
    const auto res = mvh::eval_E(p, mvh::EvalPoint<double>{{0.1, 0.1}}, mvh::Truncation{40, 0.0, 7});
    EXPECT_EQ(res.terms_summed, 7U);
    EXPECT_THROW(mvh::Truncation({1, 1e-16, 0}).validate(), mvh::InvalidArgument);
}

TEST(EvalE, FloatAgreesWithExactPartialSums)
{
    std::mt19937_64 rng(17);
    int checked = 0;
    for (int trial = 0; checked < 50 && trial < 1000; ++trial) {
        Draw draw(rng());
        const std::size_t r = 1 + rng() % 3;
        const std::size_t k = rng() % (r + 1);
        const std::uint32_t rho = static_cast<std::uint32_t>(rng() % 4);
        auto p = draw.params(rho, k, r);
        std::vector<Rational> xq;
        std::vector<double> xd;
        for (std::size_t i = 0; i < r; ++i) {
            xq.emplace_back(static_cast<long>(rng() % 21) - 10, 100);
            xd.push_back(xq.back().to_double());
        }
        if (mvh::region_measure(mvh::to_real(p).weight, xd) > 0.8) {
            continue;
        }
        const unsigned D = 12;
        const Rational exact = mvh::partial_sum_exact(p, xq, D);
        const auto res = mvh::eval_E(p, mvh::EvalPoint<double>{xd}, mvh::Truncation{D, 0.0, 10'000'000});
        EXPECT_NEAR(res.value, exact.to_double(), 1e-10 * std::max(1.0, std::abs(exact.to_double())));
        ++checked;
    }
    EXPECT_EQ(checked, 50);
}

TEST(PFQ, SpecExamples)
{
    const mvh::Truncation trunc;
    EXPECT_NEAR(mvh::eval_0F0(1.0, trunc).value, std::numbers::e, 1e-15);
    EXPECT_NEAR(mvh::eval_1F0(1.0, 0.5, trunc).value, 2.0, 1e-15);
    EXPECT_EQ(mvh::eval_0F1(1.0, 0.0, trunc).value, 1.0);
}

TEST(PFQ, ClosedForms)
{
    const mvh::Truncation trunc;
    EXPECT_NEAR(mvh::eval_1F0(2.5, -0.4, trunc).value, std::pow(1.4, -2.5), 1e-14);
    EXPECT_NEAR(mvh::eval_0F1(0.5, -std::pow(0.7, 2) / 4, trunc).value, std::cos(0.7), 1e-14);
    EXPECT_NEAR(mvh::eval_Phi(1.0, 1.0, 0.3, trunc).value, std::exp(0.3), 1e-14);
    EXPECT_NEAR(mvh::eval_2F1(1.0, 1.0, 2.0, 0.5, trunc).value, -std::log(0.5) / 0.5, 1e-13);
    const auto poly = mvh::eval_2F1(-2.0, 1.0, 1.0, 3.0, trunc);
    EXPECT_TRUE(poly.terminated);
    EXPECT_DOUBLE_EQ(poly.value, 4.0);
}

TEST(PFQ, PolesAndStrictRegion)
{
    const mvh::Truncation trunc;
    EXPECT_THROW(mvh::eval_Phi(1.0, -1.0, 0.5, trunc), mvh::DenominatorPole);
    EXPECT_NO_THROW(mvh::eval_Phi(-1.0, -1.0, 0.5, trunc));
    EXPECT_THROW(mvh::eval_1F0(1.0, 1.5, trunc, true), mvh::OutOfRegion);
    const std::vector<Rational> a{Rational(1, 2)};
    const std::vector<Rational> b{Rational(3, 2)};
    EXPECT_EQ(mvh::pfq_coefficient(a, b, 2), Rational(1, 2) * Rational(3, 2) / (Rational(3, 2) * Rational(5, 2) * 2));
}

TEST(Classical, EvaluatorsReduceToE)
{
    const mvh::Truncation trunc;
    EXPECT_EQ(mvh::eval_F2(1.0, {1.0, 2.0}, {3.0, 4.0}, {0.0, 0.0}, trunc).value, 1.0);
    const double f2 = mvh::eval_F2(0.5, {1.5, 2.0}, {2.5, 3.0}, {0.1, 0.2}, trunc).value;
    EXPECT_NEAR(f2, oracle::weighted_sum_real(0.5, {1.5, 2.0}, {2.5, 3.0}, 1, 0, {0.1, 0.2}, 60), 1e-13);
    const double h4 = mvh::eval_H4(0.5, 1.5, {2.0, 3.0}, {0.02, 0.3}, trunc).value;
    EXPECT_NEAR(h4, oracle::weighted_sum_real(0.5, {1.5}, {2.0, 3.0}, 2, 1, {0.02, 0.3}, 60), 1e-13);
    const double fa = mvh::eval_FA(1.0, {1.0, 0.5, 2.0}, {1.5, 2.0, 3.0}, {0.1, 0.1, 0.2}, trunc).value;
    EXPECT_NEAR(fa, oracle::weighted_sum_real(1.0, {1.0, 0.5, 2.0}, {1.5, 2.0, 3.0}, 1, 0, {0.1, 0.1, 0.2}, 50), 1e-12);
    const double kh = mvh::eval_kH4r(0.5, {1.0}, {2.0, 1.5, 3.0}, 2, {0.01, 0.02, 0.2}, trunc).value;
    EXPECT_NEAR(kh, oracle::weighted_sum_real(0.5, {1.0}, {2.0, 1.5, 3.0}, 2, 2, {0.01, 0.02, 0.2}, 50), 1e-12);
}
