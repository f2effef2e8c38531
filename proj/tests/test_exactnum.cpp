#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "mvh/exactnum.hpp"
#include "oracles.hpp"

using mvh::MultiIndex;
using mvh::Rational;

TEST(Rational, ArithmeticIsExactAndCanonical)
{
    const Rational a(1, 3);
    const Rational b(1, 6);
    EXPECT_EQ(a + b, Rational(1, 2));
    EXPECT_EQ(a - b, Rational(1, 6));
    EXPECT_EQ(a * b, Rational(1, 18));
    EXPECT_EQ(a / b, Rational(2));
    EXPECT_EQ(Rational(2, 4).str(), "1/2");
    EXPECT_EQ(Rational(-6, -3).str(), "2/1");
    EXPECT_EQ(Rational(3, -9).str(), "-1/3");
    EXPECT_LT(Rational(-1, 2), Rational(1, 3));
    EXPECT_EQ(abs(Rational(-5, 7)), Rational(5, 7));
}

TEST(Rational, DivisionByZeroThrows)
{
    EXPECT_THROW(Rational(1) / Rational(0), mvh::DivisionByZero);
    EXPECT_THROW(Rational(1, 0), mvh::DivisionByZero);
}

TEST(Rational, ParsesExactLiteralsOnly)
{
    EXPECT_EQ(Rational::parse("3"), Rational(3));
    EXPECT_EQ(Rational::parse("-1/2"), Rational(-1, 2));
    EXPECT_EQ(Rational::parse("+4/6"), Rational(2, 3));
    EXPECT_EQ(Rational::parse("123456789012345678901234567890/3").str(), "41152263004115226300411522630/1");
    for (const char* bad : {"", "0.5", "1e3", "1/", "/2", "1/-2", "a", "1/0", "--1"}) {
        EXPECT_THROW(Rational::parse(bad), mvh::InvalidArgument) << bad;
    }
}

TEST(Rational, StreamsCanonicalText)
{
    std::ostringstream os;
    os << Rational(10, 4);
    EXPECT_EQ(os.str(), "5/2");
}

TEST(Pochhammer, SpecExamples)
{
    EXPECT_EQ(mvh::pochhammer_int(Rational(3), 4), Rational(360));
    EXPECT_EQ(mvh::pochhammer_int(Rational(0), 0), Rational(1));
    EXPECT_EQ(mvh::pochhammer_int(Rational(-7, 3), 0), Rational(1));
    EXPECT_EQ(mvh::pochhammer_int(Rational(-3), 5), Rational(0));
    EXPECT_EQ(mvh::pochhammer_int(Rational(1, 2), 3), Rational(15, 8));
}

TEST(Pochhammer, RecurrenceAndAdditionLaw)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const Rational lambda(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 6) + 1);
        const unsigned m = rng() % 8;
        const unsigned n = rng() % 8;
        EXPECT_EQ(mvh::pochhammer_int(lambda, n + 1), mvh::pochhammer_int(lambda, n) * (lambda + Rational(n)));
        EXPECT_EQ(mvh::pochhammer_int(lambda, m + n),
                  mvh::pochhammer_int(lambda, m) * mvh::pochhammer_int(lambda + Rational(m), n));
    }
}

TEST(Pochhammer, RealMatchesFactorialAndGammaRatio)
{
    for (unsigned n = 0; n <= 15; ++n) {
        EXPECT_DOUBLE_EQ(mvh::pochhammer_real(1.0, n), std::tgamma(n + 1.0));
    }
    EXPECT_EQ(mvh::pochhammer_real(2.0, 0.0), 1.0);
    const double expected = 2.0 / std::sqrt(std::numbers::pi);
    EXPECT_NEAR(mvh::pochhammer_real(0.5, 2.5), expected, 1e-15 * expected);
    for (double lambda : {0.3, 1.7, 4.25, -0.5, -2.5}) {
        for (double nu : {0.25, 1.25, 3.75}) {
            const double ref = oracle::gamma_ratio(lambda, nu);
            EXPECT_NEAR(mvh::pochhammer_real(lambda, nu), ref, 1e-12 * std::abs(ref)) << lambda << " " << nu;
        }
    }
}

TEST(Pochhammer, RealAgreesWithExactOnIntegerNu)
{
    for (int num = -40; num <= 40; ++num) {
        const Rational lambda(num, 2); // |lambda| <= 20
        if (lambda.is_nonpositive_integer()) {
            continue;
        }
        for (unsigned n = 0; n <= 30; ++n) {
            const double exact = mvh::pochhammer_int(lambda, n).to_double();
            const double real = mvh::pochhammer_real(lambda.to_double(), n);
            EXPECT_NEAR(real, exact, 1e-12 * std::abs(exact)) << lambda << " " << n;
        }
    }
}

TEST(Pochhammer, RealPolesThrow)
{
    EXPECT_THROW(mvh::pochhammer_real(-2.0, 0.5), mvh::PoleError);
    EXPECT_THROW(mvh::pochhammer_real(0.5, -1.5), mvh::PoleError);
    EXPECT_NO_THROW(mvh::pochhammer_real(-2.0, 3.0));
    EXPECT_EQ(mvh::pochhammer_real(-2.0, 3.0), 0.0);
}

TEST(Pochhammer, RealLargeArgumentsStayFinite)
{
    const double v = mvh::pochhammer_real(200.5, 0.5);
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_NEAR(v, std::sqrt(200.5), 0.01);
}

TEST(GeneralizedBinomial, SpecExamples)
{
    EXPECT_EQ(mvh::generalized_binomial(Rational(2), 0, 3), Rational(4));
    for (unsigned n = 0; n < 10; ++n) {
        EXPECT_EQ(mvh::generalized_binomial(Rational(1), 0, n), Rational(1));
    }
    EXPECT_EQ(mvh::generalized_binomial(Rational(1, 2), 1, 2), Rational(15, 8));
}

TEST(GeneralizedBinomial, TimesFactorialIsPochhammer)
{
    for (int num = -9; num <= 9; ++num) {
        const Rational lambda(num, 4);
        for (unsigned m = 0; m < 4; ++m) {
            for (unsigned n = 0; n < 7; ++n) {
                EXPECT_EQ(mvh::generalized_binomial(lambda, m, n) * mvh::factorial(n),
                          mvh::pochhammer_int(lambda + Rational(m), n));
            }
        }
    }
}

TEST(MultiIndexEnumeration, SpecExamples)
{
    const auto two = mvh::enumerate_multi_indices(2, 1);
    ASSERT_EQ(two.size(), 3U);
    EXPECT_EQ(two[0], (MultiIndex{0, 0}));
    EXPECT_EQ(two[1], (MultiIndex{1, 0}));
    EXPECT_EQ(two[2], (MultiIndex{0, 1}));
    const auto one = mvh::enumerate_multi_indices(1, 3);
    ASSERT_EQ(one.size(), 4U);
    for (unsigned i = 0; i < 4; ++i) {
        EXPECT_EQ(one[i], MultiIndex{i});
    }
    EXPECT_EQ(mvh::enumerate_multi_indices(3, 2).size(), oracle::stars_and_bars(3, 2));
    EXPECT_EQ(oracle::stars_and_bars(3, 2), 10U);
}

TEST(MultiIndexEnumeration, CountsNoDuplicatesAndOrder)
{
    for (std::size_t r = 1; r <= 4; ++r) {
        for (unsigned d = 0; d <= 6; ++d) {
            const auto all = mvh::enumerate_multi_indices(r, d);
            EXPECT_EQ(all.size(), oracle::stars_and_bars(r, d));
            EXPECT_EQ(all.size(), mvh::multi_index_count(r, d));
            const std::set<MultiIndex> unique(all.begin(), all.end());
            EXPECT_EQ(unique.size(), all.size());
            std::size_t brute = 0;
            for (const auto& v : oracle::box(r, d)) {
                if (oracle::total(v) <= d) {
                    ++brute;
                    EXPECT_TRUE(unique.contains(MultiIndex(v)));
                }
            }
            EXPECT_EQ(brute, all.size());
            for (std::size_t i = 1; i < all.size(); ++i) {
                EXPECT_TRUE(mvh::graded_lex_less(all[i - 1], all[i]));
            }
        }
    }
}

TEST(MultiIndexEnumeration, LowerDegreeIsPrefix)
{
    const auto full = mvh::enumerate_multi_indices(3, 6);
    for (unsigned d = 0; d < 6; ++d) {
        const auto part = mvh::enumerate_multi_indices(3, d);
        EXPECT_TRUE(std::equal(part.begin(), part.end(), full.begin()));
    }
}

TEST(MultiIndex, DegreeAndFactorialProduct)
{
    const MultiIndex m{2, 0, 3};
    EXPECT_EQ(m.degree(), 5U);
    EXPECT_EQ(m.factorial_product(), Rational(12));
    std::ostringstream os;
    os << m;
    EXPECT_EQ(os.str(), "(2,0,3)");
}

TEST(Weight, SpecExamples)
{
    EXPECT_EQ(mvh::weight(mvh::WeightSpec{2, 1, 2}, MultiIndex{1, 1}), 3U);
    EXPECT_EQ(mvh::weight(mvh::WeightSpec{3, 2, 3}, MultiIndex{0, 0, 0}), 0U);
    EXPECT_EQ(mvh::weight(mvh::WeightSpec{0, 3, 3}, MultiIndex{4, 1, 7}), 0U);
    EXPECT_DOUBLE_EQ(mvh::weight(mvh::RealWeightSpec{0.5, 1, 2}, MultiIndex{2, 3}), 4.0);
}

TEST(Weight, LengthMismatchThrows)
{
    EXPECT_THROW(mvh::weight(mvh::WeightSpec{2, 1, 2}, MultiIndex{1}), mvh::DimensionMismatch);
    EXPECT_THROW((mvh::WeightSpec{1, 3, 2}.validate()), mvh::InvalidArgument);
    EXPECT_THROW((mvh::RealWeightSpec{-1.0, 0, 2}.validate()), mvh::InvalidArgument);
}
