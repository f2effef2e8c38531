#pragma once

// Term-level and floating evaluation of the weighted multivariable family
//
//   E(alpha, beta_{k+1..r}; gamma_{1..r}; x)
//     = sum_m (alpha)_{W(m)} prod_{j>k} (beta_j)_{m_j} / prod_i (gamma_i)_{m_i} * x^m / m!
//
// with W(m) = rho (m_1+...+m_k) + m_{k+1} + ... + m_r, together with the
// classical functions it specializes to (pFq, Appell F2, Lauricella F_A,
// Horn H4 and the multivariable Horn family).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "mvh/errors.hpp"
#include "mvh/exactnum.hpp"

namespace mvh {

template <class Scalar>
using rho_t = std::conditional_t<std::is_floating_point_v<Scalar>, double, std::uint32_t>;

/// Parameters (alpha, beta_{k+1..r}, gamma_{1..r}, rho, k, r) of the family.
/// beta holds the r-k trailing numerator parameters; gamma holds all r.
template <class Scalar>
struct EParams {
    Scalar alpha{};
    std::vector<Scalar> beta;
    std::vector<Scalar> gamma;
    BasicWeightSpec<rho_t<Scalar>> weight;

    [[nodiscard]] std::size_t r() const { return weight.r; }
    [[nodiscard]] std::size_t k() const { return weight.k; }

    /// beta parameter attached to variable i (i >= k).
    [[nodiscard]] const Scalar& beta_of(std::size_t i) const { return beta[i - weight.k]; }

    void validate_shape() const
    {
        weight.validate();
        if (gamma.size() != weight.r) {
            throw DimensionMismatch("gamma has " + std::to_string(gamma.size()) + " entries, expected r=" +
                                    std::to_string(weight.r));
        }
        if (beta.size() != weight.r - weight.k) {
            throw DimensionMismatch("beta has " + std::to_string(beta.size()) + " entries, expected r-k=" +
                                    std::to_string(weight.r - weight.k));
        }
    }

    friend bool operator==(const EParams&, const EParams&) = default;
};

using ExactParams = EParams<Rational>;
using RealParams = EParams<double>;

template <class Scalar>
struct EvalPoint {
    std::vector<Scalar> x;
};

struct EvalResult {
    double value = 0;
    std::uint64_t terms_summed = 0;
    double tail_estimate = 0; ///< 0 exactly when terminated
    bool in_region = false;
    bool terminated = false;
};

struct Truncation {
    unsigned max_total_degree = 120;
    /// Summation stops once the geometric tail bound drops to this level. 0 disables early stopping.
    double tail_tolerance = 1e-16;
    std::uint64_t term_cap = 2'000'000;

    void validate() const
    {
        if (term_cap < 1) {
            throw InvalidArgument("truncation: term_cap must be >= 1");
        }
        if (!(tail_tolerance >= 0)) {
            throw InvalidArgument("truncation: tail_tolerance must be nonnegative");
        }
    }
};

inline RealParams to_real(const ExactParams& p)
{
    RealParams out;
    out.alpha = p.alpha.to_double();
    for (const auto& b : p.beta) {
        out.beta.push_back(b.to_double());
    }
    for (const auto& g : p.gamma) {
        out.gamma.push_back(g.to_double());
    }
    out.weight = RealWeightSpec{static_cast<double>(p.weight.rho), p.weight.k, p.weight.r};
    return out;
}

namespace detail {

inline std::optional<std::uint64_t> nonpositive_integer_magnitude(const Rational& v)
{
    if (!v.is_nonpositive_integer()) {
        return std::nullopt;
    }
    return (-v).num().get_ui();
}

inline std::optional<std::uint64_t> nonpositive_integer_magnitude(double v)
{
    if (!(v <= 0) || std::floor(v) != v) {
        return std::nullopt;
    }
    return static_cast<std::uint64_t>(-v);
}

} // namespace detail

/// n when alpha = -n is a nonpositive integer: every term with W(m) > n vanishes.
template <class Scalar>
std::optional<std::uint64_t> terminating_weight_bound(const EParams<Scalar>& params)
{
    return detail::nonpositive_integer_magnitude(params.alpha);
}

/// Checks that every nonpositive-integer gamma_i is rescued by termination:
/// either alpha = -n cuts the series off before m_i reaches the pole, or the
/// matching beta_i is a nonpositive integer that vanishes no later than gamma_i.
template <class Scalar>
void validate_denominators(const EParams<Scalar>& params)
{
    params.validate_shape();
    const auto bound = terminating_weight_bound(params);
    for (std::size_t i = 0; i < params.r(); ++i) {
        const auto g = detail::nonpositive_integer_magnitude(params.gamma[i]);
        if (!g) {
            continue;
        }
        // (gamma_i)_{m_i} first vanishes at m_i = g + 1.
        bool rescued = false;
        if (bound) {
            const double unit = i < params.k() ? static_cast<double>(params.weight.rho) : 1.0;
            rescued = unit * static_cast<double>(*g + 1) > static_cast<double>(*bound);
        }
        if (!rescued && i >= params.k()) {
            const auto b = detail::nonpositive_integer_magnitude(params.beta_of(i));
            rescued = b && *b <= *g;
        }
        if (!rescued) {
            throw DenominatorPole("gamma_" + std::to_string(i + 1) + " is a nonpositive integer not rescued by termination");
        }
    }
}

/// Validating constructor: shapes and denominator poles are checked against the termination bound.
inline ExactParams make_params(Rational alpha, std::vector<Rational> beta, std::vector<Rational> gamma, std::uint32_t rho,
                               std::size_t k)
{
    ExactParams p{std::move(alpha), std::move(beta), std::move(gamma), WeightSpec{rho, k, 0}};
    p.weight.r = p.gamma.size();
    validate_denominators(p);
    return p;
}

inline RealParams make_real_params(double alpha, std::vector<double> beta, std::vector<double> gamma, double rho,
                                   std::size_t k)
{
    RealParams p{alpha, std::move(beta), std::move(gamma), RealWeightSpec{rho, k, 0}};
    p.weight.r = p.gamma.size();
    validate_denominators(p);
    return p;
}

/// Exact coefficient of x^m: (alpha)_{W(m)} prod (beta_j)_{m_j} / (prod (gamma_i)_{m_i} prod m_i!).
inline Rational e_term_coefficient(const ExactParams& params, const MultiIndex& m)
{
    params.validate_shape();
    Rational num = pochhammer_int(params.alpha, weight(params.weight, m));
    for (std::size_t j = params.k(); j < params.r(); ++j) {
        if (num.is_zero()) {
            break;
        }
        num *= pochhammer_int(params.beta_of(j), m[j]);
    }
    Rational den(1);
    for (std::size_t i = 0; i < params.r(); ++i) {
        den *= pochhammer_int(params.gamma[i], m[i]);
    }
    if (den.is_zero()) {
        if (num.is_zero()) {
            return Rational(0);
        }
        throw DenominatorPole("denominator Pochhammer vanishes at m=" + [&] {
            std::string s;
            for (std::size_t i = 0; i < m.size(); ++i) {
                s += (i ? "," : "") + std::to_string(m[i]);
            }
            return s;
        }());
    }
    return num / (den * m.factorial_product());
}

/// rho (sqrt|x_1| + ... + sqrt|x_k|) + |x_{k+1}| + ... + |x_r|; the series converges where this is < 1.
inline double region_measure(const RealWeightSpec& spec, std::span<const double> x)
{
    double head = 0;
    double tail = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i < spec.k) {
            head += std::sqrt(std::abs(x[i]));
        } else {
            tail += std::abs(x[i]);
        }
    }
    return spec.rho * head + tail;
}

inline bool in_region(const RealWeightSpec& spec, std::span<const double> x) { return region_measure(spec, x) < 1.0; }

namespace detail {

/// Geometric majorant of the remainder from the per-degree sums of |term|.
///
/// q is the largest ratio of consecutive increments over the last three
/// degrees. Ratios of these series typically creep up towards their limit
/// like L - c/d, so a rising ratio is extrapolated to q_d + d (q_d - q_{d-1})
/// before the geometric sum is taken.
inline double geometric_tail(const std::vector<long double>& increments)
{
    const std::size_t n = increments.size();
    if (n < 2) {
        return std::numeric_limits<double>::infinity();
    }
    long double q = 0;
    std::vector<long double> ratios;
    for (std::size_t d = (n > 4 ? n - 3 : 1); d < n; ++d) {
        const long double prev = increments[d - 1];
        const long double cur = increments[d];
        if (prev == 0) {
            if (cur == 0) {
                continue;
            }
            return std::numeric_limits<double>::infinity();
        }
        ratios.push_back(cur / prev);
        q = std::max(q, ratios.back());
    }
    if (ratios.size() >= 2) {
        const long double rise = ratios.back() - ratios[ratios.size() - 2];
        if (rise > 0) {
            q = std::max(q, ratios.back() + static_cast<long double>(n - 1) * rise);
        }
    }
    if (q >= 1) {
        return std::numeric_limits<double>::infinity();
    }
    return static_cast<double>(increments.back() * q / (1 - q));
}

/// Neumaier-compensated long double accumulator.
class CompensatedSum {
public:
    void add(long double v)
    {
        const long double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    [[nodiscard]] long double value() const { return sum_ + comp_; }

private:
    long double sum_ = 0;
    long double comp_ = 0;
};

inline long double real_pochhammer_weight(double alpha, double w)
{
    if (std::floor(w) == w) {
        return rising_factorial<long double>(alpha, static_cast<std::uint64_t>(w));
    }
    if (nonpositive_integer_magnitude(alpha)) {
        // 1/Gamma(alpha) = 0 at the poles.
        return 0;
    }
    return pochhammer_real(alpha, w);
}

/// Full float term including x^m / m!.
inline long double real_term(const RealParams& params, const MultiIndex& m, std::span<const double> x)
{
    long double num = real_pochhammer_weight(params.alpha, weight(params.weight, m));
    for (std::size_t j = params.k(); j < params.r() && num != 0; ++j) {
        num *= rising_factorial<long double>(params.beta_of(j), m[j]);
    }
    long double den = 1;
    for (std::size_t i = 0; i < params.r(); ++i) {
        den *= rising_factorial<long double>(params.gamma[i], m[i]);
    }
    if (den == 0) {
        if (num == 0) {
            return 0;
        }
        throw DenominatorPole("denominator Pochhammer vanishes in float evaluation");
    }
    long double term = num / den;
    for (std::size_t i = 0; i < params.r() && term != 0; ++i) {
        for (unsigned e = 1; e <= m[i]; ++e) {
            term *= static_cast<long double>(x[i]) / e;
        }
    }
    return term;
}

} // namespace detail

/// Floating evaluation by graded summation.
///
/// Terms are added degree by degree in graded-lex order. A terminating
/// series (alpha = -n with rho > 0 or k = 0) is summed through the last
/// degree that can carry a nonzero term regardless of max_total_degree, and
/// reports terminated with a zero tail. Otherwise summation stops at
/// max_total_degree, at term_cap, or once the geometric tail bound falls to
/// tail_tolerance. Out-of-region points are summed anyway unless strict.
inline EvalResult eval_E(const RealParams& params, const EvalPoint<double>& point, const Truncation& trunc,
                         bool strict = false)
{
    params.validate_shape();
    trunc.validate();
    if (point.x.size() != params.r()) {
        throw DimensionMismatch("point has " + std::to_string(point.x.size()) + " coordinates, expected r=" +
                                std::to_string(params.r()));
    }
    EvalResult result;
    result.in_region = in_region(params.weight, point.x);

    const auto bound = terminating_weight_bound(params);
    const bool finite = bound && (params.k() == 0 || params.weight.rho > 0);
    unsigned max_degree = trunc.max_total_degree;
    if (finite) {
        const double unit = params.k() == 0 ? 1.0 : std::min(params.weight.rho, 1.0);
        max_degree = static_cast<unsigned>(std::floor(static_cast<double>(*bound) / unit));
    }
    if (strict && !result.in_region && !finite) {
        throw OutOfRegion("point lies outside rho(sqrt|x_1|+...+sqrt|x_k|)+|x_{k+1}|+...+|x_r| < 1");
    }

    detail::CompensatedSum sum;
    std::vector<long double> increments;
    bool capped = false;
    for (unsigned d = 0; d <= max_degree && !capped; ++d) {
        long double inc = 0;
        for_each_multi_index_of_degree(params.r(), d, [&](const MultiIndex& m) {
            if (capped) {
                return;
            }
            if (result.terms_summed >= trunc.term_cap) {
                capped = true;
                return;
            }
            const long double term = detail::real_term(params, m, point.x);
            sum.add(term);
            inc += std::abs(term);
            ++result.terms_summed;
        });
        increments.push_back(inc);
        if (!finite && trunc.tail_tolerance > 0 && d >= 3 && !capped &&
            detail::geometric_tail(increments) <= trunc.tail_tolerance) {
            break;
        }
    }
    result.value = static_cast<double>(sum.value());
    result.terminated = finite && !capped;
    result.tail_estimate = result.terminated ? 0.0 : detail::geometric_tail(increments);
    return result;
}

inline EvalResult eval_E(const ExactParams& params, const EvalPoint<double>& point, const Truncation& trunc,
                         bool strict = false)
{
    return eval_E(to_real(params), point, trunc, strict);
}

/// Exact partial sum over |m| <= max_degree at a rational point.
inline Rational partial_sum_exact(const ExactParams& params, std::span<const Rational> x, unsigned max_degree)
{
    if (x.size() != params.r()) {
        throw DimensionMismatch("point length does not match r");
    }
    Rational sum(0);
    for (unsigned d = 0; d <= max_degree; ++d) {
        for_each_multi_index_of_degree(params.r(), d, [&](const MultiIndex& m) {
            Rational term = e_term_coefficient(params, m);
            if (term.is_zero()) {
                return;
            }
            for (std::size_t i = 0; i < m.size(); ++i) {
                for (unsigned e = 0; e < m[i]; ++e) {
                    term *= x[i];
                }
            }
            sum += term;
        });
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Generalized hypergeometric series pFq.

/// Exact coefficient prod (a_i)_n / (prod (b_j)_n n!) of z^n.
inline Rational pfq_coefficient(std::span<const Rational> a, std::span<const Rational> b, unsigned n)
{
    Rational num(1);
    for (const auto& ai : a) {
        num *= pochhammer_int(ai, n);
    }
    Rational den = factorial(n);
    for (const auto& bj : b) {
        den *= pochhammer_int(bj, n);
    }
    if (den.is_zero()) {
        if (num.is_zero()) {
            return Rational(0);
        }
        throw DenominatorPole("pFq: denominator parameter is a nonpositive integer reached before termination");
    }
    return num / den;
}

/// Partial sum of pFq(a; b; z). Entire for p <= q, |z| < 1 for p = q + 1.
inline EvalResult eval_pFq(std::span<const double> a, std::span<const double> b, double z, const Truncation& trunc,
                           bool strict = false)
{
    trunc.validate();
    EvalResult result;
    if (a.size() <= b.size()) {
        result.in_region = true;
    } else if (a.size() == b.size() + 1) {
        result.in_region = std::abs(z) < 1;
    } else {
        result.in_region = z == 0;
    }
    std::optional<std::uint64_t> bound;
    for (double ai : a) {
        if (auto n = detail::nonpositive_integer_magnitude(ai)) {
            bound = bound ? std::min(*bound, *n) : *n;
        }
    }
    if (strict && !result.in_region && !bound) {
        throw OutOfRegion("pFq argument outside the convergence region");
    }
    const std::uint64_t max_degree = bound ? *bound : trunc.max_total_degree;

    detail::CompensatedSum sum;
    std::vector<long double> increments;
    long double term = 1;
    bool capped = false;
    for (std::uint64_t n = 0; n <= max_degree; ++n) {
        if (result.terms_summed >= trunc.term_cap) {
            capped = true;
            break;
        }
        sum.add(term);
        increments.push_back(std::abs(term));
        ++result.terms_summed;
        if (!bound && trunc.tail_tolerance > 0 && n >= 3 && detail::geometric_tail(increments) <= trunc.tail_tolerance) {
            break;
        }
        // term_{n+1} = term_n prod (a_i + n) / prod (b_j + n) * z / (n + 1)
        long double num = 1;
        for (double ai : a) {
            num *= static_cast<long double>(ai) + n;
        }
        long double den = 1;
        for (double bj : b) {
            den *= static_cast<long double>(bj) + n;
        }
        if (den == 0) {
            if (num == 0 || term == 0) {
                term = 0;
                continue;
            }
            throw DenominatorPole("pFq: denominator parameter is a nonpositive integer reached before termination");
        }
        term = term * num / den * static_cast<long double>(z) / static_cast<long double>(n + 1);
    }
    result.value = static_cast<double>(sum.value());
    result.terminated = bound.has_value() && !capped;
    result.tail_estimate = result.terminated ? 0.0 : detail::geometric_tail(increments);
    return result;
}

inline EvalResult eval_0F0(double z, const Truncation& trunc) { return eval_pFq({}, {}, z, trunc); }

inline EvalResult eval_0F1(double b, double z, const Truncation& trunc)
{
    const std::array<double, 1> bs{b};
    return eval_pFq({}, bs, z, trunc);
}

inline EvalResult eval_1F0(double a, double z, const Truncation& trunc, bool strict = false)
{
    const std::array<double, 1> as{a};
    return eval_pFq(as, {}, z, trunc, strict);
}

/// Confluent hypergeometric function Phi(a; b; z) = 1F1.
inline EvalResult eval_Phi(double a, double b, double z, const Truncation& trunc)
{
    const std::array<double, 1> as{a};
    const std::array<double, 1> bs{b};
    return eval_pFq(as, bs, z, trunc);
}

inline EvalResult eval_2F1(double a, double b, double c, double z, const Truncation& trunc, bool strict = false)
{
    const std::array<double, 2> as{a, b};
    const std::array<double, 1> cs{c};
    return eval_pFq(as, cs, z, trunc, strict);
}

// ---------------------------------------------------------------------------
// Classical multivariable functions as reductions of E.

/// Appell F2(alpha, beta1, beta2; gamma1, gamma2; x1, x2): k = 0, r = 2.
inline EvalResult eval_F2(double alpha, std::array<double, 2> beta, std::array<double, 2> gamma,
                          std::array<double, 2> x, const Truncation& trunc, bool strict = false)
{
    const RealParams p{alpha, {beta[0], beta[1]}, {gamma[0], gamma[1]}, RealWeightSpec{1.0, 0, 2}};
    return eval_E(p, EvalPoint<double>{{x[0], x[1]}}, trunc, strict);
}

/// Lauricella F_A^(r): k = 0.
inline EvalResult eval_FA(double alpha, std::vector<double> beta, std::vector<double> gamma, std::vector<double> x,
                          const Truncation& trunc, bool strict = false)
{
    const std::size_t r = gamma.size();
    const RealParams p{alpha, std::move(beta), std::move(gamma), RealWeightSpec{1.0, 0, r}};
    return eval_E(p, EvalPoint<double>{std::move(x)}, trunc, strict);
}

/// Horn H4(alpha, beta; gamma1, gamma2; x1, x2): rho = 2, k = 1, r = 2.
inline EvalResult eval_H4(double alpha, double beta, std::array<double, 2> gamma, std::array<double, 2> x,
                          const Truncation& trunc, bool strict = false)
{
    const RealParams p{alpha, {beta}, {gamma[0], gamma[1]}, RealWeightSpec{2.0, 1, 2}};
    return eval_E(p, EvalPoint<double>{{x[0], x[1]}}, trunc, strict);
}

/// Multivariable Horn function (k)H4(r): rho = 2.
inline EvalResult eval_kH4r(double alpha, std::vector<double> beta, std::vector<double> gamma, std::size_t k,
                            std::vector<double> x, const Truncation& trunc, bool strict = false)
{
    const std::size_t r = gamma.size();
    const RealParams p{alpha, std::move(beta), std::move(gamma), RealWeightSpec{2.0, k, r}};
    return eval_E(p, EvalPoint<double>{std::move(x)}, trunc, strict);
}

/// Term formulas of the classical functions, transcribed directly from their
/// defining series and kept independent of e_term_coefficient.
namespace classical {

namespace detail {

inline Rational divide_or_pole(const Rational& num, const Rational& den)
{
    if (den.is_zero()) {
        if (num.is_zero()) {
            return Rational(0);
        }
        throw DenominatorPole("classical term: vanishing denominator");
    }
    return num / den;
}

} // namespace detail

/// (alpha)_{m1+m2} (beta1)_{m1} (beta2)_{m2} / ((gamma1)_{m1} (gamma2)_{m2} m1! m2!)
inline Rational f2_coefficient(const Rational& alpha, const Rational& beta1, const Rational& beta2,
                               const Rational& gamma1, const Rational& gamma2, unsigned m1, unsigned m2)
{
    const Rational num = pochhammer_int(alpha, m1 + m2) * pochhammer_int(beta1, m1) * pochhammer_int(beta2, m2);
    const Rational den = pochhammer_int(gamma1, m1) * pochhammer_int(gamma2, m2) * factorial(m1) * factorial(m2);
    return detail::divide_or_pole(num, den);
}

/// (alpha)_{|m|} prod (beta_i)_{m_i} / prod ((gamma_i)_{m_i} m_i!)
inline Rational fa_coefficient(const Rational& alpha, std::span<const Rational> beta, std::span<const Rational> gamma,
                               const MultiIndex& m)
{
    if (beta.size() != m.size() || gamma.size() != m.size()) {
        throw DimensionMismatch("F_A term: parameter and index lengths differ");
    }
    std::uint64_t total = 0;
    for (unsigned e : m) {
        total += e;
    }
    Rational num = pochhammer_int(alpha, total);
    Rational den(1);
    for (std::size_t i = 0; i < m.size(); ++i) {
        num *= pochhammer_int(beta[i], m[i]);
        den *= pochhammer_int(gamma[i], m[i]) * factorial(m[i]);
    }
    return detail::divide_or_pole(num, den);
}

/// (alpha)_{2 m1 + m2} (beta)_{m2} / ((gamma1)_{m1} (gamma2)_{m2} m1! m2!)
inline Rational h4_coefficient(const Rational& alpha, const Rational& beta, const Rational& gamma1,
                               const Rational& gamma2, unsigned m1, unsigned m2)
{
    const Rational num = pochhammer_int(alpha, 2ULL * m1 + m2) * pochhammer_int(beta, m2);
    const Rational den = pochhammer_int(gamma1, m1) * pochhammer_int(gamma2, m2) * factorial(m1) * factorial(m2);
    return detail::divide_or_pole(num, den);
}

/// (alpha)_{2(m_1+...+m_k) + m_{k+1}+...+m_r} prod_{j>k} (beta_j)_{m_j} / prod ((gamma_i)_{m_i} m_i!)
/// with beta = (beta_{k+1}, ..., beta_r).
inline Rational kh4r_coefficient(const Rational& alpha, std::span<const Rational> beta, std::span<const Rational> gamma,
                                 std::size_t k, const MultiIndex& m)
{
    const std::size_t r = m.size();
    if (gamma.size() != r || k > r || beta.size() != r - k) {
        throw DimensionMismatch("multivariable H4 term: parameter and index lengths differ");
    }
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < r; ++i) {
        index += (i < k ? 2ULL : 1ULL) * m[i];
    }
    Rational num = pochhammer_int(alpha, index);
    Rational den(1);
    for (std::size_t i = 0; i < r; ++i) {
        if (i >= k) {
            num *= pochhammer_int(beta[i - k], m[i]);
        }
        den *= pochhammer_int(gamma[i], m[i]) * factorial(m[i]);
    }
    return detail::divide_or_pole(num, den);
}

} // namespace classical

} // namespace mvh
