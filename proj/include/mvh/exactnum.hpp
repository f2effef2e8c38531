#pragma once

// Exact scalar arithmetic, Pochhammer symbols and multi-index enumeration.

#include <cmath>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "mvh/errors.hpp"

namespace mvh {

/// Arbitrary-precision rational, always held in lowest terms with a positive
/// denominator. Backed by GMP's mpq.
class Rational {
public:
    Rational() = default;

    template <std::integral I>
    Rational(I value) // NOLINT(google-explicit-constructor)
    {
        if constexpr (std::is_signed_v<I>) {
            value_ = mpz_class(static_cast<long>(value));
        } else {
            value_ = mpz_class(static_cast<unsigned long>(value));
        }
    }

    Rational(long num, long den)
    {
        if (den == 0) {
            throw DivisionByZero();
        }
        value_ = mpq_class(mpz_class(num), mpz_class(den));
        value_.canonicalize();
    }

    explicit Rational(mpz_class value) : value_(std::move(value)) {}

    explicit Rational(mpq_class value) : value_(std::move(value))
    {
        if (value_.get_den() == 0) {
            throw DivisionByZero();
        }
        value_.canonicalize();
    }

    /// Parses `p`, `-p`, `p/q` or `-p/q` with decimal integers p, q.
    static Rational parse(std::string_view text)
    {
        auto valid_int = [](std::string_view s, bool allow_sign) {
            if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) {
                s.remove_prefix(1);
            }
            if (s.empty()) {
                return false;
            }
            for (char c : s) {
                if (c < '0' || c > '9') {
                    return false;
                }
            }
            return true;
        };
        const auto slash = text.find('/');
        const std::string_view num = text.substr(0, slash);
        const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
        if (!valid_int(num, true) || !valid_int(den, false)) {
            throw InvalidArgument("not an exact rational literal: '" + std::string(text) + "'");
        }
        std::string num_str(num);
        if (num_str.front() == '+') {
            num_str.erase(0, 1);
        }
        mpz_class n(num_str, 10);
        mpz_class d(std::string(den), 10);
        if (d == 0) {
            throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
        }
        return Rational(mpq_class(n, d));
    }

    [[nodiscard]] mpz_class num() const { return value_.get_num(); }
    [[nodiscard]] mpz_class den() const { return value_.get_den(); }
    [[nodiscard]] const mpq_class& raw() const { return value_; }

    [[nodiscard]] int sign() const { return sgn(value_); }
    [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
    [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }

    /// True for 0, -1, -2, ...
    [[nodiscard]] bool is_nonpositive_integer() const { return is_integer() && sign() <= 0; }

    [[nodiscard]] double to_double() const { return value_.get_d(); }

    [[nodiscard]] long double to_long_double() const
    {
        // mpq_get_d truncates; divide the integer parts in long double instead when they fit.
        const mpz_class& n = value_.get_num();
        const mpz_class& d = value_.get_den();
        if (mpz_sizeinbase(n.get_mpz_t(), 2) < 63 && mpz_sizeinbase(d.get_mpz_t(), 2) < 63) {
            return static_cast<long double>(n.get_si()) / static_cast<long double>(d.get_si());
        }
        return static_cast<long double>(value_.get_d());
    }

    /// Canonical `num/den` text; integers keep the `/1`.
    [[nodiscard]] std::string str() const { return value_.get_num().get_str() + "/" + value_.get_den().get_str(); }

    Rational& operator+=(const Rational& o)
    {
        value_ += o.value_;
        return *this;
    }
    Rational& operator-=(const Rational& o)
    {
        value_ -= o.value_;
        return *this;
    }
    Rational& operator*=(const Rational& o)
    {
        value_ *= o.value_;
        return *this;
    }
    Rational& operator/=(const Rational& o)
    {
        if (o.is_zero()) {
            throw DivisionByZero();
        }
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

private:
    mpq_class value_{0};
};

/// n! as an exact rational.
inline Rational factorial(unsigned n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(std::move(f));
}

/// Rising factorial (lambda)_n = lambda (lambda+1) ... (lambda+n-1), with (lambda)_0 = 1 for every lambda.
template <class T>
T rising_factorial(const T& lambda, std::uint64_t n)
{
    T acc(1);
    T factor = lambda;
    for (std::uint64_t j = 0; j < n; ++j) {
        acc *= factor;
        factor += T(1);
    }
    return acc;
}

inline Rational pochhammer_int(const Rational& lambda, std::uint64_t n) { return rising_factorial(lambda, n); }

/// C(lambda+m+n-1, n) = (lambda+m)_n / n!.
inline Rational generalized_binomial(const Rational& lambda, std::uint64_t m, unsigned n)
{
    return pochhammer_int(lambda + Rational(m), n) / factorial(n);
}

namespace detail {

inline bool is_nonpositive_integer(long double v) { return v <= 0 && std::floor(v) == v; }

/// Sign of Gamma(v) for v not a pole.
inline int gamma_sign(long double v)
{
    if (v > 0) {
        return 1;
    }
    const auto fl = static_cast<long long>(std::floor(v));
    return (fl % 2 == 0) ? 1 : -1;
}

} // namespace detail

/// Real Pochhammer symbol Gamma(lambda+nu)/Gamma(lambda).
///
/// Nonnegative integer nu takes the product path, which is defined for every
/// lambda. Otherwise the ratio is formed in log-gamma space with the signs
/// carried separately, so |lambda+nu| up to ~170 and beyond does not overflow
/// the intermediate gamma values.
inline double pochhammer_real(double lambda, double nu)
{
    if (!std::isfinite(lambda) || !std::isfinite(nu)) {
        throw InvalidArgument("pochhammer_real: non-finite argument");
    }
    if (nu >= 0 && std::floor(nu) == nu && nu < 1e7) {
        return static_cast<double>(rising_factorial<long double>(lambda, static_cast<std::uint64_t>(nu)));
    }
    const long double a = lambda;
    const long double b = static_cast<long double>(lambda) + static_cast<long double>(nu);
    if (detail::is_nonpositive_integer(a) || detail::is_nonpositive_integer(b)) {
        throw PoleError("pochhammer_real: gamma pole at lambda=" + std::to_string(lambda) +
                        ", nu=" + std::to_string(nu));
    }
    const long double log_mag = std::lgamma(b) - std::lgamma(a);
    const int sign = detail::gamma_sign(a) * detail::gamma_sign(b);
    return static_cast<double>(sign * std::exp(log_mag));
}

/// An r-tuple of nonnegative summation indices.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t r) : entries_(r, 0) {}
    MultiIndex(std::initializer_list<unsigned> entries) : entries_(entries) {}
    explicit MultiIndex(std::vector<unsigned> entries) : entries_(std::move(entries)) {}

    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] unsigned operator[](std::size_t i) const { return entries_[i]; }
    unsigned& operator[](std::size_t i) { return entries_[i]; }
    [[nodiscard]] auto begin() const { return entries_.begin(); }
    [[nodiscard]] auto end() const { return entries_.end(); }
    [[nodiscard]] const std::vector<unsigned>& entries() const { return entries_; }

    [[nodiscard]] unsigned degree() const
    {
        unsigned d = 0;
        for (unsigned e : entries_) {
            d += e;
        }
        return d;
    }

    [[nodiscard]] bool is_zero() const { return degree() == 0; }

    /// m_1! m_2! ... m_r!
    [[nodiscard]] Rational factorial_product() const
    {
        Rational p(1);
        for (unsigned e : entries_) {
            p *= factorial(e);
        }
        return p;
    }

    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

    friend std::ostream& operator<<(std::ostream& os, const MultiIndex& m)
    {
        os << '(';
        for (std::size_t i = 0; i < m.size(); ++i) {
            os << (i ? "," : "") << m[i];
        }
        return os << ')';
    }

private:
    std::vector<unsigned> entries_;
};

/// Graded lexicographic order: ascending total degree, then (m1, m2, ...)
/// descending, so that (1,0) precedes (0,1).
inline bool graded_lex_less(const std::vector<unsigned>& a, const std::vector<unsigned>& b)
{
    unsigned da = 0;
    unsigned db = 0;
    for (unsigned e : a) {
        da += e;
    }
    for (unsigned e : b) {
        db += e;
    }
    if (da != db) {
        return da < db;
    }
    return b < a;
}

inline bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) { return graded_lex_less(a.entries(), b.entries()); }

/// Calls f(m) for every m with |m| = degree, in graded-lex order.
template <class F>
void for_each_multi_index_of_degree(std::size_t r, unsigned degree, F&& f)
{
    if (r == 0) {
        if (degree == 0) {
            f(MultiIndex{});
        }
        return;
    }
    MultiIndex m(r);
    auto rec = [&](auto&& self, std::size_t pos, unsigned remaining) -> void {
        if (pos + 1 == r) {
            m[pos] = remaining;
            f(static_cast<const MultiIndex&>(m));
            return;
        }
        for (unsigned v = remaining + 1; v-- > 0;) {
            m[pos] = v;
            self(self, pos + 1, remaining - v);
        }
        m[pos] = 0;
    };
    rec(rec, 0, degree);
}

/// Every m with |m| <= max_total_degree, once each, in graded-lex order.
/// Truncating at a smaller degree gives a prefix of this sequence.
inline std::vector<MultiIndex> enumerate_multi_indices(std::size_t r, unsigned max_total_degree)
{
    std::vector<MultiIndex> out;
    for (unsigned d = 0; d <= max_total_degree; ++d) {
        for_each_multi_index_of_degree(r, d, [&](const MultiIndex& m) { out.push_back(m); });
    }
    return out;
}

/// Shape of the weight rho (m_1+...+m_k) + m_{k+1} + ... + m_r.
/// Rho is an unsigned integer in exact mode and a double in float mode.
template <class Rho>
struct BasicWeightSpec {
    Rho rho{1};
    std::size_t k = 0;
    std::size_t r = 1;

    void validate() const
    {
        if (r == 0) {
            throw InvalidArgument("weight spec: r must be positive");
        }
        if (k > r) {
            throw InvalidArgument("weight spec: k=" + std::to_string(k) + " exceeds r=" + std::to_string(r));
        }
        if constexpr (std::is_floating_point_v<Rho>) {
            if (!(rho >= 0) || !std::isfinite(rho)) {
                throw InvalidArgument("weight spec: rho must be a finite nonnegative number");
            }
        }
    }

    friend bool operator==(const BasicWeightSpec&, const BasicWeightSpec&) = default;
};

using WeightSpec = BasicWeightSpec<std::uint32_t>;
using RealWeightSpec = BasicWeightSpec<double>;

namespace detail {

template <class Rho>
void check_weight_arity(const BasicWeightSpec<Rho>& spec, const MultiIndex& m)
{
    if (m.size() != spec.r) {
        throw DimensionMismatch("multi-index of length " + std::to_string(m.size()) + " used with r=" +
                                std::to_string(spec.r));
    }
}

} // namespace detail

inline std::uint64_t weight(const WeightSpec& spec, const MultiIndex& m)
{
    detail::check_weight_arity(spec, m);
    std::uint64_t head = 0;
    std::uint64_t tail = 0;
    for (std::size_t i = 0; i < spec.r; ++i) {
        (i < spec.k ? head : tail) += m[i];
    }
    return static_cast<std::uint64_t>(spec.rho) * head + tail;
}

inline double weight(const RealWeightSpec& spec, const MultiIndex& m)
{
    detail::check_weight_arity(spec, m);
    double head = 0;
    double tail = 0;
    for (std::size_t i = 0; i < spec.r; ++i) {
        (i < spec.k ? head : tail) += m[i];
    }
    return spec.rho * head + tail;
}

/// Number of multi-indices of length r with total degree <= d, i.e. C(d+r, r).
inline std::uint64_t multi_index_count(std::size_t r, unsigned d)
{
    std::uint64_t c = 1;
    for (std::size_t i = 1; i <= r; ++i) {
        c = c * (d + i) / i;
    }
    return c;
}

} // namespace mvh
