#pragma once

// Truncated multivariate formal power series over exact rationals.
//
// Variables are organised in named groups, e.g. t (one variable, order N)
// and x (r variables, total degree D). Each group is truncated by its own
// total-degree bound, so expansions that are infinite in t but finite in x
// discard monomials unambiguously.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mvh/errors.hpp"
#include "mvh/exactnum.hpp"

namespace mvh::fps {

struct VarGroup {
    std::string name;
    std::size_t arity = 1;
    unsigned max_degree = 0;

    friend bool operator==(const VarGroup&, const VarGroup&) = default;
};

/// Flat exponent vector across all groups of a layout.
using Exponents = std::vector<unsigned>;

class Layout {
public:
    Layout() = default;

    explicit Layout(std::vector<VarGroup> groups) : groups_(std::move(groups))
    {
        std::size_t off = 0;
        for (const auto& g : groups_) {
            offsets_.push_back(off);
            off += g.arity;
        }
        var_count_ = off;
    }

    /// The common (t; x_1..x_r) layout with orders N in t and D in x.
    static Layout tx(std::size_t r, unsigned t_order, unsigned x_order)
    {
        return Layout({VarGroup{"t", 1, t_order}, VarGroup{"x", r, x_order}});
    }

    [[nodiscard]] const std::vector<VarGroup>& groups() const { return groups_; }
    [[nodiscard]] const VarGroup& group(std::size_t g) const { return groups_.at(g); }
    [[nodiscard]] std::size_t offset(std::size_t g) const { return offsets_.at(g); }
    [[nodiscard]] std::size_t var_count() const { return var_count_; }

    [[nodiscard]] std::size_t var(std::size_t g, std::size_t i = 0) const
    {
        if (i >= group(g).arity) {
            throw OutOfBounds("variable index outside group '" + group(g).name + "'");
        }
        return offsets_[g] + i;
    }

    [[nodiscard]] std::size_t find(std::string_view name) const
    {
        for (std::size_t g = 0; g < groups_.size(); ++g) {
            if (groups_[g].name == name) {
                return g;
            }
        }
        throw InvalidArgument("layout has no variable group '" + std::string(name) + "'");
    }

    [[nodiscard]] std::size_t group_of_var(std::size_t v) const
    {
        for (std::size_t g = groups_.size(); g-- > 0;) {
            if (v >= offsets_[g]) {
                return g;
            }
        }
        throw OutOfBounds("variable index outside layout");
    }

    [[nodiscard]] unsigned group_degree(const Exponents& e, std::size_t g) const
    {
        unsigned d = 0;
        for (std::size_t i = 0; i < groups_[g].arity; ++i) {
            d += e[offsets_[g] + i];
        }
        return d;
    }

    [[nodiscard]] bool admits(const Exponents& e) const
    {
        if (e.size() != var_count_) {
            return false;
        }
        for (std::size_t g = 0; g < groups_.size(); ++g) {
            if (group_degree(e, g) > groups_[g].max_degree) {
                return false;
            }
        }
        return true;
    }

    /// Same group names and arities; bounds may differ.
    [[nodiscard]] bool same_shape(const Layout& o) const
    {
        if (groups_.size() != o.groups_.size()) {
            return false;
        }
        for (std::size_t g = 0; g < groups_.size(); ++g) {
            if (groups_[g].name != o.groups_[g].name || groups_[g].arity != o.groups_[g].arity) {
                return false;
            }
        }
        return true;
    }

    /// Common layout with the smaller bound in every group.
    [[nodiscard]] Layout meet(const Layout& o) const
    {
        if (!same_shape(o)) {
            throw DimensionMismatch("formal series with incompatible variable layouts");
        }
        auto groups = groups_;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            groups[g].max_degree = std::min(groups[g].max_degree, o.groups_[g].max_degree);
        }
        return Layout(std::move(groups));
    }

    /// Number of monomials inside the truncation bounds.
    [[nodiscard]] std::uint64_t monomial_count() const
    {
        std::uint64_t c = 1;
        for (const auto& g : groups_) {
            c *= multi_index_count(g.arity, g.max_degree);
        }
        return c;
    }

    [[nodiscard]] Exponents zero() const { return Exponents(var_count_, 0); }

    /// Writes m into the slots of group g.
    void place(Exponents& e, std::size_t g, const MultiIndex& m) const
    {
        if (m.size() != groups_.at(g).arity) {
            throw DimensionMismatch("multi-index length does not match group '" + groups_[g].name + "'");
        }
        for (std::size_t i = 0; i < m.size(); ++i) {
            e[offsets_[g] + i] = m[i];
        }
    }

    [[nodiscard]] MultiIndex extract(const Exponents& e, std::size_t g) const
    {
        std::vector<unsigned> out(e.begin() + static_cast<std::ptrdiff_t>(offsets_.at(g)),
                                  e.begin() + static_cast<std::ptrdiff_t>(offsets_[g] + groups_[g].arity));
        return MultiIndex(std::move(out));
    }

    /// Canonical order: group by group, graded-lex within each group.
    [[nodiscard]] bool canonical_less(const Exponents& a, const Exponents& b) const
    {
        for (std::size_t g = 0; g < groups_.size(); ++g) {
            const auto lo = static_cast<std::ptrdiff_t>(offsets_[g]);
            const auto hi = static_cast<std::ptrdiff_t>(offsets_[g] + groups_[g].arity);
            const std::vector<unsigned> sa(a.begin() + lo, a.begin() + hi);
            const std::vector<unsigned> sb(b.begin() + lo, b.begin() + hi);
            if (sa != sb) {
                return graded_lex_less(sa, sb);
            }
        }
        return false;
    }

    [[nodiscard]] std::string describe() const
    {
        std::string s;
        for (const auto& g : groups_) {
            s += (s.empty() ? "" : "; ") + g.name + "[" + std::to_string(g.arity) + "]<=" + std::to_string(g.max_degree);
        }
        return s;
    }

    friend bool operator==(const Layout& a, const Layout& b) { return a.groups_ == b.groups_; }

private:
    std::vector<VarGroup> groups_;
    std::vector<std::size_t> offsets_;
    std::size_t var_count_ = 0;
};

/// Sparse truncated series. No stored coefficient is zero and every stored
/// key lies inside the layout bounds, so equality is map equality.
class FormalSeries {
public:
    using Terms = std::map<Exponents, Rational>;

    FormalSeries() = default;
    explicit FormalSeries(Layout layout) : layout_(std::move(layout)) {}

    static FormalSeries constant(Layout layout, const Rational& c)
    {
        FormalSeries s(std::move(layout));
        s.accumulate(s.layout_.zero(), c);
        return s;
    }

    static FormalSeries monomial(Layout layout, const Exponents& e, const Rational& c)
    {
        FormalSeries s(std::move(layout));
        s.accumulate(e, c);
        return s;
    }

    [[nodiscard]] const Layout& layout() const { return layout_; }
    [[nodiscard]] const Terms& terms() const { return terms_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }

    /// Adds c to the coefficient of e; monomials beyond the bounds are discarded.
    void accumulate(const Exponents& e, const Rational& c)
    {
        if (c.is_zero() || !layout_.admits(e)) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }

    [[nodiscard]] Rational coefficient(const Exponents& e) const
    {
        if (!layout_.admits(e)) {
            throw OutOfBounds("coefficient query outside the truncation bounds");
        }
        const auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Terms in canonical (group-wise graded-lex) order.
    [[nodiscard]] std::vector<std::pair<Exponents, Rational>> sorted_terms() const
    {
        std::vector<std::pair<Exponents, Rational>> out(terms_.begin(), terms_.end());
        std::sort(out.begin(), out.end(),
                  [this](const auto& a, const auto& b) { return layout_.canonical_less(a.first, b.first); });
        return out;
    }

    /// One line per monomial: exponents in layout order, then `num/den`.
    [[nodiscard]] std::string canonical_text() const
    {
        std::string out;
        for (const auto& [e, c] : sorted_terms()) {
            for (unsigned v : e) {
                out += std::to_string(v);
                out += ' ';
            }
            out += c.str();
            out += '\n';
        }
        return out;
    }

    static FormalSeries from_canonical_text(Layout layout, std::string_view text)
    {
        FormalSeries s(std::move(layout));
        std::istringstream in{std::string(text)};
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) {
                continue;
            }
            std::istringstream fields(line);
            Exponents e(s.layout_.var_count());
            for (auto& v : e) {
                if (!(fields >> v)) {
                    throw InvalidArgument("canonical series line has too few exponents: '" + line + "'");
                }
            }
            std::string coeff;
            if (!(fields >> coeff)) {
                throw InvalidArgument("canonical series line lacks a coefficient: '" + line + "'");
            }
            if (!s.layout_.admits(e)) {
                throw OutOfBounds("canonical series line outside the layout bounds: '" + line + "'");
            }
            s.accumulate(e, Rational::parse(coeff));
        }
        return s;
    }

    FormalSeries& operator+=(const FormalSeries& o)
    {
        *this = *this + o;
        return *this;
    }

    friend FormalSeries operator+(const FormalSeries& a, const FormalSeries& b)
    {
        FormalSeries out(a.layout_.meet(b.layout_));
        for (const auto& [e, c] : a.terms_) {
            out.accumulate(e, c);
        }
        for (const auto& [e, c] : b.terms_) {
            out.accumulate(e, c);
        }
        return out;
    }

    friend FormalSeries operator-(const FormalSeries& a, const FormalSeries& b) { return a + b * Rational(-1); }

    friend FormalSeries operator*(const FormalSeries& a, const Rational& c)
    {
        FormalSeries out(a.layout_);
        if (c.is_zero()) {
            return out;
        }
        for (const auto& [e, v] : a.terms_) {
            out.terms_.emplace(e, v * c);
        }
        return out;
    }

    friend FormalSeries operator*(const FormalSeries& a, const FormalSeries& b)
    {
        FormalSeries out(a.layout_.meet(b.layout_));
        const Layout& lay = out.layout_;
        const std::size_t groups = lay.groups().size();
        std::vector<unsigned> deg_a(groups);
        Exponents e(lay.var_count());
        for (const auto& [ea, ca] : a.terms_) {
            for (std::size_t g = 0; g < groups; ++g) {
                deg_a[g] = lay.group_degree(ea, g);
            }
            for (const auto& [eb, cb] : b.terms_) {
                bool fits = true;
                for (std::size_t g = 0; g < groups && fits; ++g) {
                    fits = deg_a[g] + lay.group_degree(eb, g) <= lay.group(g).max_degree;
                }
                if (!fits) {
                    continue;
                }
                for (std::size_t v = 0; v < e.size(); ++v) {
                    e[v] = ea[v] + eb[v];
                }
                auto [it, inserted] = out.terms_.try_emplace(e, ca);
                if (inserted) {
                    it->second *= cb;
                } else {
                    it->second += ca * cb;
                }
            }
        }
        std::erase_if(out.terms_, [](const auto& kv) { return kv.second.is_zero(); });
        return out;
    }

    friend bool operator==(const FormalSeries& a, const FormalSeries& b)
    {
        return a.layout_ == b.layout_ && a.terms_ == b.terms_;
    }

private:
    Layout layout_;
    Terms terms_;
};

inline FormalSeries fs_add(const FormalSeries& a, const FormalSeries& b) { return a + b; }
inline FormalSeries fs_mul(const FormalSeries& a, const FormalSeries& b) { return a * b; }
inline FormalSeries fs_scale(const FormalSeries& a, const Rational& c) { return a * c; }

/// Coefficient of t^n x^m in a (t; x) series.
inline Rational fs_coefficient(const FormalSeries& s, unsigned n, const MultiIndex& m)
{
    const Layout& lay = s.layout();
    if (lay.groups().size() != 2 || lay.group(0).arity != 1) {
        throw DimensionMismatch("fs_coefficient expects a (t; x) layout");
    }
    Exponents e = lay.zero();
    e[lay.var(0)] = n;
    lay.place(e, 1, m);
    return s.coefficient(e);
}

enum class BinomialSign {
    negative, ///< (1 - t)^(-lambda)
    positive, ///< (1 - t)^(+lambda)
};

/// (1 - v)^(-lambda) = sum (lambda)_n v^n / n! in variable v of the layout
/// (or (1 - v)^(+lambda) by substituting -lambda).
inline FormalSeries binomial_series(const Layout& layout, std::size_t var, const Rational& lambda,
                                    BinomialSign sign = BinomialSign::negative)
{
    const Rational exponent = sign == BinomialSign::negative ? lambda : -lambda;
    const unsigned order = layout.group(layout.group_of_var(var)).max_degree;
    FormalSeries s(layout);
    Exponents e = layout.zero();
    Rational c(1);
    for (unsigned n = 0; n <= order; ++n) {
        e[var] = n;
        s.accumulate(e, c);
        c *= (exponent + Rational(n)) / Rational(n + 1);
        if (c.is_zero()) {
            break;
        }
    }
    return s;
}

/// Univariate (1 - t)^(-lambda) (or (1 - t)^(lambda)) up to t^N.
inline FormalSeries fs_binomial(const Rational& lambda, BinomialSign sign, unsigned N)
{
    const Layout lay = Layout::tx(0, N, 0);
    return binomial_series(lay, lay.var(0), lambda, sign);
}

/// e^v = sum v^n / n! in variable v of the layout.
inline FormalSeries exp_series(const Layout& layout, std::size_t var)
{
    const unsigned order = layout.group(layout.group_of_var(var)).max_degree;
    FormalSeries s(layout);
    Exponents e = layout.zero();
    for (unsigned n = 0; n <= order; ++n) {
        e[var] = n;
        s.accumulate(e, Rational(1) / factorial(n));
    }
    return s;
}

inline FormalSeries fs_exp(unsigned N)
{
    const Layout lay = Layout::tx(0, N, 0);
    return exp_series(lay, lay.var(0));
}

/// x -> sign * x * t^t_power * (1 - t)^(-pole_order). Negative pole_order gives a polynomial factor.
struct ArgumentMap {
    int sign = 1;
    unsigned t_power = 0;
    int pole_order = 0;

    friend bool operator==(const ArgumentMap&, const ArgumentMap&) = default;
};

/// The argument forms that occur on the right-hand sides of the generating relations.
enum class SubstitutionStyle {
    unchanged, ///< x
    plain,     ///< x / (1 - t)
    rho_pow,   ///< x / (1 - t)^rho
    neg_t_rho, ///< x (-t)^rho / (1 - t)^rho
    neg_t,     ///< -x t / (1 - t)
    shifted,   ///< x (1 - t)
};

inline ArgumentMap argument_map(SubstitutionStyle style, unsigned rho = 1)
{
    const int r = static_cast<int>(rho);
    switch (style) {
    case SubstitutionStyle::unchanged:
        return {1, 0, 0};
    case SubstitutionStyle::plain:
        return {1, 0, 1};
    case SubstitutionStyle::rho_pow:
        return {1, 0, r};
    case SubstitutionStyle::neg_t_rho:
        return {rho % 2 == 0 ? 1 : -1, rho, r};
    case SubstitutionStyle::neg_t:
        return {-1, 1, 1};
    case SubstitutionStyle::shifted:
        return {1, 0, -1};
    }
    throw InvalidArgument("unknown substitution style");
}

/// Rational-rho overload: the rho-dependent forms need an integer rho.
inline ArgumentMap argument_map(SubstitutionStyle style, const Rational& rho)
{
    const bool uses_rho = style == SubstitutionStyle::rho_pow || style == SubstitutionStyle::neg_t_rho;
    if (uses_rho && (!rho.is_integer() || rho.sign() < 0)) {
        throw UnsupportedBranch("substitution with non-integer rho=" + rho.str() + " is not supported");
    }
    return argument_map(style, uses_rho ? static_cast<unsigned>(rho.num().get_ui()) : 1U);
}

/// Exact coefficient of x^m for the function being substituted into.
using TermSource = std::function<Rational(const MultiIndex&)>;

/// Expands sum_m c_m prod_i (map_i(x_i))^{m_i} into the layout, where x is
/// group x_group and t is the variable t_var. Each x^m picks up
/// (+-1) t^{sum a_i m_i} (1 - t)^{-sum b_i m_i}, the last factor expanded as a
/// binomial series.
inline FormalSeries fs_substitute_scaled_arg(const TermSource& source, std::span<const ArgumentMap> maps,
                                             const Layout& layout, std::size_t x_group, std::size_t t_var)
{
    const VarGroup& xg = layout.group(x_group);
    if (maps.size() != xg.arity) {
        throw DimensionMismatch("substitution needs one argument map per variable of group '" + xg.name + "'");
    }
    const std::size_t t_group = layout.group_of_var(t_var);
    if (t_group == x_group) {
        throw InvalidArgument("substitution variable t must lie outside the substituted group");
    }
    const unsigned t_order = layout.group(t_group).max_degree;
    const Layout t_line({VarGroup{"t", 1, t_order}});

    std::map<long, std::vector<Rational>> binomial_cache;
    auto binomial_coefficients = [&](long b) -> const std::vector<Rational>& {
        auto it = binomial_cache.find(b);
        if (it == binomial_cache.end()) {
            const FormalSeries s = binomial_series(t_line, 0, Rational(b));
            std::vector<Rational> c(t_order + 1, Rational(0));
            for (const auto& [e, v] : s.terms()) {
                c[e[0]] = v;
            }
            it = binomial_cache.emplace(b, std::move(c)).first;
        }
        return it->second;
    };

    FormalSeries out(layout);
    Exponents e = layout.zero();
    for (unsigned d = 0; d <= xg.max_degree; ++d) {
        for_each_multi_index_of_degree(xg.arity, d, [&](const MultiIndex& m) {
            const Rational c = source(m);
            if (c.is_zero()) {
                return;
            }
            int sign = 1;
            unsigned shift = 0;
            long pole = 0;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (maps[i].sign < 0 && m[i] % 2 == 1) {
                    sign = -sign;
                }
                shift += maps[i].t_power * m[i];
                pole += static_cast<long>(maps[i].pole_order) * m[i];
            }
            if (shift > t_order) {
                return;
            }
            const auto& bc = binomial_coefficients(pole);
            std::fill(e.begin(), e.end(), 0U);
            layout.place(e, x_group, m);
            const Rational signed_c = sign < 0 ? -c : c;
            for (unsigned j = 0; shift + j <= t_order; ++j) {
                if (bc[j].is_zero()) {
                    continue;
                }
                e[t_var] = shift + j;
                out.accumulate(e, signed_c * bc[j]);
            }
        });
    }
    return out;
}

/// A finite-support point Phi(k_1..k_r; n) for the rearrangement check.
struct SupportPoint {
    std::vector<unsigned> k;
    unsigned n = 0;
    Rational value;
};

/// Both sides of
///   sum_n sum_{w.k <= n} Phi(k; n)  =  sum_n sum_k Phi(k; n + w.k)
/// by direct enumeration over the box spanned by the support.
inline std::pair<Rational, Rational> rearrangement_oracle(std::span<const SupportPoint> phi,
                                                          std::span<const unsigned> weights)
{
    const std::size_t r = weights.size();
    for (unsigned w : weights) {
        if (w == 0) {
            throw InvalidArgument("rearrangement weights must be positive");
        }
    }
    std::map<std::pair<std::vector<unsigned>, unsigned>, Rational> table;
    std::vector<unsigned> k_max(r, 0);
    unsigned n_max = 0;
    for (const auto& p : phi) {
        if (p.k.size() != r) {
            throw DimensionMismatch("support point arity differs from the weight tuple");
        }
        table[{p.k, p.n}] += p.value;
        for (std::size_t i = 0; i < r; ++i) {
            k_max[i] = std::max(k_max[i], p.k[i]);
        }
        n_max = std::max(n_max, p.n);
    }
    auto lookup = [&](const std::vector<unsigned>& k, unsigned n) {
        const auto it = table.find({k, n});
        return it == table.end() ? Rational(0) : it->second;
    };
    auto for_each_k = [&](auto&& f) {
        std::vector<unsigned> k(r, 0);
        while (true) {
            f(k);
            std::size_t i = 0;
            while (i < r && k[i] == k_max[i]) {
                k[i] = 0;
                ++i;
            }
            if (i == r) {
                return;
            }
            ++k[i];
        }
    };
    auto weighted = [&](const std::vector<unsigned>& k) {
        unsigned s = 0;
        for (std::size_t i = 0; i < r; ++i) {
            s += weights[i] * k[i];
        }
        return s;
    };

    Rational lhs(0);
    Rational rhs(0);
    if (phi.empty()) {
        return {lhs, rhs};
    }
    for (unsigned n = 0; n <= n_max; ++n) {
        for_each_k([&](const std::vector<unsigned>& k) {
            if (weighted(k) <= n) {
                lhs += lookup(k, n);
            }
        });
    }
    for (unsigned n = 0; n <= n_max; ++n) {
        for_each_k([&](const std::vector<unsigned>& k) {
            const unsigned shifted = n + weighted(k);
            if (shifted <= n_max) {
                rhs += lookup(k, shifted);
            }
        });
    }
    return {lhs, rhs};
}

} // namespace mvh::fps
