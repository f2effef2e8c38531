#pragma once

// Coefficient families used by the bilateral generating relations: the
// sequence a_k and the indexed multivariable functions Omega_{mu + psi k}(y).

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mvh/errors.hpp"
#include "mvh/exactnum.hpp"
#include "mvh/fps.hpp"
#include "mvh/hyperfam.hpp"

namespace mvh::identities {

/// Finite polynomial in y_1..y_s as an exact coefficient map.
using YPolynomial = std::map<MultiIndex, Rational>;

/// The sequence a_k of a bilateral relation.
struct CoefficientSequence {
    enum class Kind {
        one,               ///< a_k = 1
        pochhammer_ratio,  ///< a_k = (lambda)_k / k!
        inverse_factorial, ///< a_k = 1 / k!
        table,             ///< explicit finite table
    };

    Kind kind = Kind::one;
    Rational lambda{1};
    std::vector<Rational> values;

    [[nodiscard]] Rational at(unsigned k) const
    {
        switch (kind) {
        case Kind::one:
            return Rational(1);
        case Kind::pochhammer_ratio:
            return pochhammer_int(lambda, k) / factorial(k);
        case Kind::inverse_factorial:
            return Rational(1) / factorial(k);
        case Kind::table:
            if (k >= values.size()) {
                throw InvalidArgument("a_k table has no entry for k=" + std::to_string(k));
            }
            return values[k];
        }
        throw InvalidArgument("unknown coefficient sequence");
    }

    friend bool operator==(const CoefficientSequence&, const CoefficientSequence&) = default;
};

/// u_n(x_1..x_r) generated by sum_n u_n t^n / n! = prod_j (1 - x_j t^{m_j})^{-alpha_j},
/// read off as n! times the t^n coefficient of the product of binomial series.
inline YPolynomial erkus_srivastava_coefficients(std::span<const Rational> alphas, std::span<const unsigned> powers,
                                                 unsigned n)
{
    const std::size_t r = alphas.size();
    if (powers.size() != r) {
        throw DimensionMismatch("Erkus-Srivastava: alphas and powers differ in length");
    }
    for (unsigned mj : powers) {
        if (mj == 0) {
            throw InvalidArgument("Erkus-Srivastava: powers must be positive integers");
        }
    }
    const fps::Layout lay({fps::VarGroup{"t", 1, n}, fps::VarGroup{"x", r, n}});
    fps::FormalSeries product = fps::FormalSeries::constant(lay, Rational(1));
    for (std::size_t j = 0; j < r; ++j) {
        // (1 - x_j t^{m_j})^{-alpha_j} = sum_e (alpha_j)_e / e! (x_j t^{m_j})^e
        std::vector<fps::ArgumentMap> maps(r);
        maps[j] = fps::ArgumentMap{1, powers[j], 0};
        const Rational alpha = alphas[j];
        auto source = [&, j](const MultiIndex& m) {
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (i != j && m[i] != 0) {
                    return Rational(0);
                }
            }
            return pochhammer_int(alpha, m[j]) / factorial(m[j]);
        };
        product = product * fps::fs_substitute_scaled_arg(source, maps, lay, 1, lay.var(0));
    }
    YPolynomial out;
    const Rational n_fact = factorial(n);
    for (const auto& [e, c] : product.terms()) {
        if (e[0] == n) {
            out.emplace(lay.extract(e, 1), c * n_fact);
        }
    }
    return out;
}

/// Indexed family Omega_{mu + psi j}(y_1..y_s).
struct OmegaFamily {
    enum class Kind {
        erkus_srivastava, ///< u_index^{(alphas)} with powers m_j
        multi_horn_h4,    ///< (k)H4(r)(-index, beta; gamma; y)
        e_family_shifted, ///< E(lambda + index, ...; y) or E(-index, ...; y)
        custom_table,     ///< explicit polynomials per index
    };

    Kind kind = Kind::custom_table;
    unsigned mu = 0;
    unsigned psi = 1;

    // erkus_srivastava
    std::vector<Rational> alphas;
    std::vector<unsigned> powers;

    // multi_horn_h4 and e_family_shifted; the alpha slot is replaced by the index.
    ExactParams params;
    Rational lambda{0};
    bool negated = false;

    // custom_table
    std::size_t table_arity = 0;
    std::map<unsigned, YPolynomial> table;

    [[nodiscard]] std::size_t arity() const
    {
        switch (kind) {
        case Kind::erkus_srivastava:
            return alphas.size();
        case Kind::multi_horn_h4:
        case Kind::e_family_shifted:
            return params.r();
        case Kind::custom_table:
            return table_arity;
        }
        return 0;
    }

    [[nodiscard]] long index(unsigned j) const { return static_cast<long>(mu) + static_cast<long>(psi) * j; }

    friend bool operator==(const OmegaFamily&, const OmegaFamily&) = default;
};

inline std::string to_string(OmegaFamily::Kind kind)
{
    switch (kind) {
    case OmegaFamily::Kind::erkus_srivastava:
        return "ERKUS_SRIVASTAVA";
    case OmegaFamily::Kind::multi_horn_h4:
        return "MULTI_HORN_H4";
    case OmegaFamily::Kind::e_family_shifted:
        return "E_FAMILY_SHIFTED";
    case OmegaFamily::Kind::custom_table:
        return "CUSTOM_TABLE";
    }
    return "?";
}

/// Exact expansion of Omega_index(y) truncated to total y-degree y_degree.
inline YPolynomial omega_coefficients(const OmegaFamily& family, long index, unsigned y_degree)
{
    if (index < 0) {
        throw UnrealizableIndex("Omega index " + std::to_string(index) + " is negative");
    }
    const auto idx = static_cast<unsigned>(index);
    YPolynomial out;
    auto keep = [&](const MultiIndex& m, const Rational& c) {
        if (!c.is_zero() && m.degree() <= y_degree) {
            out.emplace(m, c);
        }
    };
    switch (family.kind) {
    case OmegaFamily::Kind::erkus_srivastava:
        for (const auto& [m, c] : erkus_srivastava_coefficients(family.alphas, family.powers, idx)) {
            keep(m, c);
        }
        return out;
    case OmegaFamily::Kind::multi_horn_h4: {
        const ExactParams& p = family.params;
        p.validate_shape();
        const Rational alpha = -Rational(idx);
        for (const auto& m : enumerate_multi_indices(p.r(), y_degree)) {
            keep(m, classical::kh4r_coefficient(alpha, p.beta, p.gamma, p.k(), m));
        }
        return out;
    }
    case OmegaFamily::Kind::e_family_shifted: {
        ExactParams p = family.params;
        p.validate_shape();
        p.alpha = family.negated ? -Rational(idx) : family.lambda + Rational(idx);
        for (const auto& m : enumerate_multi_indices(p.r(), y_degree)) {
            keep(m, e_term_coefficient(p, m));
        }
        return out;
    }
    case OmegaFamily::Kind::custom_table: {
        const auto it = family.table.find(idx);
        if (it == family.table.end()) {
            throw UnrealizableIndex("custom Omega table has no entry for index " + std::to_string(idx));
        }
        for (const auto& [m, c] : it->second) {
            if (m.size() != family.table_arity) {
                throw DimensionMismatch("custom Omega table entry has the wrong arity");
            }
            keep(m, c);
        }
        return out;
    }
    }
    throw InvalidArgument("unknown Omega family");
}

} // namespace mvh::identities
