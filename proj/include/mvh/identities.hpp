#pragma once

// Exact verification of the generating relations of the E family.
//
// Every identity is expanded on both sides as a truncated formal power
// series and compared monomial by monomial over the rationals. Left-hand
// sides are built as literal (double) sums of exact term coefficients;
// right-hand sides are composed from binomial and exponential series and
// argument substitutions, so the two sides share no expansion code.
//
// Bilateral relations whose left member carries (eta / t^p)^j are checked in
// the equivalent form without negative powers: the coefficient of
// eta^j t^{n - p j} on the left against eta^j t^{n - p j} on the right.
// The summation index of Omega is called j here; k is reserved for the
// number of rho-weighted variables.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mvh/errors.hpp"
#include "mvh/exactnum.hpp"
#include "mvh/fps.hpp"
#include "mvh/hyperfam.hpp"
#include "mvh/omega.hpp"

namespace mvh::identities {

enum class IdentityId {
    T1, T2, T3, T4, T5,
    C1, R1, R2, R3,
    T6, T7, T8, T9,
    C5, C6, R13, R14,
    D3,
    REDUCE_RHO2, REDUCE_K0, REDUCE_K0R2, REDUCE_H4,
};

inline constexpr std::array<IdentityId, 22> kAllIdentities = {
    IdentityId::T1,  IdentityId::T2,  IdentityId::T3,  IdentityId::T4,          IdentityId::T5,
    IdentityId::C1,  IdentityId::R1,  IdentityId::R2,  IdentityId::R3,          IdentityId::T6,
    IdentityId::T7,  IdentityId::T8,  IdentityId::T9,  IdentityId::C5,          IdentityId::C6,
    IdentityId::R13, IdentityId::R14, IdentityId::D3,  IdentityId::REDUCE_RHO2, IdentityId::REDUCE_K0,
    IdentityId::REDUCE_K0R2, IdentityId::REDUCE_H4,
};

inline std::string_view to_string(IdentityId id)
{
    switch (id) {
    case IdentityId::T1: return "T1";
    case IdentityId::T2: return "T2";
    case IdentityId::T3: return "T3";
    case IdentityId::T4: return "T4";
    case IdentityId::T5: return "T5";
    case IdentityId::C1: return "C1";
    case IdentityId::R1: return "R1";
    case IdentityId::R2: return "R2";
    case IdentityId::R3: return "R3";
    case IdentityId::T6: return "T6";
    case IdentityId::T7: return "T7";
    case IdentityId::T8: return "T8";
    case IdentityId::T9: return "T9";
    case IdentityId::C5: return "C5";
    case IdentityId::C6: return "C6";
    case IdentityId::R13: return "R13";
    case IdentityId::R14: return "R14";
    case IdentityId::D3: return "D3";
    case IdentityId::REDUCE_RHO2: return "REDUCE_RHO2";
    case IdentityId::REDUCE_K0: return "REDUCE_K0";
    case IdentityId::REDUCE_K0R2: return "REDUCE_K0R2";
    case IdentityId::REDUCE_H4: return "REDUCE_H4";
    }
    return "?";
}

inline IdentityId parse_identity_id(std::string_view text)
{
    for (IdentityId id : kAllIdentities) {
        if (to_string(id) == text) {
            return id;
        }
    }
    throw InvalidArgument("unknown identity id '" + std::string(text) + "'");
}

inline bool is_bilateral(IdentityId id)
{
    switch (id) {
    case IdentityId::T6:
    case IdentityId::T7:
    case IdentityId::T8:
    case IdentityId::T9:
    case IdentityId::C5:
    case IdentityId::C6:
    case IdentityId::R13:
    case IdentityId::R14:
        return true;
    default:
        return false;
    }
}

inline bool is_reduction(IdentityId id)
{
    return id == IdentityId::REDUCE_RHO2 || id == IdentityId::REDUCE_K0 || id == IdentityId::REDUCE_K0R2 ||
           id == IdentityId::REDUCE_H4;
}

/// Which term formula stands in for E on both sides of a relation.
enum class TermFamily {
    e,             ///< the weighted family itself
    multi_horn,    ///< (k)H4(r), rho = 2
    horn_h4,       ///< H4, rho = 2, k = 1, r = 2
    lauricella_fa, ///< F_A(r), k = 0
    appell_f2,     ///< F2, k = 0, r = 2
};

inline std::string_view to_string(TermFamily f)
{
    switch (f) {
    case TermFamily::e: return "E";
    case TermFamily::multi_horn: return "kH4r";
    case TermFamily::horn_h4: return "H4";
    case TermFamily::lauricella_fa: return "FA";
    case TermFamily::appell_f2: return "F2";
    }
    return "?";
}

inline TermFamily parse_term_family(std::string_view text)
{
    for (TermFamily f : {TermFamily::e, TermFamily::multi_horn, TermFamily::horn_h4, TermFamily::lauricella_fa,
                         TermFamily::appell_f2}) {
        if (to_string(f) == text) {
            return f;
        }
    }
    throw InvalidArgument("unknown term family '" + std::string(text) + "'");
}

/// How to read a relation whose printed statement disagrees with the
/// derivation that accompanies it. Only T7, T8, T9, C6, R13 and R14 differ.
enum class Reading {
    consistent, ///< the statement the derivation establishes
    as_printed, ///< the statement exactly as typeset
};

struct Orders {
    unsigned t = 6;   ///< N
    unsigned x = 6;   ///< D
    unsigned y = 4;   ///< total degree in y (bilateral relations)
    unsigned aux = 3; ///< degree in eta or z (bilateral relations)

    friend bool operator==(const Orders&, const Orders&) = default;
};

/// One concrete instance of a relation.
///
/// lambda is the lambda of the generating relations; a second one, where a
/// relation has it, lives in the sequence a. For T4, T5 and T9 the first
/// gamma slot is overwritten by 1 - lambda - n, so params.gamma[0] is unused.
struct IdentitySpec {
    IdentityId id = IdentityId::T1;
    ExactParams params;
    Rational lambda{1, 2};
    Orders orders;
    TermFamily family = TermFamily::e;
    unsigned m = 0; ///< index of Psi_m
    unsigned p = 1;
    unsigned q = 1;
    CoefficientSequence a;
    OmegaFamily omega;
    Reading reading = Reading::consistent;

    friend bool operator==(const IdentitySpec&, const IdentitySpec&) = default;
};

/// A +1 shift of one parameter, applied to one side only.
struct Perturbation {
    enum class Target { lambda, alpha, beta, gamma, a_coefficient, omega_param };
    Target target = Target::lambda;
    std::size_t index = 0;
};

inline std::string to_string(const Perturbation& p)
{
    switch (p.target) {
    case Perturbation::Target::lambda: return "lambda";
    case Perturbation::Target::alpha: return "alpha";
    case Perturbation::Target::beta: return "beta:" + std::to_string(p.index);
    case Perturbation::Target::gamma: return "gamma:" + std::to_string(p.index);
    case Perturbation::Target::a_coefficient: return "a:" + std::to_string(p.index);
    case Perturbation::Target::omega_param: return "omega:" + std::to_string(p.index);
    }
    return "?";
}

inline IdentitySpec perturbed(IdentitySpec spec, const Perturbation& p)
{
    auto bump = [](auto& vec, std::size_t i, const char* what) {
        if (i >= vec.size()) {
            throw InvalidArgument(std::string("perturbation index out of range for ") + what);
        }
        vec[i] += Rational(1);
    };
    switch (p.target) {
    case Perturbation::Target::lambda:
        spec.lambda += Rational(1);
        break;
    case Perturbation::Target::alpha:
        spec.params.alpha += Rational(1);
        break;
    case Perturbation::Target::beta:
        bump(spec.params.beta, p.index, "beta");
        break;
    case Perturbation::Target::gamma:
        bump(spec.params.gamma, p.index, "gamma");
        break;
    case Perturbation::Target::a_coefficient:
        if (spec.a.kind == CoefficientSequence::Kind::table) {
            bump(spec.a.values, p.index, "a_k table");
        } else if (spec.a.kind == CoefficientSequence::Kind::pochhammer_ratio) {
            spec.a.lambda += Rational(1);
        } else {
            // Switch a_k = 1 or 1/k! to a table with entry `index` raised by one.
            std::vector<Rational> values;
            for (unsigned j = 0; j <= std::max<unsigned>(spec.orders.aux, static_cast<unsigned>(p.index)); ++j) {
                values.push_back(spec.a.at(j));
            }
            values[p.index] += Rational(1);
            spec.a = CoefficientSequence{CoefficientSequence::Kind::table, Rational(1), std::move(values)};
        }
        break;
    case Perturbation::Target::omega_param:
        switch (spec.omega.kind) {
        case OmegaFamily::Kind::erkus_srivastava:
            bump(spec.omega.alphas, p.index, "Omega alphas");
            break;
        case OmegaFamily::Kind::multi_horn_h4:
        case OmegaFamily::Kind::e_family_shifted:
            bump(spec.omega.params.gamma, p.index, "Omega gamma");
            break;
        case OmegaFamily::Kind::custom_table:
            for (auto& [index, poly] : spec.omega.table) {
                for (auto& [mono, c] : poly) {
                    c += Rational(1);
                    break;
                }
            }
            break;
        }
        break;
    }
    return spec;
}

inline std::string describe(const IdentitySpec& spec)
{
    std::string s(to_string(spec.id));
    const ExactParams& p = spec.params;
    s += " rho=" + std::to_string(p.weight.rho) + " k=" + std::to_string(p.k()) + " r=" + std::to_string(p.r());
    if (spec.family != TermFamily::e) {
        s += " family=" + std::string(to_string(spec.family));
    }
    if (!is_reduction(spec.id)) {
        s += " N=" + std::to_string(spec.orders.t);
    }
    s += " D=" + std::to_string(spec.orders.x);
    if (is_bilateral(spec.id)) {
        s += " Y=" + std::to_string(spec.orders.y) + " A=" + std::to_string(spec.orders.aux);
    }
    if (spec.reading == Reading::as_printed) {
        s += " reading=printed";
    }
    return s;
}

// ---------------------------------------------------------------------------

namespace detail {

inline TermFamily effective_family(const IdentitySpec& spec)
{
    switch (spec.id) {
    case IdentityId::C1:
    case IdentityId::D3:
    case IdentityId::REDUCE_RHO2:
        return TermFamily::multi_horn;
    case IdentityId::R1:
    case IdentityId::REDUCE_H4:
        return TermFamily::horn_h4;
    case IdentityId::R2:
    case IdentityId::REDUCE_K0:
        return TermFamily::lauricella_fa;
    case IdentityId::R3:
    case IdentityId::REDUCE_K0R2:
        return TermFamily::appell_f2;
    default:
        return spec.family;
    }
}

inline void check_family_shape(TermFamily family, const ExactParams& p)
{
    p.validate_shape();
    const auto fail = [&](const char* need) {
        throw InvalidArgument(std::string(to_string(family)) + " requires " + need);
    };
    switch (family) {
    case TermFamily::e:
        return;
    case TermFamily::multi_horn:
        if (p.weight.rho != 2) {
            fail("rho = 2");
        }
        return;
    case TermFamily::horn_h4:
        if (p.weight.rho != 2 || p.k() != 1 || p.r() != 2) {
            fail("rho = 2, k = 1, r = 2");
        }
        return;
    case TermFamily::lauricella_fa:
        if (p.k() != 0) {
            fail("k = 0");
        }
        return;
    case TermFamily::appell_f2:
        if (p.k() != 0 || p.r() != 2) {
            fail("k = 0, r = 2");
        }
        return;
    }
}

inline Rational family_coefficient(TermFamily family, const ExactParams& p, const MultiIndex& m)
{
    switch (family) {
    case TermFamily::e:
        return e_term_coefficient(p, m);
    case TermFamily::multi_horn:
        return classical::kh4r_coefficient(p.alpha, p.beta, p.gamma, p.k(), m);
    case TermFamily::horn_h4:
        return classical::h4_coefficient(p.alpha, p.beta[0], p.gamma[0], p.gamma[1], m[0], m[1]);
    case TermFamily::lauricella_fa:
        return classical::fa_coefficient(p.alpha, p.beta, p.gamma, m);
    case TermFamily::appell_f2:
        return classical::f2_coefficient(p.alpha, p.beta[0], p.beta[1], p.gamma[0], p.gamma[1], m[0], m[1]);
    }
    throw InvalidArgument("unknown term family");
}

inline ExactParams with_alpha(ExactParams p, const Rational& alpha)
{
    p.alpha = alpha;
    return p;
}

inline ExactParams with_first_gamma(ExactParams p, const Rational& gamma1)
{
    p.gamma.at(0) = gamma1;
    return p;
}

/// 1 - lambda - n
inline Rational shifted_gamma(const Rational& lambda, unsigned n) { return Rational(1) - lambda - Rational(n); }

/// Exponent vector builder over the groups t, x and optionally y and aux.
struct Slots {
    const fps::Layout& layout;
    bool bilateral = false;

    [[nodiscard]] fps::Exponents make(unsigned n, const MultiIndex& m) const
    {
        fps::Exponents e = layout.zero();
        e[layout.var(0)] = n;
        layout.place(e, 1, m);
        return e;
    }

    [[nodiscard]] fps::Exponents make(unsigned n, const MultiIndex& m, const MultiIndex& y, unsigned aux) const
    {
        fps::Exponents e = make(n, m);
        layout.place(e, 2, y);
        e[layout.var(3)] = aux;
        return e;
    }
};

/// x_i / (1-t)^rho for i < k, x_i / (1-t) otherwise.
inline std::vector<fps::ArgumentMap> first_kind_maps(const WeightSpec& w)
{
    std::vector<fps::ArgumentMap> maps;
    for (std::size_t i = 0; i < w.r; ++i) {
        maps.push_back(i < w.k ? fps::argument_map(fps::SubstitutionStyle::rho_pow, w.rho)
                               : fps::argument_map(fps::SubstitutionStyle::plain));
    }
    return maps;
}

/// x_i (-t)^rho / (1-t)^rho for i < k, -x_i t / (1-t) otherwise.
inline std::vector<fps::ArgumentMap> terminating_kind_maps(const WeightSpec& w)
{
    std::vector<fps::ArgumentMap> maps;
    for (std::size_t i = 0; i < w.r; ++i) {
        maps.push_back(i < w.k ? fps::argument_map(fps::SubstitutionStyle::neg_t_rho, w.rho)
                               : fps::argument_map(fps::SubstitutionStyle::neg_t));
    }
    return maps;
}

/// x_1 (1-t), x_2, ..., x_r
inline std::vector<fps::ArgumentMap> shifted_first_maps(std::size_t r)
{
    std::vector<fps::ArgumentMap> maps(r, fps::argument_map(fps::SubstitutionStyle::unchanged));
    maps.at(0) = fps::argument_map(fps::SubstitutionStyle::shifted);
    return maps;
}

inline fps::TermSource family_source(TermFamily family, const ExactParams& p)
{
    return [family, p](const MultiIndex& m) { return family_coefficient(family, p, m); };
}

inline fps::Layout layout_for(const IdentitySpec& spec)
{
    const std::size_t r = spec.params.r();
    const Orders& o = spec.orders;
    if (is_reduction(spec.id)) {
        return fps::Layout::tx(r, 0, o.x);
    }
    if (!is_bilateral(spec.id)) {
        return fps::Layout::tx(r, o.t, o.x);
    }
    const char* aux_name = spec.id == IdentityId::T9 ? "z" : "eta";
    return fps::Layout({fps::VarGroup{"t", 1, o.t}, fps::VarGroup{"x", r, o.x},
                        fps::VarGroup{"y", spec.omega.arity(), o.y}, fps::VarGroup{aux_name, 1, o.aux}});
}

/// Omega_{index(j)}(y) for j = 0..aux order; T9 steps the index by p.
inline std::vector<YPolynomial> omega_table(const IdentitySpec& spec)
{
    std::vector<YPolynomial> out;
    for (unsigned j = 0; j <= spec.orders.aux; ++j) {
        const long index = spec.id == IdentityId::T9 ? static_cast<long>(spec.omega.mu) + static_cast<long>(spec.p) * j
                                                     : spec.omega.index(j);
        out.push_back(omega_coefficients(spec.omega, index, spec.orders.y));
    }
    return out;
}

/// Adds scale * F(params, m) t^n x^m for every |m| <= D.
inline void add_x_expansion(fps::FormalSeries& s, const Slots& slots, TermFamily family, const ExactParams& params,
                            unsigned n, const Rational& scale)
{
    if (scale.is_zero()) {
        return;
    }
    const unsigned d_max = s.layout().group(1).max_degree;
    for (unsigned d = 0; d <= d_max; ++d) {
        for_each_multi_index_of_degree(params.r(), d, [&](const MultiIndex& m) {
            const Rational c = family_coefficient(family, params, m);
            if (!c.is_zero()) {
                s.accumulate(slots.make(n, m), scale * c);
            }
        });
    }
}

/// Adds scale * F(params, m) * omega(y) t^n x^m y^e aux^j.
inline void add_bilateral_expansion(fps::FormalSeries& s, const Slots& slots, TermFamily family,
                                    const ExactParams& params, const YPolynomial& omega, unsigned n, unsigned j,
                                    const Rational& scale)
{
    if (scale.is_zero() || omega.empty()) {
        return;
    }
    const unsigned d_max = s.layout().group(1).max_degree;
    for (unsigned d = 0; d <= d_max; ++d) {
        for_each_multi_index_of_degree(params.r(), d, [&](const MultiIndex& m) {
            const Rational c = family_coefficient(family, params, m);
            if (c.is_zero()) {
                return;
            }
            const Rational sc = scale * c;
            for (const auto& [e, w] : omega) {
                s.accumulate(slots.make(n, m, e, j), sc * w);
            }
        });
    }
}

// --- right-hand-side factors, composed from fps operations -----------------

/// (1-t)^{-lambda} F(lambda; substituted x) with the given argument maps.
inline fps::FormalSeries binomial_times_substituted(const fps::Layout& lay, const Rational& lambda, TermFamily family,
                                                    const ExactParams& params, std::span<const fps::ArgumentMap> maps)
{
    const fps::FormalSeries base = fps::binomial_series(lay, lay.var(0), lambda);
    const fps::FormalSeries sub = fps::fs_substitute_scaled_arg(family_source(family, params), maps, lay, 1, lay.var(0));
    return base * sub;
}

/// e^t prod_{i<k} 0F1(-; gamma_i; x_i (-t)^rho) prod_{i>=k} Phi(beta_i; gamma_i; -x_i t)
inline fps::FormalSeries exponential_product(const fps::Layout& lay, const ExactParams& params)
{
    const std::size_t r = params.r();
    fps::FormalSeries acc = fps::exp_series(lay, lay.var(0));
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<Rational> num;
        const std::vector<Rational> den{params.gamma[i]};
        std::vector<fps::ArgumentMap> maps(r, fps::argument_map(fps::SubstitutionStyle::unchanged));
        if (i < params.k()) {
            const unsigned rho = params.weight.rho;
            maps[i] = fps::ArgumentMap{rho % 2 == 0 ? 1 : -1, rho, 0};
        } else {
            num.push_back(params.beta_of(i));
            maps[i] = fps::ArgumentMap{-1, 1, 0};
        }
        auto source = [&, i](const MultiIndex& m) {
            for (std::size_t v = 0; v < m.size(); ++v) {
                if (v != i && m[v] != 0) {
                    return Rational(0);
                }
            }
            return pfq_coefficient(num, den, m[i]);
        };
        acc = acc * fps::fs_substitute_scaled_arg(source, maps, lay, 1, lay.var(0));
    }
    return acc;
}

/// Lambda(y; eta) = sum_j a_j Omega_j(y) eta^j from its defining sum.
inline fps::FormalSeries lambda_by_definition(const fps::Layout& lay, const IdentitySpec& spec)
{
    fps::FormalSeries out(lay);
    const auto omegas = omega_table(spec);
    const MultiIndex x0(spec.params.r());
    const Slots slots{lay, true};
    for (unsigned j = 0; j < omegas.size(); ++j) {
        const Rational aj = spec.a.at(j);
        for (const auto& [e, w] : omegas[j]) {
            out.accumulate(slots.make(0, x0, e, j), aj * w);
        }
    }
    return out;
}

/// prod_j (1 - y_j eta^{m_j})^{-alpha_j}
inline fps::FormalSeries erkus_srivastava_product(const fps::Layout& lay, const OmegaFamily& omega)
{
    const std::size_t s = omega.arity();
    const std::size_t eta = lay.var(3);
    fps::FormalSeries acc = fps::FormalSeries::constant(lay, Rational(1));
    for (std::size_t j = 0; j < s; ++j) {
        std::vector<fps::ArgumentMap> maps(s);
        maps[j] = fps::ArgumentMap{1, omega.powers[j], 0};
        const Rational alpha = omega.alphas[j];
        auto source = [&, j](const MultiIndex& m) {
            for (std::size_t v = 0; v < m.size(); ++v) {
                if (v != j && m[v] != 0) {
                    return Rational(0);
                }
            }
            return pochhammer_int(alpha, m[j]) / factorial(m[j]);
        };
        acc = acc * fps::fs_substitute_scaled_arg(source, maps, lay, 2, eta);
    }
    return acc;
}

/// (1-eta)^{-lambda_2} (k)H4(r)(lambda_2; y_i eta^2/(1-eta)^2, -y_j eta/(1-eta))
inline fps::FormalSeries horn_generating_closed_form(const fps::Layout& lay, const IdentitySpec& spec)
{
    const ExactParams& hp = spec.omega.params;
    const std::size_t eta = lay.var(3);
    std::vector<fps::ArgumentMap> maps;
    for (std::size_t i = 0; i < hp.r(); ++i) {
        maps.push_back(i < hp.k() ? fps::ArgumentMap{1, 2, 2} : fps::argument_map(fps::SubstitutionStyle::neg_t));
    }
    const ExactParams at_lambda = with_alpha(hp, spec.a.lambda);
    auto source = [&](const MultiIndex& m) {
        return classical::kh4r_coefficient(at_lambda.alpha, at_lambda.beta, at_lambda.gamma, at_lambda.k(), m);
    };
    return fps::binomial_series(lay, eta, spec.a.lambda) * fps::fs_substitute_scaled_arg(source, maps, lay, 2, eta);
}

inline void require(bool cond, const std::string& what)
{
    if (!cond) {
        throw InvalidArgument(what);
    }
}

inline void check_spec(const IdentitySpec& spec)
{
    const TermFamily family = effective_family(spec);
    check_family_shape(family, spec.params);
    const Orders& o = spec.orders;
    require(o.x >= 1 && (is_reduction(spec.id) || o.t >= 1), "identity orders must be positive");
    if (is_reduction(spec.id)) {
        return;
    }
    switch (spec.id) {
    case IdentityId::T4:
    case IdentityId::T5:
    case IdentityId::T9:
        require(!spec.lambda.is_integer(), "T4/T5/T9 need a non-integer lambda so that 1-lambda-n is never a pole");
        break;
    default:
        break;
    }
    if (!is_bilateral(spec.id)) {
        return;
    }
    require(spec.p >= 1, "p must be a positive integer");
    require(spec.q >= 1, "q must be a positive integer");
    switch (spec.id) {
    case IdentityId::C5:
    case IdentityId::R13:
        require(spec.omega.kind == OmegaFamily::Kind::erkus_srivastava, "C5/R13 use the Erkus-Srivastava Omega");
        break;
    case IdentityId::C6:
    case IdentityId::R14:
        require(spec.omega.kind == OmegaFamily::Kind::multi_horn_h4, "C6/R14 use the multivariable Horn Omega");
        spec.omega.params.validate_shape();
        break;
    default:
        break;
    }
    if (spec.id == IdentityId::R13 || spec.id == IdentityId::R14) {
        require(spec.omega.mu == 0 && spec.omega.psi == 1, "R13/R14 fix mu = 0 and psi = 1");
    }
    if (spec.id == IdentityId::R14) {
        require(spec.a.kind == CoefficientSequence::Kind::pochhammer_ratio, "R14 fixes a_k = (lambda_2)_k / k!");
    }
}

/// The a_k actually used by R13: 1 as printed, 1/k! in the consistent reading.
inline IdentitySpec normalise(IdentitySpec spec)
{
    if (spec.id == IdentityId::R13) {
        spec.a.kind = spec.reading == Reading::as_printed ? CoefficientSequence::Kind::one
                                                          : CoefficientSequence::Kind::inverse_factorial;
    }
    return spec;
}

/// Terminating numerator parameter of the Theta sums of T7/T8/C6/R14 at
/// outer index n and Omega index j: -n - p j as printed, -(n - p j) otherwise.
inline Rational theta_alpha(const IdentitySpec& spec, unsigned n, unsigned j)
{
    const long pj = static_cast<long>(spec.p) * j;
    const long value = spec.reading == Reading::as_printed ? -static_cast<long>(n) - pj : -(static_cast<long>(n) - pj);
    return Rational(value);
}

} // namespace detail

// ---------------------------------------------------------------------------

/// Left member as a literal sum of exact coefficients.
inline fps::FormalSeries lhs_series(const IdentitySpec& raw)
{
    const IdentitySpec spec = detail::normalise(raw);
    detail::check_spec(spec);
    const fps::Layout lay = detail::layout_for(spec);
    const detail::Slots slots{lay, is_bilateral(spec.id)};
    const TermFamily family = detail::effective_family(spec);
    const ExactParams& params = spec.params;
    const Orders& o = spec.orders;
    fps::FormalSeries s(lay);

    switch (spec.id) {
    case IdentityId::T1:
    case IdentityId::C1:
    case IdentityId::R1:
    case IdentityId::R2:
    case IdentityId::R3:
        // sum_n (lambda)_n / n! F(lambda + n; x) t^n
        for (unsigned n = 0; n <= o.t; ++n) {
            detail::add_x_expansion(s, slots, family, detail::with_alpha(params, spec.lambda + Rational(n)), n,
                                    pochhammer_int(spec.lambda, n) / factorial(n));
        }
        return s;
    case IdentityId::T2:
    case IdentityId::D3:
        // sum_n (lambda)_n / n! F(-n; x) t^n
        for (unsigned n = 0; n <= o.t; ++n) {
            detail::add_x_expansion(s, slots, family, detail::with_alpha(params, -Rational(n)), n,
                                    pochhammer_int(spec.lambda, n) / factorial(n));
        }
        return s;
    case IdentityId::T3:
        // sum_n F(-n; x) t^n / n!
        for (unsigned n = 0; n <= o.t; ++n) {
            detail::add_x_expansion(s, slots, family, detail::with_alpha(params, -Rational(n)), n,
                                    Rational(1) / factorial(n));
        }
        return s;
    case IdentityId::T4:
        // sum_n (lambda)_n / n! F(alpha; 1 - lambda - n, gamma_2..; x) t^n
        for (unsigned n = 0; n <= o.t; ++n) {
            detail::add_x_expansion(s, slots, family,
                                    detail::with_first_gamma(params, detail::shifted_gamma(spec.lambda, n)), n,
                                    pochhammer_int(spec.lambda, n) / factorial(n));
        }
        return s;
    case IdentityId::T5:
        // sum_n C(lambda + m + n - 1, n) Psi_{m+n}(x) t^n
        for (unsigned n = 0; n <= o.t; ++n) {
            detail::add_x_expansion(s, slots, family,
                                    detail::with_first_gamma(params, detail::shifted_gamma(spec.lambda, spec.m + n)),
                                    n, generalized_binomial(spec.lambda, spec.m, n));
        }
        return s;
    case IdentityId::REDUCE_RHO2:
    case IdentityId::REDUCE_K0:
    case IdentityId::REDUCE_K0R2:
    case IdentityId::REDUCE_H4:
        detail::add_x_expansion(s, slots, TermFamily::e, params, 0, Rational(1));
        return s;
    case IdentityId::T6:
    case IdentityId::C5:
    case IdentityId::R13:
    case IdentityId::T7:
    case IdentityId::C6:
    case IdentityId::R14:
    case IdentityId::T8: {
        // sum_n sum_{j <= n/p} a_j [..] Omega_j(y) eta^j t^{n - p j} / (n - p j)!
        const auto omegas = detail::omega_table(spec);
        const bool first_kind = spec.id == IdentityId::T6 || spec.id == IdentityId::C5 || spec.id == IdentityId::R13;
        const bool with_lambda = spec.id != IdentityId::T8;
        const unsigned n_max = o.t + spec.p * o.aux;
        for (unsigned n = 0; n <= n_max; ++n) {
            for (unsigned j = 0; j <= std::min(n / spec.p, o.aux); ++j) {
                const unsigned rest = n - spec.p * j;
                if (rest > o.t) {
                    continue;
                }
                Rational scale = spec.a.at(j) / factorial(rest);
                if (with_lambda) {
                    scale *= pochhammer_int(spec.lambda, rest);
                }
                const Rational alpha = first_kind ? spec.lambda + Rational(rest) : detail::theta_alpha(spec, n, j);
                detail::add_bilateral_expansion(s, slots, family, detail::with_alpha(params, alpha), omegas[j], rest, j,
                                                scale);
            }
        }
        return s;
    }
    case IdentityId::T9: {
        // sum_n C(lambda+m+n-1, .) Psi_{m+n}(x) sum_{j <= n/q} a_j Omega_{mu + p j}(y) z^j t^n
        const auto omegas = detail::omega_table(spec);
        for (unsigned n = 0; n <= o.t; ++n) {
            const ExactParams psi = detail::with_first_gamma(params, detail::shifted_gamma(spec.lambda, spec.m + n));
            for (unsigned j = 0; j <= std::min(n / spec.q, o.aux); ++j) {
                const Rational binom = spec.reading == Reading::as_printed
                                           ? generalized_binomial(spec.lambda, spec.m, n)
                                           : generalized_binomial(spec.lambda, spec.m + spec.q * j, n - spec.q * j);
                detail::add_bilateral_expansion(s, slots, family, psi, omegas[j], n, j, binom * spec.a.at(j));
            }
        }
        return s;
    }
    }
    throw InvalidArgument("unhandled identity");
}

/// Right member composed from binomial/exponential series and substitutions.
inline fps::FormalSeries rhs_series(const IdentitySpec& raw)
{
    const IdentitySpec spec = detail::normalise(raw);
    detail::check_spec(spec);
    const fps::Layout lay = detail::layout_for(spec);
    const TermFamily family = detail::effective_family(spec);
    const ExactParams& params = spec.params;
    const std::size_t r = params.r();

    auto first_kind = [&] {
        return detail::binomial_times_substituted(lay, spec.lambda, family, detail::with_alpha(params, spec.lambda),
                                                  detail::first_kind_maps(params.weight));
    };
    auto terminating_kind = [&] {
        return detail::binomial_times_substituted(lay, spec.lambda, family, detail::with_alpha(params, spec.lambda),
                                                  detail::terminating_kind_maps(params.weight));
    };

    switch (spec.id) {
    case IdentityId::T1:
    case IdentityId::C1:
    case IdentityId::R1:
    case IdentityId::R2:
    case IdentityId::R3:
        return first_kind();
    case IdentityId::T2:
        return terminating_kind();
    case IdentityId::D3: {
        // x_i t^2 / (1-t)^2 for i < k, -x_i t / (1-t) otherwise
        std::vector<fps::ArgumentMap> maps;
        for (std::size_t i = 0; i < r; ++i) {
            maps.push_back(i < params.k() ? fps::ArgumentMap{1, 2, 2} : fps::argument_map(fps::SubstitutionStyle::neg_t));
        }
        return detail::binomial_times_substituted(lay, spec.lambda, family, detail::with_alpha(params, spec.lambda),
                                                  maps);
    }
    case IdentityId::T3:
        return detail::exponential_product(lay, params);
    case IdentityId::T4:
        return detail::binomial_times_substituted(lay, spec.lambda, family,
                                                  detail::with_first_gamma(params, Rational(1) - spec.lambda),
                                                  detail::shifted_first_maps(r));
    case IdentityId::T5:
        return detail::binomial_times_substituted(lay, spec.lambda + Rational(spec.m), family,
                                                  detail::with_first_gamma(params, detail::shifted_gamma(spec.lambda, spec.m)),
                                                  detail::shifted_first_maps(r));
    case IdentityId::REDUCE_RHO2:
    case IdentityId::REDUCE_K0:
    case IdentityId::REDUCE_K0R2:
    case IdentityId::REDUCE_H4: {
        fps::FormalSeries s(lay);
        const detail::Slots slots{lay, false};
        detail::add_x_expansion(s, slots, family, params, 0, Rational(1));
        return s;
    }
    case IdentityId::T6:
    case IdentityId::C5:
        return detail::lambda_by_definition(lay, spec) * first_kind();
    case IdentityId::R13:
        return detail::erkus_srivastava_product(lay, spec.omega) * first_kind();
    case IdentityId::T7:
    case IdentityId::C6:
        return detail::lambda_by_definition(lay, spec) * terminating_kind();
    case IdentityId::R14:
        return detail::horn_generating_closed_form(lay, spec) * terminating_kind();
    case IdentityId::T8:
        return detail::lambda_by_definition(lay, spec) * detail::exponential_product(lay, params);
    case IdentityId::T9: {
        // (1-t)^{-lambda-m} sum_j a_j Psi_{m+qj}(x_1(1-t), x_2, ..) Omega_{mu+pj}(y) (z t^q / (1-t)^q)^j
        const auto omegas = detail::omega_table(spec);
        const detail::Slots slots{lay, true};
        const auto shift_maps = detail::shifted_first_maps(r);
        const MultiIndex x0(r);
        fps::FormalSeries lambda_part(lay);
        for (unsigned j = 0; j < omegas.size(); ++j) {
            const unsigned qj = spec.q * j;
            if (qj > spec.orders.t) {
                break;
            }
            fps::FormalSeries omega_part(lay);
            for (const auto& [e, w] : omegas[j]) {
                omega_part.accumulate(slots.make(qj, x0, e, j), spec.a.at(j) * w);
            }
            const ExactParams psi =
                detail::with_first_gamma(params, detail::shifted_gamma(spec.lambda, spec.m + qj));
            const fps::FormalSeries psi_part =
                fps::fs_substitute_scaled_arg(detail::family_source(family, psi), shift_maps, lay, 1, lay.var(0));
            lambda_part += psi_part * omega_part * fps::binomial_series(lay, lay.var(0), Rational(qj));
        }
        return fps::binomial_series(lay, lay.var(0), spec.lambda + Rational(spec.m)) * lambda_part;
    }
    }
    throw InvalidArgument("unhandled identity");
}

// ---------------------------------------------------------------------------

enum class Mode { exact, floating };

struct Mismatch {
    fps::Exponents monomial;
    Rational lhs;
    Rational rhs;
};

struct VerificationReport {
    IdentityId id = IdentityId::T1;
    std::string label;
    Mode mode = Mode::exact;
    std::uint64_t checked_monomials = 0;
    Rational max_discrepancy{0};      ///< exact mode
    double max_discrepancy_real = 0;  ///< float mode (relative)
    double tolerance = 0;             ///< float mode
    std::chrono::nanoseconds elapsed{0};
    bool pass = false;
    std::uint64_t mismatch_count = 0;
    std::vector<Mismatch> mismatches; ///< first few, in canonical order
    fps::Layout layout;

    /// e.g. "t^2 x^(1,0)" for the first failing monomial, empty on pass.
    [[nodiscard]] std::string first_failure() const
    {
        if (mismatches.empty()) {
            return {};
        }
        return format_monomial(layout, mismatches.front().monomial);
    }

    static std::string format_monomial(const fps::Layout& lay, const fps::Exponents& e)
    {
        std::string s;
        for (std::size_t g = 0; g < lay.groups().size(); ++g) {
            const auto& grp = lay.group(g);
            if (grp.arity == 0) {
                continue;
            }
            s += s.empty() ? "" : " ";
            s += grp.name + "^";
            if (grp.arity == 1) {
                s += std::to_string(e[lay.var(g)]);
            } else {
                s += "(";
                for (std::size_t i = 0; i < grp.arity; ++i) {
                    s += (i ? "," : "") + std::to_string(e[lay.var(g, i)]);
                }
                s += ")";
            }
        }
        return s;
    }

    /// Equal outcomes: pass, monomial count and discrepancy (timing ignored).
    [[nodiscard]] bool same_outcome(const VerificationReport& o) const
    {
        return pass == o.pass && checked_monomials == o.checked_monomials && max_discrepancy == o.max_discrepancy &&
               mismatch_count == o.mismatch_count;
    }
};

/// Monomial-by-monomial exact comparison of two series over the same layout.
inline VerificationReport compare_series(const fps::FormalSeries& lhs, const fps::FormalSeries& rhs,
                                         std::size_t keep = 8)
{
    if (!(lhs.layout() == rhs.layout())) {
        throw DimensionMismatch("cannot compare series over different layouts");
    }
    VerificationReport rep;
    rep.layout = lhs.layout();
    rep.checked_monomials = lhs.layout().monomial_count();
    std::vector<Mismatch> all;
    auto a = lhs.terms().begin();
    auto b = rhs.terms().begin();
    const auto a_end = lhs.terms().end();
    const auto b_end = rhs.terms().end();
    auto record = [&](const fps::Exponents& e, const Rational& l, const Rational& r) {
        if (l == r) {
            return;
        }
        const Rational diff = abs(l - r);
        if (diff > rep.max_discrepancy) {
            rep.max_discrepancy = diff;
        }
        all.push_back({e, l, r});
    };
    while (a != a_end || b != b_end) {
        if (b == b_end || (a != a_end && a->first < b->first)) {
            record(a->first, a->second, Rational(0));
            ++a;
        } else if (a == a_end || b->first < a->first) {
            record(b->first, Rational(0), b->second);
            ++b;
        } else {
            record(a->first, a->second, b->second);
            ++a;
            ++b;
        }
    }
    rep.mismatch_count = all.size();
    std::sort(all.begin(), all.end(),
              [&](const Mismatch& x, const Mismatch& y) { return rep.layout.canonical_less(x.monomial, y.monomial); });
    if (all.size() > keep) {
        all.resize(keep);
    }
    rep.mismatches = std::move(all);
    rep.pass = rep.mismatch_count == 0;
    return rep;
}

/// Exact verification; an optional perturbation is applied to the right member only.
inline VerificationReport verify(const IdentitySpec& spec, const std::optional<Perturbation>& rhs_perturbation = {})
{
    const auto start = std::chrono::steady_clock::now();
    const fps::FormalSeries lhs = lhs_series(spec);
    const fps::FormalSeries rhs = rhs_series(rhs_perturbation ? perturbed(spec, *rhs_perturbation) : spec);
    VerificationReport rep = compare_series(lhs, rhs);
    rep.id = spec.id;
    rep.label = describe(spec);
    if (rhs_perturbation) {
        rep.label += " mutate=" + to_string(*rhs_perturbation);
    }
    rep.elapsed = std::chrono::steady_clock::now() - start;
    return rep;
}

/// verify() restricted to the bilateral relations T6-T9, C5, C6, R13, R14.
inline VerificationReport verify_bilateral(const IdentitySpec& spec,
                                           const std::optional<Perturbation>& rhs_perturbation = {})
{
    if (!is_bilateral(spec.id)) {
        throw InvalidArgument(std::string(to_string(spec.id)) + " is not a bilateral relation");
    }
    return verify(spec, rhs_perturbation);
}

// ---------------------------------------------------------------------------
// Floating spot checks of the single-series relations at a numeric point.

namespace detail {

inline double sum_float_series(const std::function<double(unsigned)>& term)
{
    long double sum = 0;
    unsigned quiet = 0;
    for (unsigned n = 0; n < 2000; ++n) {
        const long double v = term(n);
        sum += v;
        quiet = std::abs(v) <= 1e-19L * std::max<long double>(1, std::abs(sum)) ? quiet + 1 : 0;
        if (quiet >= 4 && n >= 8) {
            break;
        }
    }
    return static_cast<double>(sum);
}

} // namespace detail

/// Evaluates both members of T1-T5 (or C1, R1-R3, D3) with eval_E at real x
/// and t, and compares them to a relative tolerance.
inline VerificationReport verify_float(const IdentitySpec& spec, std::span<const double> x, double t,
                                       double tolerance = 1e-9)
{
    const auto start = std::chrono::steady_clock::now();
    detail::check_spec(spec);
    const RealParams p = to_real(spec.params);
    const std::size_t r = p.r();
    if (x.size() != r) {
        throw DimensionMismatch("float verification point has the wrong length");
    }
    const double lambda = spec.lambda.to_double();
    const Truncation trunc{400, 1e-19, 50'000'000};
    auto E = [&](double alpha, double gamma1, std::vector<double> args) {
        RealParams q = p;
        q.alpha = alpha;
        if (!std::isnan(gamma1)) {
            q.gamma[0] = gamma1;
        }
        return eval_E(q, EvalPoint<double>{std::move(args)}, trunc).value;
    };
    const double nan = std::nan("");
    auto scaled = [&](auto f) {
        std::vector<double> out(r);
        for (std::size_t i = 0; i < r; ++i) {
            out[i] = f(i);
        }
        return out;
    };
    const std::vector<double> xs(x.begin(), x.end());
    const double rho = p.weight.rho;
    const std::size_t k = p.k();
    double lhs = 0;
    double rhs = 0;
    auto ratio_term = [&](double base, unsigned n) {
        // (base)_n / n!
        long double c = 1;
        for (unsigned j = 0; j < n; ++j) {
            c *= (base + j) / (j + 1.0L);
        }
        return static_cast<double>(c);
    };
    switch (spec.id) {
    case IdentityId::T1:
    case IdentityId::C1:
    case IdentityId::R1:
    case IdentityId::R2:
    case IdentityId::R3:
        lhs = detail::sum_float_series(
            [&](unsigned n) { return ratio_term(lambda, n) * E(lambda + n, nan, xs) * std::pow(t, n); });
        rhs = std::pow(1 - t, -lambda) * E(lambda, nan, scaled([&](std::size_t i) {
                  return xs[i] / std::pow(1 - t, i < k ? rho : 1.0);
              }));
        break;
    case IdentityId::T2:
    case IdentityId::D3:
        lhs = detail::sum_float_series(
            [&](unsigned n) { return ratio_term(lambda, n) * E(-static_cast<double>(n), nan, xs) * std::pow(t, n); });
        rhs = std::pow(1 - t, -lambda) * E(lambda, nan, scaled([&](std::size_t i) {
                  return i < k ? xs[i] * std::pow(-t, rho) / std::pow(1 - t, rho) : -xs[i] * t / (1 - t);
              }));
        break;
    case IdentityId::T3: {
        lhs = detail::sum_float_series(
            [&](unsigned n) { return E(-static_cast<double>(n), nan, xs) * std::pow(t, n) / std::tgamma(n + 1.0); });
        rhs = std::exp(t);
        for (std::size_t i = 0; i < r; ++i) {
            if (i < k) {
                rhs *= eval_0F1(p.gamma[i], xs[i] * std::pow(-t, rho), trunc).value;
            } else {
                rhs *= eval_Phi(p.beta_of(i), p.gamma[i], -xs[i] * t, trunc).value;
            }
        }
        break;
    }
    case IdentityId::T4:
        lhs = detail::sum_float_series(
            [&](unsigned n) { return ratio_term(lambda, n) * E(p.alpha, 1 - lambda - n, xs) * std::pow(t, n); });
        rhs = std::pow(1 - t, -lambda) *
              E(p.alpha, 1 - lambda, scaled([&](std::size_t i) { return i == 0 ? xs[i] * (1 - t) : xs[i]; }));
        break;
    case IdentityId::T5: {
        const double m = spec.m;
        lhs = detail::sum_float_series([&](unsigned n) {
            return ratio_term(lambda + m, n) * E(p.alpha, 1 - lambda - m - n, xs) * std::pow(t, n);
        });
        rhs = std::pow(1 - t, -lambda - m) *
              E(p.alpha, 1 - lambda - m, scaled([&](std::size_t i) { return i == 0 ? xs[i] * (1 - t) : xs[i]; }));
        break;
    }
    default:
        throw InvalidArgument(std::string(to_string(spec.id)) + " has no floating spot check");
    }
    VerificationReport rep;
    rep.id = spec.id;
    rep.label = describe(spec) + " (float)";
    rep.mode = Mode::floating;
    rep.checked_monomials = 1;
    rep.tolerance = tolerance;
    rep.max_discrepancy_real = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
    rep.pass = rep.max_discrepancy_real <= tolerance;
    rep.elapsed = std::chrono::steady_clock::now() - start;
    return rep;
}

// ---------------------------------------------------------------------------
// Random parameter draws.

struct Shape {
    std::uint32_t rho = 2;
    std::size_t k = 1;
    std::size_t r = 2;
};

/// The shape an identity is pinned to, if any (C1: rho = 2, R1: H4, ...).
inline Shape constrain_shape(IdentityId id, Shape s)
{
    switch (id) {
    case IdentityId::C1:
    case IdentityId::D3:
    case IdentityId::REDUCE_RHO2:
        s.rho = 2;
        break;
    case IdentityId::R1:
    case IdentityId::REDUCE_H4:
        s = Shape{2, 1, 2};
        break;
    case IdentityId::R2:
    case IdentityId::REDUCE_K0:
        s.rho = 2;
        s.k = 0;
        break;
    case IdentityId::R3:
    case IdentityId::REDUCE_K0R2:
        s = Shape{2, 0, 2};
        break;
    default:
        break;
    }
    return s;
}

/// Deterministic draws from a fixed pool of small rationals. Only the raw
/// mt19937_64 stream is used, which the standard fixes bit for bit.
class ParameterDraw {
public:
    explicit ParameterDraw(std::uint64_t seed) : rng_(seed) {}

    /// {±1/2, ±1/3, 1, 3/2, 2, 5/2}: no zeros, no nonpositive integers.
    Rational value() { return pick(pool()); }

    /// Non-integer members of the pool.
    Rational non_integer() { return pick(non_integer_pool()); }

    unsigned integer(unsigned lo, unsigned hi) { return lo + static_cast<unsigned>(rng_() % (hi - lo + 1)); }

    std::vector<Rational> values(std::size_t n)
    {
        std::vector<Rational> out;
        for (std::size_t i = 0; i < n; ++i) {
            out.push_back(value());
        }
        return out;
    }

    static const std::vector<Rational>& pool()
    {
        static const std::vector<Rational> p{Rational(1, 2), Rational(-1, 2), Rational(1, 3), Rational(-1, 3),
                                             Rational(1),    Rational(3, 2),  Rational(2),    Rational(5, 2)};
        return p;
    }

    static const std::vector<Rational>& non_integer_pool()
    {
        static const std::vector<Rational> p{Rational(1, 2),  Rational(-1, 2), Rational(1, 3),
                                             Rational(-1, 3), Rational(3, 2),  Rational(5, 2)};
        return p;
    }

private:
    Rational pick(const std::vector<Rational>& from) { return from[rng_() % from.size()]; }

    std::mt19937_64 rng_;
};

/// Default truncation orders: N = D = 6 for single-series relations,
/// N = D = 5 with y-degree 4 and auxiliary degree 3 for bilateral ones.
inline Orders default_orders(IdentityId id)
{
    return is_bilateral(id) ? Orders{5, 5, 4, 3} : Orders{6, 6, 4, 3};
}

/// A random instance of `id` with the given shape (pinned shapes win).
inline IdentitySpec draw_spec(IdentityId id, Shape shape, const Orders& orders, std::uint64_t seed)
{
    shape = constrain_shape(id, shape);
    if (shape.r == 0 || shape.k > shape.r) {
        throw InvalidArgument("draw shape needs 0 <= k <= r and r >= 1");
    }
    ParameterDraw draw(seed);
    IdentitySpec spec;
    spec.id = id;
    spec.orders = orders;
    spec.params.alpha = draw.value();
    spec.params.beta = draw.values(shape.r - shape.k);
    spec.params.gamma = draw.values(shape.r);
    spec.params.weight = WeightSpec{shape.rho, shape.k, shape.r};
    spec.lambda = draw.non_integer();

    switch (id) {
    case IdentityId::T5:
        spec.m = draw.integer(0, 2);
        break;
    case IdentityId::T6:
        spec.p = draw.integer(1, 2);
        spec.omega.kind = OmegaFamily::Kind::erkus_srivastava;
        spec.omega.alphas = draw.values(2);
        spec.omega.powers = {draw.integer(1, 2), draw.integer(1, 2)};
        break;
    case IdentityId::C5:
    case IdentityId::R13:
        spec.p = draw.integer(1, 2);
        spec.omega.kind = OmegaFamily::Kind::erkus_srivastava;
        spec.omega.alphas = draw.values(shape.r);
        for (std::size_t i = 0; i < shape.r; ++i) {
            spec.omega.powers.push_back(draw.integer(1, 2));
        }
        if (id == IdentityId::C5) {
            spec.omega.mu = draw.integer(0, 2);
            spec.omega.psi = draw.integer(1, 2);
            spec.a = CoefficientSequence{CoefficientSequence::Kind::pochhammer_ratio, draw.value(), {}};
        }
        break;
    case IdentityId::T7:
    case IdentityId::C6:
    case IdentityId::R14:
        spec.p = draw.integer(1, 2);
        spec.omega.kind = OmegaFamily::Kind::multi_horn_h4;
        spec.omega.params = spec.params;
        spec.omega.params.weight.rho = 2;
        spec.a = CoefficientSequence{CoefficientSequence::Kind::pochhammer_ratio, draw.value(), {}};
        if (id == IdentityId::C6) {
            spec.omega.mu = draw.integer(0, 2);
            spec.omega.psi = draw.integer(1, 2);
        }
        break;
    case IdentityId::T8: {
        spec.p = draw.integer(1, 2);
        spec.omega.kind = OmegaFamily::Kind::custom_table;
        spec.omega.table_arity = 2;
        for (unsigned j = 0; j <= orders.aux; ++j) {
            YPolynomial poly;
            poly[MultiIndex{0, 0}] = draw.value();
            poly[MultiIndex{draw.integer(0, 2), 0}] += draw.value();
            poly[MultiIndex{0, draw.integer(1, 2)}] += draw.value();
            std::erase_if(poly, [](const auto& kv) { return kv.second.is_zero(); });
            spec.omega.table[spec.omega.index(j)] = std::move(poly);
        }
        std::vector<Rational> a;
        for (unsigned j = 0; j <= orders.aux; ++j) {
            a.push_back(draw.value());
        }
        spec.a = CoefficientSequence{CoefficientSequence::Kind::table, Rational(1), std::move(a)};
        break;
    }
    case IdentityId::T9:
        spec.m = draw.integer(0, 2);
        spec.p = draw.integer(1, 2);
        spec.q = draw.integer(1, 2);
        spec.omega.kind = OmegaFamily::Kind::erkus_srivastava;
        spec.omega.alphas = draw.values(2);
        spec.omega.powers = {draw.integer(1, 2), draw.integer(1, 2)};
        spec.a = CoefficientSequence{CoefficientSequence::Kind::pochhammer_ratio, draw.value(), {}};
        break;
    default:
        break;
    }
    return spec;
}

/// One draw of every identity in the catalog, consistent readings.
inline std::vector<IdentitySpec> catalog(unsigned t_order, unsigned x_order, std::uint64_t seed)
{
    std::vector<IdentitySpec> out;
    std::uint64_t s = seed;
    for (IdentityId id : kAllIdentities) {
        Orders o = default_orders(id);
        o.t = t_order;
        o.x = x_order;
        out.push_back(draw_spec(id, Shape{2, 1, 2}, o, s++));
    }
    return out;
}

} // namespace mvh::identities
