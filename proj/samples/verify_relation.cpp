// Builds both sides of a generating relation exactly and compares them.
#include <iostream>

#include "mvh/identities.hpp"

using namespace mvh::identities;
using mvh::Rational;

int main()
{
    IdentitySpec spec;
    spec.id = IdentityId::T2;
    spec.params = mvh::make_params(Rational(1, 3), {Rational(5, 2)}, {Rational(3, 2), Rational(-1, 2), Rational(2)}, 3, 2);
    spec.lambda = Rational(-1, 2);
    spec.orders = Orders{5, 5, 4, 3};

    const auto lhs = lhs_series(spec);
    std::cout << "left member has " << lhs.size() << " nonzero coefficients, first few:\n";
    const auto text = lhs.canonical_text();
    std::cout << text.substr(0, text.find('\n', text.find('\n', text.find('\n') + 1) + 1) + 1);

    const auto ok = verify(spec);
    std::cout << (ok.pass ? "PASS " : "FAIL ") << ok.label << " over " << ok.checked_monomials << " monomials\n";

    // Shift one denominator parameter on the right only; the comparison must notice.
    const auto bad = verify(spec, Perturbation{Perturbation::Target::gamma, 2});
    std::cout << (bad.pass ? "PASS " : "FAIL ") << bad.label << ": " << bad.mismatch_count
              << " coefficients differ, first at " << bad.first_failure() << "\n";

    // A bilateral relation with an explicit Omega table.
    auto t8 = draw_spec(IdentityId::T8, Shape{2, 1, 2}, default_orders(IdentityId::T8), 1);
    const auto rep = verify_bilateral(t8);
    std::cout << (rep.pass ? "PASS " : "FAIL ") << rep.label << " over " << rep.checked_monomials << " monomials\n";
    return ok.pass && !bad.pass && rep.pass ? 0 : 1;
}
