// Evaluates the family at a few points and checks one generating relation numerically.
#include <cstdio>
#include <vector>

#include "mvh/identities.hpp"

int main()
{
    const mvh::Truncation trunc;

    // rho = 3/2 is fine for numerical evaluation.
    const auto p = mvh::make_real_params(0.5, {2.0}, {1.5, 1.0 / 3}, 1.5, 1);
    for (const std::vector<double>& x : {std::vector{0.0, 0.0}, {0.01, 0.05}, {0.04, -0.1}, {0.09, 0.2}}) {
        const auto r = mvh::eval_E(p, mvh::EvalPoint<double>{x}, trunc);
        std::printf("E(%.2f, %.2f) = %.15g  terms=%llu  tail<=%.1e  measure=%.3f\n", x[0], x[1], r.value,
                    static_cast<unsigned long long>(r.terms_summed), r.tail_estimate, mvh::region_measure(p.weight, x));
    }

    // A terminating case is a polynomial.
    auto poly = p;
    poly.alpha = -3;
    const auto r = mvh::eval_E(poly, mvh::EvalPoint<double>{{0.5, 2.0}}, trunc);
    std::printf("alpha=-3: %.15g  terminated=%s\n", r.value, r.terminated ? "yes" : "no");

    using namespace mvh::identities;
    const auto spec = draw_spec(IdentityId::T1, Shape{2, 1, 2}, default_orders(IdentityId::T1), 4);
    const std::vector<double> x{0.02, -0.03};
    const auto rep = verify_float(spec, x, 0.2);
    std::printf("%s: relative gap %.2e (%s)\n", rep.label.c_str(), rep.max_discrepancy_real, rep.pass ? "ok" : "FAIL");
    return rep.pass ? 0 : 1;
}
