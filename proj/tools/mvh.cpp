// mvh: evaluate, dump coefficients of, and verify generating relations for
// the multivariable E family.
//
// Exit codes: 0 ok, 1 a verification failed, 2 usage or input error,
// 3 point outside the convergence region under --strict.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mvh/errors.hpp"
#include "mvh/exactnum.hpp"
#include "mvh/fps.hpp"
#include "mvh/hyperfam.hpp"
#include "mvh/identities.hpp"
#include "mvh/jobs.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRegion = 3;

using mvh::Rational;
namespace ids = mvh::identities;

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    if (text.empty()) {
        return out;
    }
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        out.push_back(item);
    }
    return out;
}

/// Real literal for float evaluation: `p/q`, an integer, or a decimal.
double parse_real(const std::string& text)
{
    if (text.find('/') != std::string::npos) {
        return Rational::parse(text).to_double();
    }
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) {
        throw mvh::InvalidArgument("not a number: '" + text + "'");
    }
    return v;
}

std::vector<double> parse_reals(const std::string& text)
{
    std::vector<double> out;
    for (const auto& s : split_list(text)) {
        out.push_back(parse_real(s));
    }
    return out;
}

std::vector<Rational> parse_exact_list(const std::string& text)
{
    std::vector<Rational> out;
    for (const auto& s : split_list(text)) {
        out.push_back(Rational::parse(s));
    }
    return out;
}

struct FunctionFlags {
    std::string fn = "E";
    std::string alpha = "1";
    std::string rho = "1";
    std::size_t k = 0;
    std::size_t r = 0;
    std::string beta;
    std::string gamma;
    std::string x;
    std::size_t p = 0;
    std::size_t q = 0;
    std::string params;
    std::string z = "0";
};

void add_function_flags(CLI::App* cmd, FunctionFlags& f)
{
    cmd->add_option("--fn", f.fn, "E, pFq, F2, FA, H4, kH4r, Phi or 0F1")
        ->check(CLI::IsMember({"E", "pFq", "F2", "FA", "H4", "kH4r", "Phi", "0F1"}));
    cmd->add_option("--alpha", f.alpha, "alpha");
    cmd->add_option("--rho", f.rho, "weight rho of the first k variables");
    cmd->add_option("--k", f.k, "number of rho-weighted variables");
    cmd->add_option("--r", f.r, "number of variables (default: length of --gamma)");
    cmd->add_option("--beta", f.beta, "beta_{k+1},...,beta_r, comma-separated");
    cmd->add_option("--gamma", f.gamma, "gamma_1,...,gamma_r, comma-separated");
}

/// rho, k, r for the named function; classical names pin them.
mvh::RealWeightSpec real_shape(const FunctionFlags& f, std::size_t gamma_count)
{
    const std::size_t r = f.r ? f.r : gamma_count;
    if (f.fn == "F2") {
        return {1.0, 0, 2};
    }
    if (f.fn == "FA") {
        return {1.0, 0, r};
    }
    if (f.fn == "H4") {
        return {2.0, 1, 2};
    }
    if (f.fn == "kH4r") {
        return {2.0, f.k, r};
    }
    return {parse_real(f.rho), f.k, r};
}

// --- eval ---------------------------------------------------------------

struct EvalFlags {
    FunctionFlags f;
    unsigned max_degree = 120;
    double tol = 1e-16;
    std::uint64_t cap = 2'000'000;
    bool strict = false;
    std::string format = "human";
};

int run_eval(const EvalFlags& e)
{
    const FunctionFlags& f = e.f;
    const mvh::Truncation trunc{e.max_degree, e.tol, e.cap};
    mvh::EvalResult res;
    if (f.fn == "pFq" || f.fn == "Phi" || f.fn == "0F1") {
        const auto values = parse_reals(f.params);
        std::size_t p = f.p;
        std::size_t q = f.q;
        if (f.fn == "Phi") {
            p = 1;
            q = 1;
        } else if (f.fn == "0F1") {
            p = 0;
            q = 1;
        }
        if (values.size() != p + q) {
            throw mvh::DimensionMismatch("--params needs p + q = " + std::to_string(p + q) + " values");
        }
        const std::vector<double> a(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(p));
        const std::vector<double> b(values.begin() + static_cast<std::ptrdiff_t>(p), values.end());
        res = mvh::eval_pFq(a, b, parse_real(f.z), trunc, e.strict);
    } else {
        const auto gamma = parse_reals(f.gamma);
        mvh::RealParams params;
        params.alpha = parse_real(f.alpha);
        params.beta = parse_reals(f.beta);
        params.gamma = gamma;
        params.weight = real_shape(f, gamma.size());
        res = mvh::eval_E(params, mvh::EvalPoint<double>{parse_reals(f.x)}, trunc, e.strict);
    }
    if (e.format == "structured") {
        nlohmann::ordered_json rec;
        rec["fn"] = f.fn;
        rec["value"] = res.value;
        rec["terms_summed"] = res.terms_summed;
        rec["tail_estimate"] = res.tail_estimate;
        rec["in_region"] = res.in_region;
        rec["terminated"] = res.terminated;
        std::cout << rec.dump() << "\n";
    } else {
        std::cout << std::setprecision(17) << "value " << res.value << "\n"
                  << "terms_summed " << res.terms_summed << "\n"
                  << std::setprecision(6) << "tail_estimate " << res.tail_estimate << "\n"
                  << "in_region " << (res.in_region ? "true" : "false") << "\n"
                  << "terminated " << (res.terminated ? "true" : "false") << "\n";
    }
    return kExitOk;
}

// --- coeffs -------------------------------------------------------------

struct CoeffFlags {
    FunctionFlags f;
    unsigned degree = 6;
    std::string job;
    std::string side = "lhs";
};

int run_coeffs(const CoeffFlags& c)
{
    if (!c.job.empty()) {
        const mvh::jobs::Job job = mvh::jobs::parse_job(c.job);
        const auto series = c.side == "rhs" ? ids::rhs_series(job.spec) : ids::lhs_series(job.spec);
        std::cout << "# " << series.layout().describe() << "\n" << series.canonical_text();
        return kExitOk;
    }
    const FunctionFlags& f = c.f;
    if (f.fn == "pFq" || f.fn == "Phi" || f.fn == "0F1") {
        const auto values = parse_exact_list(f.params);
        std::size_t p = f.fn == "Phi" ? 1 : f.fn == "0F1" ? 0 : f.p;
        std::size_t q = f.fn == "pFq" ? f.q : 1;
        if (values.size() != p + q) {
            throw mvh::DimensionMismatch("--params needs p + q = " + std::to_string(p + q) + " values");
        }
        const std::vector<Rational> a(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(p));
        const std::vector<Rational> b(values.begin() + static_cast<std::ptrdiff_t>(p), values.end());
        const mvh::fps::Layout lay({mvh::fps::VarGroup{"z", 1, c.degree}});
        mvh::fps::FormalSeries s(lay);
        for (unsigned n = 0; n <= c.degree; ++n) {
            s.accumulate({n}, mvh::pfq_coefficient(a, b, n));
        }
        std::cout << s.canonical_text();
        return kExitOk;
    }
    const auto gamma = parse_exact_list(f.gamma);
    const auto shape = real_shape(f, gamma.size());
    const Rational rho = Rational::parse(f.rho);
    if (f.fn == "E" && (!rho.is_integer() || rho.sign() < 0)) {
        throw mvh::UnsupportedBranch("exact coefficients need a nonnegative integer rho");
    }
    const auto params = mvh::make_params(Rational::parse(f.alpha), parse_exact_list(f.beta), gamma,
                                         static_cast<std::uint32_t>(shape.rho), shape.k);
    ids::TermFamily family = ids::TermFamily::e;
    if (f.fn == "F2") {
        family = ids::TermFamily::appell_f2;
    } else if (f.fn == "FA") {
        family = ids::TermFamily::lauricella_fa;
    } else if (f.fn == "H4") {
        family = ids::TermFamily::horn_h4;
    } else if (f.fn == "kH4r") {
        family = ids::TermFamily::multi_horn;
    }
    ids::detail::check_family_shape(family, params);
    const mvh::fps::Layout lay({mvh::fps::VarGroup{"x", params.r(), c.degree}});
    mvh::fps::FormalSeries s(lay);
    for (const auto& m : mvh::enumerate_multi_indices(params.r(), c.degree)) {
        s.accumulate(m.entries(), ids::detail::family_coefficient(family, params, m));
    }
    std::cout << s.canonical_text();
    return kExitOk;
}

// --- verify -------------------------------------------------------------

struct VerifyFlags {
    std::string jobs_file;
    std::vector<std::string> job;
    bool catalog = false;
    unsigned n = 5;
    unsigned d = 5;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string format = "human";
    bool timing = false;
};

std::vector<mvh::jobs::Job> catalog_jobs(unsigned n, unsigned d, std::uint64_t seed)
{
    std::vector<mvh::jobs::Job> out;
    for (auto& spec : ids::catalog(n, d, seed)) {
        mvh::jobs::Job job;
        job.name = std::string(ids::to_string(spec.id));
        job.seed = seed;
        job.spec = std::move(spec);
        out.push_back(std::move(job));
    }
    return out;
}

int emit_results(const std::vector<mvh::jobs::Job>& jobs, const std::vector<mvh::jobs::JobResult>& results,
                 const std::string& format, bool timing)
{
    bool failed = false;
    bool errored = false;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (format == "structured") {
            std::cout << mvh::jobs::report_record(jobs[i], results[i], timing).dump() << "\n";
        } else {
            std::cout << mvh::jobs::report_line(jobs[i], results[i], timing) << "\n";
        }
        errored = errored || !results[i].report;
        failed = failed || (results[i].report && !results[i].report->pass);
    }
    if (format != "structured") {
        std::size_t passed = 0;
        for (const auto& r : results) {
            passed += r.report && r.report->pass;
        }
        std::cout << passed << "/" << jobs.size() << " jobs passed\n";
    }
    return errored ? kExitUsage : failed ? kExitFailed : kExitOk;
}

int run_verify(const VerifyFlags& v)
{
    std::vector<mvh::jobs::Job> jobs;
    if (!v.jobs_file.empty()) {
        std::ifstream in(v.jobs_file);
        if (!in) {
            throw mvh::InvalidArgument("cannot open job file '" + v.jobs_file + "'");
        }
        jobs = mvh::jobs::parse_job_stream(in);
    }
    for (const auto& rec : v.job) {
        jobs.push_back(mvh::jobs::parse_job(rec, "job" + std::to_string(jobs.size() + 1)));
    }
    if (v.catalog) {
        auto more = catalog_jobs(v.n, v.d, v.seed);
        jobs.insert(jobs.end(), more.begin(), more.end());
    }
    if (jobs.empty()) {
        throw mvh::InvalidArgument("no verification jobs given");
    }
    const auto results = mvh::jobs::run_batch(jobs, v.threads);
    return emit_results(jobs, results, v.format, v.timing);
}

// --- selftest -----------------------------------------------------------

int run_selftest()
{
    int failures = 0;
    auto check = [&](bool ok, const std::string& what) {
        std::cout << (ok ? "ok   " : "FAIL ") << what << "\n";
        failures += ok ? 0 : 1;
    };
    const mvh::Truncation trunc;
    check(std::abs(mvh::eval_1F0(1.0, 0.5, trunc).value - 2.0) < 1e-14, "1F0(1;;1/2) = 2");
    check(mvh::pochhammer_int(Rational(1, 2), 3) == Rational(15, 8), "(1/2)_3 = 15/8");
    for (const auto& job : catalog_jobs(4, 4, 1)) {
        const auto result = mvh::jobs::run_job(job);
        check(result.report && result.report->pass, "verify " + std::string(ids::to_string(job.spec.id)));
    }
    auto mutated = catalog_jobs(4, 4, 1).front();
    mutated.mutate = ids::Perturbation{ids::Perturbation::Target::lambda, 0};
    const auto result = mvh::jobs::run_job(mutated);
    check(result.report && !result.report->pass, "mutated T1 is rejected");
    std::cout << (failures == 0 ? "selftest passed" : "selftest FAILED") << "\n";
    return failures == 0 ? kExitOk : kExitFailed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Evaluation and exact identity verification for the multivariable E family"};
    app.require_subcommand(1);

    EvalFlags eval;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a function numerically at a point");
    add_function_flags(eval_cmd, eval.f);
    eval_cmd->add_option("--x", eval.f.x, "point x_1,...,x_r");
    eval_cmd->add_option("--p", eval.f.p, "number of numerator parameters (pFq)");
    eval_cmd->add_option("--q", eval.f.q, "number of denominator parameters (pFq)");
    eval_cmd->add_option("--params", eval.f.params, "a_1..a_p,b_1..b_q (pFq, Phi, 0F1)");
    eval_cmd->add_option("--z", eval.f.z, "argument (pFq, Phi, 0F1)");
    eval_cmd->add_option("--max-degree", eval.max_degree, "highest total degree summed");
    eval_cmd->add_option("--tol", eval.tol, "stop once the tail bound is below this (0: never)");
    eval_cmd->add_option("--cap", eval.cap, "maximum number of terms");
    eval_cmd->add_flag("--strict", eval.strict, "reject points outside the convergence region");
    eval_cmd->add_option("--format", eval.format)->check(CLI::IsMember({"human", "structured"}));

    CoeffFlags coeffs;
    auto* coeffs_cmd = app.add_subcommand("coeffs", "print exact series coefficients in canonical text form");
    add_function_flags(coeffs_cmd, coeffs.f);
    coeffs_cmd->add_option("--p", coeffs.f.p, "number of numerator parameters (pFq)");
    coeffs_cmd->add_option("--q", coeffs.f.q, "number of denominator parameters (pFq)");
    coeffs_cmd->add_option("--params", coeffs.f.params, "a_1..a_p,b_1..b_q (pFq, Phi, 0F1)");
    coeffs_cmd->add_option("--degree", coeffs.degree, "highest total degree");
    coeffs_cmd->add_option("--job", coeffs.job, "dump one side of an identity job record instead");
    coeffs_cmd->add_option("--side", coeffs.side, "lhs or rhs")->check(CLI::IsMember({"lhs", "rhs"}));

    VerifyFlags verify;
    auto* verify_cmd = app.add_subcommand("verify", "verify identities exactly");
    verify_cmd->add_option("--jobs", verify.jobs_file, "job file, one record per line");
    verify_cmd->add_option("--job", verify.job, "a single job record (repeatable)");
    verify_cmd->add_flag("--catalog", verify.catalog, "one random instance of every identity");
    verify_cmd->add_option("--N", verify.n, "t order for --catalog");
    verify_cmd->add_option("--D", verify.d, "x order for --catalog");
    verify_cmd->add_option("--seed", verify.seed, "seed for --catalog");
    verify_cmd->add_option("--threads", verify.threads, "worker threads")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--format", verify.format)->check(CLI::IsMember({"human", "structured"}));
    verify_cmd->add_flag("--timing", verify.timing, "include elapsed time (output is no longer reproducible)");

    auto* selftest_cmd = app.add_subcommand("selftest", "quick end-to-end check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (eval_cmd->parsed()) {
            return run_eval(eval);
        }
        if (coeffs_cmd->parsed()) {
            return run_coeffs(coeffs);
        }
        if (verify_cmd->parsed()) {
            return run_verify(verify);
        }
        if (selftest_cmd->parsed()) {
            return run_selftest();
        }
    } catch (const mvh::OutOfRegion& e) {
        std::cerr << "mvh: " << e.what() << "\n";
        return kExitRegion;
    } catch (const mvh::Error& e) {
        std::cerr << "mvh: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
