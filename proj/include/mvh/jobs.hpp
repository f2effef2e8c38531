#pragma once

// Verification jobs: a line-oriented job file format, batch execution with
// input-ordered results, and report records as JSON lines.
//
// A job is one line of whitespace-separated key=value pairs; '#' starts a
// comment. `identity` is required; everything else has a default or is drawn
// from `seed`. Rationals are exact literals (`3`, `-1/2`), lists are
// comma-separated.
//
//   identity=T1 rho=2 k=1 r=2 N=6 D=6 seed=7 lambda=1/2
//   identity=T7 reading=printed
//   identity=T1 mutate=gamma:0 name=mutated-t1

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "mvh/errors.hpp"
#include "mvh/exactnum.hpp"
#include "mvh/identities.hpp"

namespace mvh::jobs {

using identities::IdentitySpec;
using identities::Perturbation;
using identities::VerificationReport;

struct Job {
    std::string name;
    IdentitySpec spec;
    std::optional<Perturbation> mutate;
    std::uint64_t seed = 0;
};

namespace detail {

inline std::vector<std::string> split(std::string_view text, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        out.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

inline std::vector<Rational> parse_rationals(std::string_view text)
{
    std::vector<Rational> out;
    if (text.empty()) {
        return out;
    }
    for (const auto& part : split(text, ',')) {
        out.push_back(Rational::parse(part));
    }
    return out;
}

inline unsigned long parse_unsigned(std::string_view key, std::string_view text)
{
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw InvalidArgument("'" + std::string(key) + "' needs a nonnegative integer, got '" + std::string(text) + "'");
    }
    return std::stoul(std::string(text));
}

inline std::vector<unsigned> parse_unsigned_list(std::string_view key, std::string_view text)
{
    std::vector<unsigned> out;
    for (const auto& part : split(text, ',')) {
        out.push_back(static_cast<unsigned>(parse_unsigned(key, part)));
    }
    return out;
}

inline std::string join(const std::vector<Rational>& values)
{
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        s += (i ? "," : "") + values[i].str();
    }
    return s;
}

inline Perturbation parse_perturbation(std::string_view text)
{
    using T = Perturbation::Target;
    const auto colon = text.find(':');
    const std::string_view head = text.substr(0, colon);
    const std::size_t index =
        colon == std::string_view::npos ? 0 : parse_unsigned("mutate", text.substr(colon + 1));
    if (head == "lambda") {
        return {T::lambda, 0};
    }
    if (head == "alpha") {
        return {T::alpha, 0};
    }
    if (head == "beta") {
        return {T::beta, index};
    }
    if (head == "gamma") {
        return {T::gamma, index};
    }
    if (head == "a") {
        return {T::a_coefficient, index};
    }
    if (head == "omega") {
        return {T::omega_param, index};
    }
    throw InvalidArgument("unknown mutation target '" + std::string(text) + "'");
}

inline identities::CoefficientSequence parse_sequence(std::string_view text, const Rational& lambda2)
{
    using K = identities::CoefficientSequence::Kind;
    if (text == "one") {
        return {K::one, Rational(1), {}};
    }
    if (text == "poch") {
        return {K::pochhammer_ratio, lambda2, {}};
    }
    if (text == "invfact") {
        return {K::inverse_factorial, Rational(1), {}};
    }
    if (text.starts_with("table:")) {
        return {K::table, Rational(1), parse_rationals(text.substr(6))};
    }
    throw InvalidArgument("unknown a_k sequence '" + std::string(text) + "' (one|poch|invfact|table:v0,v1,..)");
}

inline std::string sequence_text(const identities::CoefficientSequence& a)
{
    using K = identities::CoefficientSequence::Kind;
    switch (a.kind) {
    case K::one: return "one";
    case K::pochhammer_ratio: return "poch";
    case K::inverse_factorial: return "invfact";
    case K::table: return "table:" + join(a.values);
    }
    return "?";
}

} // namespace detail

/// Parses one job record. Keys not listed in the header comment are rejected.
inline Job parse_job(std::string_view line, std::string default_name = "job")
{
    std::map<std::string, std::string> kv;
    std::istringstream in{std::string(line)};
    std::string token;
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw InvalidArgument("job field '" + token + "' is not key=value");
        }
        const std::string key = token.substr(0, eq);
        if (!kv.emplace(key, token.substr(eq + 1)).second) {
            throw InvalidArgument("job field '" + key + "' given twice");
        }
    }
    static const std::vector<std::string> known{
        "name",  "identity", "seed", "rho", "k",  "r",  "alpha", "beta",        "gamma",        "lambda",
        "lambda2", "N",      "D",    "Y",   "A",  "m",  "p",     "q",           "mu",           "psi",
        "a",     "reading",  "family", "mutate", "omega_alpha", "omega_powers",
    };
    for (const auto& [key, value] : kv) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw InvalidArgument("unknown job field '" + key + "'");
        }
    }
    const auto get = [&](const char* key) -> std::optional<std::string> {
        const auto it = kv.find(key);
        return it == kv.end() ? std::nullopt : std::optional<std::string>(it->second);
    };
    const auto get_unsigned = [&](const char* key, unsigned fallback) {
        const auto v = get(key);
        return v ? static_cast<unsigned>(detail::parse_unsigned(key, *v)) : fallback;
    };

    const auto id_text = get("identity");
    if (!id_text) {
        throw InvalidArgument("job has no identity=...");
    }
    Job job;
    job.name = get("name").value_or(std::move(default_name));
    const auto id = identities::parse_identity_id(*id_text);
    job.seed = get("seed") ? detail::parse_unsigned("seed", *get("seed")) : 0;

    identities::Orders orders = identities::default_orders(id);
    orders.t = get_unsigned("N", orders.t);
    orders.x = get_unsigned("D", orders.x);
    orders.y = get_unsigned("Y", orders.y);
    orders.aux = get_unsigned("A", orders.aux);

    identities::Shape shape;
    shape.r = get_unsigned("r", static_cast<unsigned>(shape.r));
    shape.k = get_unsigned("k", std::min<unsigned>(static_cast<unsigned>(shape.k), static_cast<unsigned>(shape.r)));
    shape.rho = get_unsigned("rho", shape.rho);

    IdentitySpec spec = identities::draw_spec(id, shape, orders, job.seed);
    if (auto v = get("alpha")) {
        spec.params.alpha = Rational::parse(*v);
    }
    if (auto v = get("beta")) {
        spec.params.beta = detail::parse_rationals(*v);
    }
    if (auto v = get("gamma")) {
        spec.params.gamma = detail::parse_rationals(*v);
    }
    if (auto v = get("lambda")) {
        spec.lambda = Rational::parse(*v);
    }
    if (auto v = get("lambda2")) {
        spec.a.lambda = Rational::parse(*v);
    }
    if (auto v = get("a")) {
        spec.a = detail::parse_sequence(*v, spec.a.lambda);
    }
    spec.m = get_unsigned("m", spec.m);
    spec.p = get_unsigned("p", spec.p);
    spec.q = get_unsigned("q", spec.q);
    spec.omega.mu = get_unsigned("mu", spec.omega.mu);
    spec.omega.psi = get_unsigned("psi", spec.omega.psi);
    if (auto v = get("omega_alpha")) {
        spec.omega.alphas = detail::parse_rationals(*v);
    }
    if (auto v = get("omega_powers")) {
        spec.omega.powers = detail::parse_unsigned_list("omega_powers", *v);
    }
    if (auto v = get("reading")) {
        if (*v == "printed") {
            spec.reading = identities::Reading::as_printed;
        } else if (*v == "consistent") {
            spec.reading = identities::Reading::consistent;
        } else {
            throw InvalidArgument("reading must be consistent or printed");
        }
    }
    if (auto v = get("family")) {
        spec.family = identities::parse_term_family(*v);
    }
    if (auto v = get("mutate")) {
        job.mutate = detail::parse_perturbation(*v);
    }
    spec.params.validate_shape();
    job.spec = std::move(spec);
    return job;
}

/// Reads every non-blank, non-comment line; errors carry the line number.
inline std::vector<Job> parse_job_stream(std::istream& in)
{
    std::vector<Job> jobs;
    std::string line;
    unsigned line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            jobs.push_back(parse_job(line, "job" + std::to_string(jobs.size() + 1)));
        } catch (const Error& e) {
            throw InvalidArgument("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return jobs;
}

/// A record that parses back to an equal job (all drawn values made explicit).
inline std::string format_job(const Job& job)
{
    const IdentitySpec& s = job.spec;
    const ExactParams& p = s.params;
    std::string out = "name=" + job.name + " identity=" + std::string(identities::to_string(s.id)) +
                      " seed=" + std::to_string(job.seed) + " rho=" + std::to_string(p.weight.rho) +
                      " k=" + std::to_string(p.k()) + " r=" + std::to_string(p.r()) + " alpha=" + p.alpha.str();
    if (!p.beta.empty()) {
        out += " beta=" + detail::join(p.beta);
    }
    out += " gamma=" + detail::join(p.gamma) + " lambda=" + s.lambda.str() + " N=" + std::to_string(s.orders.t) +
           " D=" + std::to_string(s.orders.x) + " Y=" + std::to_string(s.orders.y) +
           " A=" + std::to_string(s.orders.aux) + " m=" + std::to_string(s.m) + " p=" + std::to_string(s.p) +
           " q=" + std::to_string(s.q) + " mu=" + std::to_string(s.omega.mu) + " psi=" + std::to_string(s.omega.psi) +
           " lambda2=" + s.a.lambda.str() + " a=" + detail::sequence_text(s.a);
    if (!s.omega.alphas.empty()) {
        out += " omega_alpha=" + detail::join(s.omega.alphas);
        std::string powers;
        for (std::size_t i = 0; i < s.omega.powers.size(); ++i) {
            powers += (i ? "," : "") + std::to_string(s.omega.powers[i]);
        }
        out += " omega_powers=" + powers;
    }
    out += " family=" + std::string(identities::to_string(s.family));
    out += s.reading == identities::Reading::as_printed ? " reading=printed" : " reading=consistent";
    if (job.mutate) {
        out += " mutate=" + identities::to_string(*job.mutate);
    }
    return out;
}

// ---------------------------------------------------------------------------

struct JobResult {
    std::optional<VerificationReport> report;
    std::string error; ///< set when the job could not be run
};

inline JobResult run_job(const Job& job)
{
    JobResult out;
    try {
        out.report = identities::verify(job.spec, job.mutate);
    } catch (const Error& e) {
        out.error = e.what();
    }
    return out;
}

/// Runs jobs on up to `threads` workers; results come back in input order.
inline std::vector<JobResult> run_batch(const std::vector<Job>& jobs, unsigned threads = 1)
{
    std::vector<JobResult> results(jobs.size());
    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            results[i] = run_job(jobs[i]);
        }
    };
    if (threads == 1) {
        worker();
        return results;
    }
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) {
        pool.emplace_back(worker);
    }
    pool.clear();
    return results;
}

// ---------------------------------------------------------------------------
// Report records.
//
// Fields: name, identity, label, mode, pass, monomials, discrepancy (exact
// rational text or a real), mismatches, first_failure (null on pass),
// elapsed_ms (null unless timing was requested), error (null unless the job
// could not run).

inline nlohmann::ordered_json report_record(const Job& job, const JobResult& result, bool timing)
{
    nlohmann::ordered_json rec;
    rec["name"] = job.name;
    rec["identity"] = std::string(identities::to_string(job.spec.id));
    if (!result.report) {
        rec["label"] = identities::describe(job.spec);
        rec["mode"] = "exact";
        rec["pass"] = false;
        rec["monomials"] = 0;
        rec["discrepancy"] = nullptr;
        rec["mismatches"] = 0;
        rec["first_failure"] = nullptr;
        rec["elapsed_ms"] = nullptr;
        rec["error"] = result.error;
        return rec;
    }
    const VerificationReport& r = *result.report;
    rec["label"] = r.label;
    rec["mode"] = r.mode == identities::Mode::exact ? "exact" : "float";
    rec["pass"] = r.pass;
    rec["monomials"] = r.checked_monomials;
    if (r.mode == identities::Mode::exact) {
        rec["discrepancy"] = r.max_discrepancy.str();
    } else {
        rec["discrepancy"] = r.max_discrepancy_real;
    }
    rec["mismatches"] = r.mismatch_count;
    rec["first_failure"] = r.pass ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.first_failure());
    if (timing) {
        rec["elapsed_ms"] = std::chrono::duration<double, std::milli>(r.elapsed).count();
    } else {
        rec["elapsed_ms"] = nullptr;
    }
    rec["error"] = nullptr;
    return rec;
}

/// Checks a parsed record against the schema above; throws InvalidArgument.
inline void validate_record(const nlohmann::json& rec)
{
    const auto need = [&](const char* key, auto check, const char* type) {
        if (!rec.contains(key) || !check(rec.at(key))) {
            throw InvalidArgument(std::string("report record field '") + key + "' missing or not " + type);
        }
    };
    using J = nlohmann::json;
    need("name", [](const J& v) { return v.is_string(); }, "a string");
    need("identity", [](const J& v) { return v.is_string(); }, "a string");
    need("label", [](const J& v) { return v.is_string(); }, "a string");
    need("mode", [](const J& v) { return v == "exact" || v == "float"; }, "exact|float");
    need("pass", [](const J& v) { return v.is_boolean(); }, "a boolean");
    need("monomials", [](const J& v) { return v.is_number_unsigned(); }, "an unsigned integer");
    need("discrepancy", [](const J& v) { return v.is_null() || v.is_string() || v.is_number(); }, "text or number");
    need("mismatches", [](const J& v) { return v.is_number_unsigned(); }, "an unsigned integer");
    need("first_failure", [](const J& v) { return v.is_null() || v.is_string(); }, "null or a string");
    need("elapsed_ms", [](const J& v) { return v.is_null() || v.is_number(); }, "null or a number");
    need("error", [](const J& v) { return v.is_null() || v.is_string(); }, "null or a string");
    identities::parse_identity_id(rec.at("identity").get<std::string>());
    if (rec.at("discrepancy").is_string()) {
        Rational::parse(rec.at("discrepancy").get<std::string>());
    }
}

/// Plain-text line for human output.
inline std::string report_line(const Job& job, const JobResult& result, bool timing)
{
    if (!result.report) {
        return "ERROR " + job.name + " " + identities::describe(job.spec) + ": " + result.error;
    }
    const VerificationReport& r = *result.report;
    std::string s = std::string(r.pass ? "PASS " : "FAIL ");
    if (job.name != identities::to_string(job.spec.id)) {
        s += job.name + " ";
    }
    s += r.label + " monomials=" + std::to_string(r.checked_monomials);
    if (r.pass) {
        s += " discrepancy=0";
    } else {
        const auto& m = r.mismatches.front();
        s += " mismatches=" + std::to_string(r.mismatch_count) + " first_failure=[" + r.first_failure() +
             "] lhs=" + m.lhs.str() + " rhs=" + m.rhs.str();
    }
    if (timing) {
        std::ostringstream ms;
        ms.precision(3);
        ms << std::fixed << std::chrono::duration<double, std::milli>(r.elapsed).count();
        s += " elapsed_ms=" + ms.str();
    }
    return s;
}

} // namespace mvh::jobs
