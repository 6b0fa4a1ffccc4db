#include "tchi/cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tchi/distribution_spec.hpp"
#include "tchi/divergences.hpp"
#include "tchi/errors.hpp"
#include "tchi/families.hpp"
#include "tchi/mollification.hpp"
#include "tchi/transport.hpp"

namespace tchi {

namespace {

using ojson = nlohmann::ordered_json;

std::string num(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

ojson json_num(double v)
{
    if (std::isfinite(v)) return v;
    return num(v);
}

Record make_record(std::string check, std::string label,
                   std::vector<std::pair<std::string, double>> fields, bool passed)
{
    return {std::move(check), std::move(label), std::move(fields), passed, false};
}

// Passed iff lhs <= rhs exactly, for checks whose rhs is itself a tolerance.
Record bound_record(std::string check, std::string label, double lhs, double rhs)
{
    return to_record(make_report(std::move(check), lhs, rhs, rhs, "lhs", "rhs", 0.0), std::move(label));
}

DistributionSpec resolve_spec(const std::string& text)
{
    namespace fs = std::filesystem;
    const bool looks_inline = !text.empty() && (text.front() == '{' || text.find('(') != std::string::npos);
    if (!looks_inline) {
        std::error_code ec;
        if (!fs::is_regular_file(text, ec)) throw SpecError("no such spec file: " + text);
        std::ifstream in(text);
        try {
            return spec_from_json(nlohmann::json::parse(in));
        } catch (const nlohmann::json::exception& e) {
            throw SpecError("invalid JSON in " + text + ": " + e.what());
        }
    }
    return parse_spec(text);
}

DistPtr require_law(const std::optional<std::string>& text, const char* flag)
{
    if (!text) throw SpecError(std::string(flag) + " is required for this command");
    return make_family(resolve_spec(*text));
}

std::string pair_label(const RunConfig& cfg)
{
    return cfg.mu_spec.value_or("?") + "|" + cfg.nu_spec.value_or("?");
}

double relative_gap(double value, double exact) { return std::abs(value - exact) / std::abs(exact); }

// ---- suites ---------------------------------------------------------------

void chain_suite(const RunConfig& cfg, std::vector<Record>& out)
{
    const QuadSettings& s = cfg.settings;
    std::map<std::string, double> b_cache;
    for (const auto& p : standard_pairs()) {
        const auto mu = make_family(p.mu);
        const auto nu = make_family(p.nu);
        const std::string key = to_json(p.mu).dump();
        auto it = b_cache.find(key);
        if (it == b_cache.end()) it = b_cache.emplace(key, muckenhoupt_b(*mu, s).b).first;
        const double b = it->second;
        out.push_back(to_record(verify_prop1(*mu, *nu, s), p.label));
        out.push_back(to_record(verify_prop2(*mu, *nu, s, b), p.label));
        out.push_back(to_record(verify_tchi_from_b(*mu, *nu, s, b), p.label));
    }
}

void metrics_suite(const RunConfig& cfg, std::vector<Record>& out)
{
    const QuadSettings& s = cfg.settings;
    for (const auto& p : agreement_pairs()) {
        const auto mu = make_family(p.mu);
        const auto nu = make_family(p.nu);
        const double a = wq_quantile(*mu, *nu, 2, s).value;
        const double b = w2_double_integral(*mu, *nu, s).value;
        Record r = bound_record("method_agreement", p.label, std::abs(a - b), 1e-4);
        r.fields.push_back({"w2_quantile", a});
        r.fields.push_back({"w2_double_integral", b});
        out.push_back(std::move(r));
    }
    for (const auto& p : empirical_pairs()) {
        const auto mu = make_family(p.mu);
        const auto nu = make_family(p.nu);
        const double exact = wq_quantile(*mu, *nu, 2, s).value;
        std::vector<std::pair<std::string, double>> fields{{"w2_quantile", exact}};
        std::vector<double> errs;
        for (std::size_t n : {100u, 1000u, 10000u}) {
            const auto xs = stratified_sample(*mu, n);
            const auto ys = stratified_sample(*nu, n);
            errs.push_back(std::abs(w2_empirical(xs, ys).value - exact));
            fields.push_back({"error_" + std::to_string(n), errs.back()});
        }
        const bool decays = errs[1] <= errs[0] && errs[2] <= errs[1];
        out.push_back(make_record("empirical_convergence", p.label, fields, decays && errs[2] <= 1e-2));
    }
    for (const auto& p : standard_pairs()) {
        const auto mu = make_family(p.mu);
        const auto nu = make_family(p.nu);
        const double w2 = wq_quantile(*mu, *nu, 2, s).value;
        const double w2_rev = wq_quantile(*nu, *mu, 2, s).value;
        const double w1 = w1_cdf(*mu, *nu, s).value;
        out.push_back(to_record(make_report("w1_le_w2", w1, w2, 1.0, "W1", "W2"), p.label));
        out.push_back(bound_record("symmetry", p.label, std::abs(w2 - w2_rev), 1e-7 * (1.0 + w2)));
        const auto chi = chi_square_sq(*nu, *mu, s);
        if (chi.finite()) {
            const double h = rel_entropy(*nu, *mu, s).value;
            out.push_back(to_record(make_report("entropy_le_chi2", h, chi.value, 1.0, "H", "chi2"), p.label));
        }
    }
    const auto laws = reference_laws();
    std::mt19937_64 rng(cfg.seed);
    for (int t = 0; t < 20; ++t) {
        const auto& a = laws[rng() % laws.size()];
        const auto& b = laws[rng() % laws.size()];
        const auto& c = laws[rng() % laws.size()];
        const auto la = make_family(a.spec);
        const auto lb = make_family(b.spec);
        const auto lc = make_family(c.spec);
        const double ac = wq_quantile(*la, *lc, 2, s).value;
        const double ab = wq_quantile(*la, *lb, 2, s).value;
        const double bc = wq_quantile(*lb, *lc, 2, s).value;
        out.push_back(to_record(make_report("triangle", ac, ab + bc, 1.0, "W2(a,c)", "W2(a,b)+W2(b,c)"),
                                a.label + "|" + b.label + "|" + c.label));
    }
    const Gaussian base(0.0, 1.0);
    for (double a : {0.25, 0.5, 1.0}) {
        const Gaussian shifted(a, 1.0);
        const std::string label = "gaussian(0,1)|gaussian(" + num(a) + ",1)";
        const double chi = chi_square_sq(shifted, base, s).value;
        const double h = rel_entropy(shifted, base, s).value;
        out.push_back(bound_record("chi2_closed_form", label, relative_gap(chi, std::expm1(a * a)), 1e-7));
        out.push_back(bound_record("entropy_closed_form", label, relative_gap(h, 0.5 * a * a), 1e-7));
    }
}

std::optional<double> unit_gaussian_shift(const NamedPair& p)
{
    if (p.mu.family != Family::gaussian || p.nu.family != Family::gaussian) return std::nullopt;
    if (p.mu.param("mean") != 0.0 || p.mu.param("sd") != 1.0 || p.nu.param("sd") != 1.0) return std::nullopt;
    return p.nu.param("mean");
}

void mollify_suite(const RunConfig& cfg, std::vector<Record>& out)
{
    for (const auto& p : mollify_pairs()) {
        const auto mu = make_family(p.mu);
        const auto nu = make_family(p.nu);
        const auto shift = unit_gaussian_shift(p);
        for (double n : kMollifyLevels) {
            const std::string label = p.label + " n=" + num(n);
            const auto cr = check_contractions(mu, nu, n, cfg.settings);
            out.push_back(to_record(cr.w2, label));
            out.push_back(to_record(cr.chi, label));
            if (shift) {
                const double a = *shift;
                const double exact = std::expm1(a * a * n / (n + 1.0));
                Record r = bound_record("chi_mollified_closed_form", label, relative_gap(cr.chi.lhs, exact), 1e-6);
                r.fields.push_back({"closed_form", exact});
                out.push_back(std::move(r));
            }
        }
    }
}

std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t i)
{
    return seed ^ (0x9E3779B97F4A7C15ULL * (i + 1));
}

void tensor_suite(const RunConfig& cfg, std::vector<Record>& out)
{
    const double golden = 2.0 + std::sqrt(5.0);
    const double unit = tensor_constant({1.0, 1, 1.0, 1});
    out.push_back(bound_record("tensor_constant", "C1=C2=1,d1=d2=1", std::abs(unit - golden),
                               4.0 * std::numeric_limits<double>::epsilon() * golden));

    std::mt19937_64 rng(cfg.seed);
    auto uniform01 = [&] { return static_cast<double>(rng() >> 11) * 0x1p-53; };
    for (int i = 0; i < 100; ++i) {
        const TensorConstantInput in{std::exp(std::log(0.01) + uniform01() * std::log(1000.0)),
                                     1 + static_cast<int>(rng() % 5),
                                     std::exp(std::log(0.01) + uniform01() * std::log(1000.0)),
                                     1 + static_cast<int>(rng() % 5)};
        const double t = tensor_constant(in);
        const double swapped = tensor_constant({in.C2, in.d2, in.C1, in.d1});
        const std::string label = "sweep#" + std::to_string(i);
        Record sym = bound_record("tensor_symmetry", label, std::abs(t - swapped), 0.0);
        sym.fields.insert(sym.fields.end(), {{"C1", in.C1}, {"d1", in.d1}, {"C2", in.C2}, {"d2", in.d2}});
        out.push_back(std::move(sym));
        out.push_back(to_record(make_report("tensor_dominates", std::max(in.C1, in.C2), t, t,
                                            "max(C1,C2)", "constant", 0.0),
                                label));
    }

    for (std::uint64_t i = 0; i < 1000; ++i) {
        const auto dpd = random_product_density(derived_seed(cfg.seed, i));
        const double alpha = i % 2 == 0 ? 1.5 : 3.0;
        const double beta = (i / 2) % 2 == 0 ? alpha : 2.0 * alpha;
        Record r = to_record(check_rhogd_lemma(dpd, alpha, beta), "random#" + std::to_string(i));
        r.fields.insert(r.fields.end(), {{"alpha", alpha}, {"beta", beta}});
        out.push_back(std::move(r));
    }

    for (const auto& law : reference_laws()) {
        const auto mu = make_family(law.spec);
        const double C = 16.0 * muckenhoupt_b(*mu, cfg.settings).b;
        const auto m = check_moment_lemma(*mu, C, cfg.settings);
        out.push_back(to_record(m.second, law.label));
        out.push_back(to_record(m.fourth, law.label));
    }
}

Record shift_record(const ShiftCounterexample& c)
{
    const double tol = 1e-6;
    const bool ok = relative_gap(c.w2_sq_numeric, c.w2_sq) <= tol &&
                    relative_gap(c.tail_integral, c.lower_bound) <= tol &&
                    c.ratio >= c.lower_bound / c.w2_sq * (1.0 - tol);
    return make_record("counterexample_shift", "m=" + num(c.m),
                       {{"m", c.m},
                        {"w2_sq", c.w2_sq},
                        {"w2_sq_numeric", c.w2_sq_numeric},
                        {"lower_bound", c.lower_bound},
                        {"tail_integral", c.tail_integral},
                        {"fg_int", c.fg_int},
                        {"ratio", c.ratio}},
                       ok);
}

Record gn_record(const GnCounterexample& c)
{
    const bool ok = c.bounds_hold(1e-10) && std::abs(c.chi_sq - c.chi_series) <= 1e-8;
    return make_record("counterexample_gn", "n=" + std::to_string(c.n),
                       {{"n", static_cast<double>(c.n)},
                        {"chi_sq", c.chi_sq},
                        {"chi_series", c.chi_series},
                        {"chi_lb", c.chi_lb},
                        {"fg_int", c.fg_int},
                        {"fg_ub", c.fg_ub},
                        {"ratio", c.chi_sq / c.fg_int}},
                       ok);
}

void counterexample_suite(const RunConfig& cfg, std::vector<Record>& out)
{
    double prev = 0.0;
    bool increasing = true;
    for (int m = 1; m <= 5; ++m) {
        const auto c = counterexample_shift(m, cfg.settings);
        increasing = increasing && c.ratio > prev;
        prev = c.ratio;
        out.push_back(shift_record(c));
    }
    out.push_back(make_record("shift_ratio_increasing", "m=1..5", {{"last_ratio", prev}}, increasing));
    double last = 0.0;
    for (int n = 2; n <= 8; ++n) {
        const auto c = counterexample_gn(n, cfg.settings);
        last = c.chi_sq / c.fg_int;
        out.push_back(gn_record(c));
    }
    out.push_back(make_record("gn_ratio_unbounded", "n=8", {{"ratio", last}, {"threshold", 10.0}}, last > 10.0));
}

// ---- commands -------------------------------------------------------------

void distance_command(const RunConfig& cfg, std::vector<Record>& out)
{
    const auto mu = require_law(cfg.mu_spec, "--mu");
    const auto nu = require_law(cfg.nu_spec, "--nu");
    const std::string label = pair_label(cfg);
    auto emit = [&](const TransportResult& r) {
        out.push_back(make_record("distance", label,
                                  {{"value", r.value}, {"power", static_cast<double>(r.power)},
                                   {"est_error", r.est_error}},
                                  true));
        out.back().label += " " + std::string(method_name(r.method));
    };
    const bool all = cfg.method == "all";
    if (cfg.method != "quantile" && cfg.method != "cdf" && cfg.method != "double" && !all)
        throw SpecError("unknown distance method: " + cfg.method);
    if (cfg.method == "quantile" || all) emit(wq_quantile(*mu, *nu, cfg.q, cfg.settings));
    if (cfg.method == "cdf" || (all && cfg.q == 1)) {
        if (cfg.q != 1) throw SpecError("the cdf method computes W1; pass --q 1");
        emit(w1_cdf(*mu, *nu, cfg.settings));
    }
    if (cfg.method == "double" || (all && cfg.q == 2)) {
        if (cfg.q != 2) throw SpecError("the double-integral method computes W2; pass --q 2");
        emit(w2_double_integral(*mu, *nu, cfg.settings));
    }
}

void divergence_command(const RunConfig& cfg, std::vector<Record>& out)
{
    const auto mu = require_law(cfg.mu_spec, "--mu");
    const auto nu = require_law(cfg.nu_spec, "--nu");
    if (cfg.kind != "chi2" && cfg.kind != "entropy" && cfg.kind != "both")
        throw SpecError("unknown divergence kind: " + cfg.kind);
    auto emit = [&](const char* check, const DivergenceResult& r) {
        out.push_back(make_record(check, pair_label(cfg),
                                  {{"value", r.value}, {"abs_cont", r.abs_cont ? 1.0 : 0.0},
                                   {"est_error", r.est_error}},
                                  true));
    };
    if (cfg.kind != "entropy") emit("chi2", chi_square_sq(*nu, *mu, cfg.settings));
    if (cfg.kind != "chi2") emit("entropy", rel_entropy(*nu, *mu, cfg.settings));
}

void muckenhoupt_command(const RunConfig& cfg, std::vector<Record>& out)
{
    const auto mu = require_law(cfg.mu_spec, "--mu");
    const auto r = muckenhoupt_b(*mu, cfg.settings);
    out.push_back(make_record("muckenhoupt", *cfg.mu_spec,
                              {{"b", r.b},
                               {"median", r.median},
                               {"right_sup", r.right.value},
                               {"right_arg", r.right.arg},
                               {"right_at_infinity", r.right.at_infinity ? 1.0 : 0.0},
                               {"left_sup", r.left.value},
                               {"left_arg", r.left.arg},
                               {"left_at_infinity", r.left.at_infinity ? 1.0 : 0.0}},
                              true));
}

void chain_command(const RunConfig& cfg, std::vector<Record>& out)
{
    const auto mu = require_law(cfg.mu_spec, "--mu");
    const auto nu = require_law(cfg.nu_spec, "--nu");
    const std::string label = pair_label(cfg);
    out.push_back(to_record(verify_prop1(*mu, *nu, cfg.settings), label));
    const double b = muckenhoupt_b(*mu, cfg.settings).b;
    out.push_back(to_record(verify_prop2(*mu, *nu, cfg.settings, b), label));
    out.push_back(to_record(verify_tchi_from_b(*mu, *nu, cfg.settings, b), label));
}

void counterexample_command(const RunConfig& cfg, std::vector<Record>& out)
{
    if (cfg.example == "shift") out.push_back(shift_record(counterexample_shift(cfg.shift, cfg.settings)));
    else if (cfg.example == "gn") out.push_back(gn_record(counterexample_gn(cfg.gn_index, cfg.settings)));
    else throw SpecError("unknown counterexample: " + cfg.example + " (expected shift or gn)");
}

void mollify_command(const RunConfig& cfg, std::vector<Record>& out)
{
    const auto mu = require_law(cfg.mu_spec, "--mu");
    const auto nu = require_law(cfg.nu_spec, "--nu");
    const std::string label = pair_label(cfg) + " n=" + num(cfg.level);
    const auto cr = check_contractions(mu, nu, cfg.level, cfg.settings);
    out.push_back(to_record(cr.w2, label));
    out.push_back(to_record(cr.chi, label));
}

void tensorize_command(const RunConfig& cfg, std::vector<Record>& out)
{
    const auto& in = cfg.tensor;
    out.push_back(make_record("tensor_constant", "",
                              {{"C1", in.C1}, {"d1", static_cast<double>(in.d1)},
                               {"C2", in.C2}, {"d2", static_cast<double>(in.d2)},
                               {"value", tensor_constant(in)}},
                              true));
    if (!cfg.mu_spec) return;
    const auto mu = require_law(cfg.mu_spec, "--mu");
    const double C = cfg.certificate ? *cfg.certificate : 16.0 * muckenhoupt_b(*mu, cfg.settings).b;
    const auto m = check_moment_lemma(*mu, C, cfg.settings);
    out.push_back(to_record(m.second, *cfg.mu_spec));
    out.push_back(to_record(m.fourth, *cfg.mu_spec));
}

// ---- encoding -------------------------------------------------------------

ojson settings_json(const QuadSettings& s)
{
    ojson j;
    j["abs_tol"] = s.abs_tol;
    j["rel_tol"] = s.rel_tol;
    j["max_depth"] = s.max_depth;
    j["trunc_q"] = s.trunc_q;
    return j;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

} // namespace

Record to_record(const InequalityReport& r, std::string label)
{
    Record out;
    out.check = r.check;
    out.label = std::move(label);
    out.fields = {{"lhs", r.lhs}, {"rhs", r.rhs}, {"constant", r.constant}, {"margin", r.margin}};
    out.passed = r.passed;
    out.vacuous = r.vacuous;
    return out;
}

void run_suite(const std::string& name, const RunConfig& cfg, std::vector<Record>& out)
{
    if (name == "chain") chain_suite(cfg, out);
    else if (name == "metrics") metrics_suite(cfg, out);
    else if (name == "mollify") mollify_suite(cfg, out);
    else if (name == "tensor") tensor_suite(cfg, out);
    else if (name == "counterexamples") counterexample_suite(cfg, out);
    else throw SpecError("unknown suite: " + name);
}

void execute(const RunConfig& cfg, std::vector<Record>& out)
{
    cfg.settings.validate();
    switch (cfg.command) {
    case Command::distance: distance_command(cfg, out); break;
    case Command::divergence: divergence_command(cfg, out); break;
    case Command::muckenhoupt: muckenhoupt_command(cfg, out); break;
    case Command::verify_chain: chain_command(cfg, out); break;
    case Command::counterexample: counterexample_command(cfg, out); break;
    case Command::mollify_check: mollify_command(cfg, out); break;
    case Command::tensorize: tensorize_command(cfg, out); break;
    case Command::suite: run_suite(cfg.suite, cfg, out); break;
    }
}

void write_records(const std::vector<Record>& records, const RunConfig& cfg, std::ostream& out)
{
    const QuadSettings& s = cfg.settings;
    switch (cfg.output) {
    case OutputFormat::json:
        for (const auto& r : records) {
            ojson j;
            j["check"] = r.check;
            j["label"] = r.label;
            for (const auto& [k, v] : r.fields) j[k] = json_num(v);
            j["passed"] = r.passed;
            j["vacuous"] = r.vacuous;
            j["settings"] = settings_json(s);
            out << j.dump() << '\n';
        }
        break;
    case OutputFormat::csv:
        out << "report,check,label,field,value\n";
        for (std::size_t i = 0; i < records.size(); ++i) {
            const auto& r = records[i];
            const std::string head = std::to_string(i) + "," + csv_field(r.check) + "," + csv_field(r.label) + ",";
            for (const auto& [k, v] : r.fields) out << head << k << ',' << num(v) << '\n';
            out << head << "passed," << (r.passed ? 1 : 0) << '\n';
            out << head << "vacuous," << (r.vacuous ? 1 : 0) << '\n';
            out << head << "abs_tol," << num(s.abs_tol) << '\n';
            out << head << "rel_tol," << num(s.rel_tol) << '\n';
            out << head << "max_depth," << s.max_depth << '\n';
            out << head << "trunc_q," << num(s.trunc_q) << '\n';
        }
        break;
    case OutputFormat::human:
        out << "settings: abs_tol=" << num(s.abs_tol) << " rel_tol=" << num(s.rel_tol)
            << " max_depth=" << s.max_depth << " trunc_q=" << num(s.trunc_q) << '\n';
        for (const auto& r : records) {
            out << (r.passed ? (r.vacuous ? "PASS*" : "PASS ") : "FAIL ") << ' ' << r.check;
            if (!r.label.empty()) out << " [" << r.label << "]";
            for (const auto& [k, v] : r.fields) out << ' ' << k << '=' << num(v);
            out << '\n';
        }
        break;
    }
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    std::vector<Record> records;
    int status = 0;
    try {
        execute(cfg, records);
    } catch (const AccuracyError& e) {
        err << "accuracy error: " << e.what() << " (best estimate " << num(e.best_estimate())
            << ", error estimate " << num(e.error_estimate()) << ")\n";
        status = 3;
    } catch (const EvaluationError& e) {
        err << "evaluation error: " << e.what() << '\n';
        status = 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    write_records(records, cfg, out);
    if (status != 0) return status;
    for (const auto& r : records)
        if (!r.passed) return 1;
    return 0;
}

int cli_main(int argc, char** argv)
{
    CLI::App app{"One-dimensional transport and functional-inequality toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string format = "json";
    std::string mu;
    std::string nu;
    std::optional<double> rel_tol;
    std::optional<double> abs_tol;
    std::optional<double> trunc_q;
    std::optional<int> max_depth;
    std::optional<double> certificate;

    app.add_option("--format", format, "json, csv or human")->check(CLI::IsMember({"json", "csv", "human"}));
    app.add_option("--tol", rel_tol, "relative integration tolerance");
    app.add_option("--abs-tol", abs_tol, "absolute integration tolerance");
    app.add_option("--trunc-q", trunc_q, "truncation quantile for unbounded domains");
    app.add_option("--max-depth", max_depth, "subdivision depth limit");
    app.add_option("--seed", cfg.seed, "seed for randomized suites");

    auto add_mu = [&](CLI::App* sub, bool required) {
        auto* o = sub->add_option("--mu", mu, "reference law: shorthand, inline JSON or JSON file");
        if (required) o->required();
    };
    auto add_nu = [&](CLI::App* sub) {
        sub->add_option("--nu", nu, "second law: shorthand, inline JSON or JSON file")->required();
    };

    auto* distance = app.add_subcommand("distance", "Wasserstein distance W_q(mu, nu)");
    add_mu(distance, true);
    add_nu(distance);
    distance->add_option("--q", cfg.q, "transport power")->check(CLI::PositiveNumber);
    distance->add_option("--method", cfg.method, "quantile, cdf, double or all");

    auto* divergence = app.add_subcommand("divergence", "chi-square and relative entropy of nu w.r.t. mu");
    add_mu(divergence, true);
    add_nu(divergence);
    divergence->add_option("--kind", cfg.kind, "chi2, entropy or both");

    auto* muck = app.add_subcommand("muckenhoupt", "Muckenhoupt constant b of mu");
    add_mu(muck, true);

    auto* chain = app.add_subcommand("verify-chain", "W2^2 <= 4 int (F-G)^2/f <= 16 b chi2");
    add_mu(chain, true);
    add_nu(chain);

    auto* counter = app.add_subcommand("counterexample", "shifted-Laplace or g_n counterexample");
    counter->add_option("example", cfg.example, "shift or gn")->required();
    counter->add_option("--m", cfg.shift, "shift for the Laplace example");
    counter->add_option("--n", cfg.gn_index, "index of the g_n law");

    auto* moll = app.add_subcommand("mollify-check", "contraction of W2 and chi2 under mollification");
    add_mu(moll, true);
    add_nu(moll);
    moll->add_option("--n", cfg.level, "mollifier inverse variance");

    auto* tens = app.add_subcommand("tensorize", "tensorized constant and moment lemma");
    tens->add_option("--c1", cfg.tensor.C1);
    tens->add_option("--d1", cfg.tensor.d1);
    tens->add_option("--c2", cfg.tensor.C2);
    tens->add_option("--d2", cfg.tensor.d2);
    add_mu(tens, false);
    tens->add_option("--C", certificate, "transport constant of mu (default 16 b)");

    auto* suite = app.add_subcommand("suite", "run a verification suite");
    suite->add_option("name", cfg.suite, "chain, metrics, mollify, tensor or counterexamples")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::map<CLI::App*, Command> commands{
        {distance, Command::distance},        {divergence, Command::divergence},
        {muck, Command::muckenhoupt},         {chain, Command::verify_chain},
        {counter, Command::counterexample},   {moll, Command::mollify_check},
        {tens, Command::tensorize},           {suite, Command::suite},
    };
    cfg.command = commands.at(app.get_subcommands().front());
    cfg.output = format == "csv" ? OutputFormat::csv : format == "human" ? OutputFormat::human : OutputFormat::json;
    if (!mu.empty()) cfg.mu_spec = mu;
    if (!nu.empty()) cfg.nu_spec = nu;
    if (rel_tol) cfg.settings.rel_tol = *rel_tol;
    if (abs_tol) cfg.settings.abs_tol = *abs_tol;
    if (trunc_q) cfg.settings.trunc_q = *trunc_q;
    if (max_depth) cfg.settings.max_depth = *max_depth;
    cfg.certificate = certificate;
    return run(cfg, std::cout, std::cerr);
}

} // namespace tchi
