#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "tchi/cli.hpp"

using namespace tchi;

namespace {

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome run_config(const RunConfig& cfg)
{
    std::ostringstream out;
    std::ostringstream err;
    const int status = run(cfg, out, err);
    return {status, out.str(), err.str()};
}

int run_args(std::vector<std::string> args)
{
    args.insert(args.begin(), "tchi");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return cli_main(static_cast<int>(argv.size()), argv.data());
}

std::vector<nlohmann::json> json_lines(const std::string& text)
{
    std::vector<nlohmann::json> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) lines.push_back(nlohmann::json::parse(line));
    return lines;
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> cols(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (c == '"' && quoted && i + 1 < line.size() && line[i + 1] == '"') {
            cols.back() += '"';
            ++i;
        } else if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            cols.emplace_back();
        } else {
            cols.back() += c;
        }
    }
    return cols;
}

RunConfig pair_config(Command c, std::string mu, std::string nu)
{
    RunConfig cfg;
    cfg.command = c;
    cfg.mu_spec = std::move(mu);
    cfg.nu_spec = std::move(nu);
    return cfg;
}

} // namespace

TEST_CASE("distance of the shifted Laplace pair")
{
    const auto o = run_config(pair_config(Command::distance, "laplace(0,1)", "laplace(1,1)"));
    CHECK(o.status == 0);
    const auto lines = json_lines(o.out);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(lines[0]["settings"]["rel_tol"].get<double>() == 1e-8);
    CHECK(lines[0]["settings"]["max_depth"].get<int>() == 60);
}

TEST_CASE("verify-chain reports three passing checks")
{
    const auto o = run_config(pair_config(Command::verify_chain, "laplace(0,1)", "gaussian(0.3,1)"));
    CHECK(o.status == 0);
    const auto lines = json_lines(o.out);
    REQUIRE(lines.size() == 3);
    for (const auto& j : lines) {
        CHECK(j["passed"].get<bool>());
        for (const char* key : {"check", "lhs", "rhs", "constant", "margin", "vacuous", "settings"})
            CHECK(j.contains(key));
    }
    CHECK(lines[0]["check"] == "prop1");
    CHECK(lines[2]["check"] == "tchi_16b");
}

TEST_CASE("vacuous pass is flagged and exits zero")
{
    const auto o = run_config(pair_config(Command::verify_chain, "gaussian(0,1)", "laplace(0,1)"));
    CHECK(o.status == 0);
    const auto lines = json_lines(o.out);
    REQUIRE(lines.size() == 3);
    CHECK(lines[1]["vacuous"].get<bool>());
    CHECK(lines[1]["rhs"] == "inf");
}

TEST_CASE("g_n counterexample fields")
{
    RunConfig cfg;
    cfg.command = Command::counterexample;
    cfg.example = "gn";
    cfg.gn_index = 4;
    const auto o = run_config(cfg);
    CHECK(o.status == 0);
    const auto lines = json_lines(o.out);
    REQUIRE(lines.size() == 1);
    for (const char* key : {"chi_sq", "chi_lb", "fg_int", "fg_ub"}) CHECK(lines[0].contains(key));
    CHECK(lines[0]["chi_sq"].get<double>() >= lines[0]["chi_lb"].get<double>());
    CHECK(lines[0]["fg_int"].get<double>() <= lines[0]["fg_ub"].get<double>());
}

TEST_CASE("exit codes")
{
    SUBCASE("spec errors give 2")
    {
        CHECK(run_config(pair_config(Command::distance, "weibull(1,2)", "laplace(0,1)")).status == 2);
        CHECK(run_config(pair_config(Command::distance, "/no/such/file.json", "laplace(0,1)")).status == 2);
        RunConfig missing;
        missing.command = Command::distance;
        CHECK(run_config(missing).status == 2);
        RunConfig bad_suite;
        bad_suite.suite = "nonsense";
        CHECK(run_config(bad_suite).status == 2);
    }
    SUBCASE("a failed check gives 1")
    {
        RunConfig cfg;
        cfg.command = Command::tensorize;
        cfg.mu_spec = "laplace(0,1)";
        cfg.certificate = 1.0;
        CHECK(run_config(cfg).status == 1);
    }
    SUBCASE("an accuracy failure gives 3 and keeps partial output")
    {
        auto cfg = pair_config(Command::distance, "laplace(0,1)", "gaussian(0.3,1)");
        cfg.method = "all";
        cfg.settings.max_depth = 1;
        cfg.settings.abs_tol = 1e-15;
        cfg.settings.rel_tol = 1e-15;
        const auto o = run_config(cfg);
        CHECK(o.status == 3);
        CHECK(o.err.find("accuracy") != std::string::npos);
    }
    SUBCASE("argument parsing")
    {
        CHECK(run_args({"distance", "--mu", "laplace(0,1)"}) == 2);
        CHECK(run_args({"frobnicate"}) == 2);
        CHECK(run_args({"--format", "xml", "suite", "chain"}) == 2);
        CHECK(run_args({"--format", "human", "tensorize", "--c1", "1", "--c2", "1"}) == 0);
        CHECK(run_args({"--help"}) == 0);
    }
}

TEST_CASE("JSON spec files")
{
    const auto path = std::filesystem::temp_directory_path() / "tchi_test_spec.json";
    {
        std::ofstream f(path);
        f << R"({"family": "mixture", "components": [
            {"weight": 0.5, "dist": {"family": "gaussian", "params": {"mean": -1, "sd": 1}}},
            {"weight": 0.5, "dist": {"family": "gaussian", "params": {"mean": 1, "sd": 1}}}]})";
    }
    const auto from_file = run_config(pair_config(Command::distance, path.string(), "gaussian(0,1)"));
    std::filesystem::remove(path);
    CHECK(from_file.status == 0);
    const auto lines = json_lines(from_file.out);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0]["value"].get<double>() > 0.0);
}

TEST_CASE("output is deterministic and encodings agree")
{
    auto cfg = pair_config(Command::verify_chain, "laplace(0,1)", "laplace(0.5,1)");
    const auto a = run_config(cfg);
    const auto b = run_config(cfg);
    CHECK(a.out == b.out);

    cfg.output = OutputFormat::csv;
    const auto csv = run_config(cfg);
    std::map<std::pair<int, std::string>, double> csv_values;
    std::istringstream in(csv.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "report,check,label,field,value");
    while (std::getline(in, line)) {
        const auto cols = split_csv(line);
        REQUIRE(cols.size() == 5);
        csv_values[{std::stoi(cols[0]), cols[3]}] = std::strtod(cols[4].c_str(), nullptr);
    }
    const auto lines = json_lines(a.out);
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (const char* key : {"lhs", "rhs", "constant", "margin"}) {
            const double j = lines[i][key].get<double>();
            const double c = csv_values.at({static_cast<int>(i), key});
            CHECK(std::abs(j - c) <= 1e-12 * std::max(1.0, std::abs(j)));
        }

    cfg.output = OutputFormat::human;
    const auto human = run_config(cfg);
    CHECK(human.out.rfind("settings:", 0) == 0);
    CHECK(human.out.find("PASS") != std::string::npos);
}

TEST_CASE("tensor suite with the default seed")
{
    RunConfig cfg;
    cfg.suite = "tensor";
    CHECK(cfg.seed == 7);
    const auto o = run_config(cfg);
    CHECK(o.status == 0);
    int rhogd = 0;
    for (const auto& j : json_lines(o.out)) {
        CHECK(j["passed"].get<bool>());
        if (j["check"] == "rhogd") ++rhogd;
    }
    CHECK(rhogd == 1000);
    CHECK(run_config(cfg).out == o.out);
}
