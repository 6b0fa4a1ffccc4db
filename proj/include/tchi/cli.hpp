#pragma once

// Command dispatch, verification suites and report encoding behind the
// `tchi` executable.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tchi/inequalities.hpp"
#include "tchi/tensorization.hpp"

namespace tchi {

enum class Command {
    distance,
    divergence,
    muckenhoupt,
    verify_chain,
    counterexample,
    mollify_check,
    tensorize,
    suite,
};

enum class OutputFormat { json, csv, human };

inline constexpr std::uint64_t kDefaultSeed = 7;

struct RunConfig {
    Command command = Command::suite;
    /// Shorthand such as `laplace(0,1)`, inline JSON, or a path to a JSON file.
    std::optional<std::string> mu_spec;
    std::optional<std::string> nu_spec;
    QuadSettings settings;
    OutputFormat output = OutputFormat::json;
    std::uint64_t seed = kDefaultSeed;

    int q = 2;                        ///< distance
    std::string method = "quantile";  ///< distance: quantile | cdf | double | all
    std::string kind = "both";        ///< divergence: chi2 | entropy | both
    std::string example = "shift";    ///< counterexample: shift | gn
    double shift = 1.0;               ///< counterexample shift --m
    int gn_index = 4;                 ///< counterexample gn --n
    double level = 10.0;              ///< mollify-check --n
    std::string suite = "chain";
    TensorConstantInput tensor;
    std::optional<double> certificate; ///< tensorize --C, else 16 b(mu)
};

/// One line of output: a check with its numeric fields in display order.
struct Record {
    std::string check;
    std::string label;
    std::vector<std::pair<std::string, double>> fields;
    bool passed = true;
    bool vacuous = false;
};

Record to_record(const InequalityReport& r, std::string label);

/// Appends the records of a named suite: chain, metrics, mollify, tensor,
/// counterexamples. Throws SpecError for an unknown name.
void run_suite(const std::string& name, const RunConfig& cfg, std::vector<Record>& out);

/// Appends the records of one command in output order. Records produced
/// before an exception stay in `out`.
void execute(const RunConfig& cfg, std::vector<Record>& out);

void write_records(const std::vector<Record>& records, const RunConfig& cfg, std::ostream& out);

/// 0 all passed, 1 a check failed, 2 usage or spec error, 3 accuracy error.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and runs; the body of the `tchi` executable.
int cli_main(int argc, char** argv);

} // namespace tchi
