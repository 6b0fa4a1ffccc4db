#pragma once

// Built-in laws and pairs exercised by the verification suites.

#include <string>
#include <vector>

#include "tchi/distribution_spec.hpp"

namespace tchi {

struct NamedLaw {
    std::string label;
    DistributionSpec spec;
};

/// mu is the reference law (positive density), nu the perturbed one.
struct NamedPair {
    std::string label;
    DistributionSpec mu;
    DistributionSpec nu;
};

/// Reference laws with a positive density and finite Muckenhoupt constant.
std::vector<NamedLaw> reference_laws();

/// The pair family behind the chain suite, sorted by label.
std::vector<NamedPair> standard_pairs();

/// Pairs on which the quantile and double-integral routes are compared.
std::vector<NamedPair> agreement_pairs();

/// Smooth pairs for the empirical-convergence check.
std::vector<NamedPair> empirical_pairs();

/// Pairs with finite W2 and chi-square used for the mollification checks.
std::vector<NamedPair> mollify_pairs();

} // namespace tchi
