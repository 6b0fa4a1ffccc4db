#pragma once

// The tensorized transport-chi-square constant for a product of two laws,
// and checks of its two supporting lemmas.

#include <cstdint>
#include <vector>

#include "tchi/distributions.hpp"
#include "tchi/inequalities.hpp"

namespace tchi {

struct TensorConstantInput {
    double C1 = 1.0;
    int d1 = 1;
    double C2 = 1.0;
    int d2 = 1;
};

/// min(C1 + C2(1 + sqrt((3 d2 + 2) d2)), C2 + C1(1 + sqrt((3 d1 + 2) d1))).
/// Throws DomainError unless C1, C2 > 0 and d1, d2 >= 1.
double tensor_constant(const TensorConstantInput& in);

struct MomentLemmaReport {
    double mean = 0.0;
    InequalityReport second; ///< centered m2 <= C
    InequalityReport fourth; ///< centered m4 <= 5 C^2

    bool passed() const { return second.passed && fourth.passed; }
};

/// Centered moments of mu against the bounds implied by T_chi(C) in d = 1.
MomentLemmaReport check_moment_lemma(const Distribution1D& mu, double C, const QuadSettings& s);

/// A density rho of nu with respect to mu1 (x) mu2, both marginals discrete.
struct DiscreteProductDensity {
    struct Atom {
        double point;
        double weight;
    };
    std::vector<Atom> grid1;
    std::vector<Atom> grid2;
    std::vector<std::vector<double>> rho; ///< rho[i][j] at (grid1[i], grid2[j])

    /// Throws SpecError on shape mismatch, negative or non-finite entries,
    /// marginal weights not summing to 1, or total nu-mass not equal to 1.
    void validate() const;
    /// rho_1(x1_i) = sum_j rho[i][j] w2_j.
    std::vector<double> first_marginal() const;
};

/// With rho_1 >= 1/alpha as the indicator,
///   lhs = sum (rho/rho_1 - 1)^2 d nu_1 d mu_2 + beta sum (rho_1 - 1)^2 d mu_1
///   rhs = beta sum (rho - 1)^2 d mu_1 d mu_2.
/// Throws DomainError unless beta >= alpha > 0.
InequalityReport check_rhogd_lemma(const DiscreteProductDensity& dpd, double alpha, double beta);

/// A rows x cols product density with random positive weights and an
/// exponentially distributed rho renormalized to unit mass. Reproducible
/// for a given seed.
DiscreteProductDensity random_product_density(std::uint64_t seed, int rows = 5, int cols = 5);

} // namespace tchi
