#pragma once

// The Muckenhoupt constant b, the (F-G)^2/f functional, and checks of the
// inequality chain
//     W2^2(mu,nu) <= 4 int (F-G)^2/f <= 16 b chi^2_2(nu|mu)
// together with the two counterexamples showing neither link reverses.

#include <optional>
#include <string>

#include "tchi/distributions.hpp"

namespace tchi {

/// One branch of the two-sided supremum, e.g.
/// sup_{x >= m} P(X > x) * int_m^x dy / f(y).
struct BranchSup {
    double value = 0.0;
    double arg = 0.0;
    /// The supremum was still increasing at the truncation point; `value`
    /// is then a monotone-limit extrapolation and `arg` the last grid point.
    bool at_infinity = false;
};

struct MuckenhouptResult {
    double b = 0.0;
    BranchSup right;
    BranchSup left;
    double median = 0.0;

    bool finite() const { return b < kInf; }
};

struct InequalityReport {
    std::string check;
    double lhs = 0.0;
    double rhs = 0.0;
    double constant = 0.0;
    double margin = 0.0;
    bool passed = false;
    /// Passed only because the right-hand side is infinite.
    bool vacuous = false;
    std::string lhs_label;
    std::string rhs_label;
};

/// 1e-6 * (1 + |lhs| + |rhs|).
double report_tolerance(double lhs, double rhs);

/// Builds a report: passed iff lhs <= rhs + tol; infinite rhs is a vacuous pass.
InequalityReport make_report(std::string check, double lhs, double rhs, double constant,
                             std::string lhs_label, std::string rhs_label,
                             std::optional<double> tol = std::nullopt);

/// Throws PositivityError unless mu has a positive density.
MuckenhouptResult muckenhoupt_b(const Distribution1D& mu, const QuadSettings& s);

/// int (F-G)^2/f over `range` (default: the whole line); +inf when it
/// diverges or nu puts mass where f vanishes.
double fg_ratio_integral(const Distribution1D& mu, const Distribution1D& nu, const QuadSettings& s,
                         std::optional<Interval> range = std::nullopt);

/// W2^2 (quantile route) <= 4 int (F-G)^2/f.
InequalityReport verify_prop1(const Distribution1D& mu, const Distribution1D& nu,
                              const QuadSettings& s);

/// int (F-G)^2/f <= 4 b chi^2_2(nu|mu).
InequalityReport verify_prop2(const Distribution1D& mu, const Distribution1D& nu,
                              const QuadSettings& s);
InequalityReport verify_prop2(const Distribution1D& mu, const Distribution1D& nu,
                              const QuadSettings& s, double b);

/// W2^2 <= 16 b chi^2_2(nu|mu).
InequalityReport verify_tchi_from_b(const Distribution1D& mu, const Distribution1D& nu,
                                    const QuadSettings& s);
InequalityReport verify_tchi_from_b(const Distribution1D& mu, const Distribution1D& nu,
                                    const QuadSettings& s, double b);

/// Transport-chi-square constant obtained from a Poincare constant: 32 C.
double tchi_constant_from_poincare(double C);

/// Bound 2 C on b implied by a Poincare constant C.
double poincare_b_bridge(double C);

struct ShiftCounterexample {
    double m = 0.0;
    double w2_sq = 0.0;          ///< m^2
    double w2_sq_numeric = 0.0;  ///< quantile-route W2^2
    double lower_bound = 0.0;    ///< e^{-m}(e^m - 1)^2 / 2
    double tail_integral = 0.0;  ///< int_m^inf (F-G)^2/f by quadrature
    double fg_int = 0.0;         ///< int (F-G)^2/f over the line
    double ratio = 0.0;          ///< fg_int / w2_sq
};

/// mu = laplace(0,1), nu = laplace(m,1). Throws DomainError for m <= 0.
ShiftCounterexample counterexample_shift(double m, const QuadSettings& s);

struct GnCounterexample {
    int n = 0;
    double chi_sq = 0.0;     ///< chi^2_2(g_n | laplace) by quadrature
    double chi_series = 0.0; ///< 2 sum_{k>=n} ln(1 + (e-1)/2 e^{-(k+1)/2}) - e^{-n}
    double chi_lb = 0.0;     ///< (sqrt(e)+1) e^{-(n+1)/2} - e^{-n}
    double fg_int = 0.0;     ///< int (F - G_n)^2 / f
    double fg_ub = 0.0;      ///< (e^2 - 2e - 1)/(e - 1) e^{-n}

    bool bounds_hold(double tol) const { return chi_sq >= chi_lb - tol && fg_int <= fg_ub + tol; }
};

GnCounterexample counterexample_gn(int n, const QuadSettings& s);

/// Closed-form series for chi^2_2(g_n | laplace(0,1)).
double gn_chi_square_series(int n);

} // namespace tchi
