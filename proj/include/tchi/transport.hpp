#pragma once

// Wasserstein distances between laws on the real line, by independent routes:
// the quantile coupling, the CDF L1 identity for W1, the double-integral CDF
// representation of W2^2, and order statistics for empirical measures.

#include <span>
#include <string_view>
#include <vector>

#include "tchi/distributions.hpp"

namespace tchi {

enum class TransportMethod { quantile, cdf_l1, double_integral, empirical };

std::string_view method_name(TransportMethod m);

struct TransportResult {
    double value = 0.0; ///< W_q itself, not its q-th power; +inf when divergent
    int power = 2;
    TransportMethod method = TransportMethod::quantile;
    double est_error = 0.0; ///< on the q-th power

    bool diverged() const { return value == kInf; }
    double powered() const;
};

/// (int_0^1 |F^{-1}(u) - G^{-1}(u)|^q du)^{1/q}. The integral runs over
/// (trunc_q, 1 - trunc_q) in the variable t = -ln(2u) (resp. -ln(2(1-u)));
/// each excluded end contributes trunc_q * |gap at trunc_q|^q, which is also
/// folded into est_error.
TransportResult wq_quantile(const Distribution1D& mu, const Distribution1D& nu, int q,
                            const QuadSettings& s);

/// W1 = int |F - G| dx over the real line.
TransportResult w1_cdf(const Distribution1D& mu, const Distribution1D& nu, const QuadSettings& s);

/// sqrt(2 int int_{x<y} (F(x)-G(y))^+ + (G(x)-F(y))^+ dy dx). The outer
/// integral is restricted to the union of the trunc_q windows; est_error
/// carries trunc_q * width^2 as the neglected-tail allowance.
TransportResult w2_double_integral(const Distribution1D& mu, const Distribution1D& nu,
                                   const QuadSettings& s);

/// Exact W2 between two empirical measures with equally many sorted atoms.
TransportResult w2_empirical(std::span<const double> xs, std::span<const double> ys);

/// Inverse-CDF sample at the stratified ranks (i - 1/2)/n, i = 1..n (sorted).
std::vector<double> stratified_sample(const Distribution1D& d, std::size_t n);

} // namespace tchi
