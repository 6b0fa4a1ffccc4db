#pragma once

// Gaussian mollification mu_n = rho_n * mu, rho_n the centered normal
// density with variance 1/n.

#include <array>
#include <span>
#include <vector>

#include "tchi/distributions.hpp"
#include "tchi/inequalities.hpp"

namespace tchi {

/// rho_n(x) = sqrt(n / 2pi) exp(-n x^2 / 2).
double mollifier_density(double n, double x);

/// The convolution of a law with density and rho_n. Density and both tails
/// are quadratures against the base density over y in [x - 8/sqrt(n),
/// x + 8/sqrt(n)], widened to reach the base median so that far-tail values
/// keep their relative accuracy. Quantiles start from a monotone cubic cache
/// of 512 levels and are polished by Newton steps on the CDF.
class MollifiedLaw final : public Distribution1D {
public:
    MollifiedLaw(DistPtr base, double n, const QuadSettings& s);

    double pdf(double x) const override;
    double cdf(double x) const override;
    double ccdf(double x) const override;
    /// Base support inflated by the 8-sigma reach of the mollifier.
    Interval support() const override;
    std::string describe() const override;

    double n() const { return n_; }
    double bandwidth() const { return sigma_; }
    const Distribution1D& base() const { return *base_; }

    static constexpr int kCacheSize = 512;
    static constexpr double kReach = 8.0;

protected:
    double quantile_impl(double u) const override;
    double upper_quantile_impl(double p) const override;
    double location_hint() const override { return median_hint_; }
    double scale_hint() const override { return scale_; }

private:
    /// Integration range for y around x, clipped to the base support.
    Interval neighbourhood(double x) const;
    std::vector<double> local_breaks(double x, const Interval& iv) const;
    double polish(double x, double level, bool upper) const;

    DistPtr base_;
    double n_;
    double sigma_;
    QuadSettings inner_;
    std::vector<double> base_breaks_;
    double median_hint_ = 0.0;
    double scale_ = 1.0;
    // Quantile caches indexed by t = -ln(2u) (lower) and t = -ln(2p) (upper).
    MonotoneCubic lower_;
    MonotoneCubic upper_;
};

/// n > 0; throws DomainError otherwise.
DistPtr mollify(DistPtr d, double n, const QuadSettings& s);

/// W2(mu_n, nu_n) <= W2(mu, nu).
InequalityReport check_w2_contraction(const DistPtr& mu, const DistPtr& nu, double n,
                                      const QuadSettings& s);

/// chi^2_2(nu_n | mu_n) <= chi^2_2(nu | mu).
InequalityReport check_chi_contraction(const DistPtr& mu, const DistPtr& nu, double n,
                                       const QuadSettings& s);

struct ContractionReports {
    InequalityReport w2;
    InequalityReport chi;
};

/// Both contraction checks on one pair of mollified laws.
ContractionReports check_contractions(const DistPtr& mu, const DistPtr& nu, double n,
                                      const QuadSettings& s);

inline constexpr std::array<double, 3> kMollifyLevels{1.0, 10.0, 100.0};

std::vector<InequalityReport> w2_contraction_sweep(const DistPtr& mu, const DistPtr& nu,
                                                   std::span<const double> levels,
                                                   const QuadSettings& s);
std::vector<InequalityReport> chi_contraction_sweep(const DistPtr& mu, const DistPtr& nu,
                                                    std::span<const double> levels,
                                                    const QuadSettings& s);

} // namespace tchi
