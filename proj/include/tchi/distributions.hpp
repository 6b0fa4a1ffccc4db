#pragma once

// One-dimensional probability laws: density, CDF, upper tail, and the
// right-continuous generalized inverse of the CDF.

#include <memory>
#include <string>
#include <vector>

#include "tchi/numerics.hpp"

namespace tchi {

class Distribution1D {
public:
    virtual ~Distribution1D() = default;

    virtual double pdf(double x) const = 0;
    virtual double cdf(double x) const = 0;
    /// P(X > x). Overridden wherever 1 - cdf would cancel in the upper tail.
    virtual double ccdf(double x) const { return 1.0 - cdf(x); }

    /// inf{x : F(x) >= u} for u in (0,1). Throws DomainError otherwise.
    double quantile(double u) const;
    /// quantile(1 - p), computed from the upper tail so that tiny p keep
    /// full relative accuracy.
    double upper_quantile(double p) const;
    double median() const { return quantile(0.5); }

    virtual Interval support() const = 0;
    /// True when f > 0 everywhere in the interior of the support.
    virtual bool has_positive_density() const { return true; }
    /// Points where f is discontinuous or has a kink.
    virtual std::vector<double> breakpoints() const { return {}; }
    virtual std::string describe() const = 0;

    /// [Q(q), Q(1-q)]: the window used to truncate unbounded integrals.
    Interval window(double q) const;

protected:
    virtual double quantile_impl(double u) const;
    virtual double upper_quantile_impl(double p) const;
    /// A point near the bulk of the mass; seeds bracket search.
    virtual double location_hint() const { return 0.0; }
    virtual double scale_hint() const { return 1.0; }
};

using DistPtr = std::shared_ptr<const Distribution1D>;

/// inf{x : F(x) >= u} by bracket expansion and bisection with Newton steps
/// on the density. Exact level-set infimum on flat stretches of F.
double invert_cdf(const Distribution1D& d, double u, double hint, double scale);
/// inf{x : P(X > x) <= p}, the same search on the upper tail.
double invert_ccdf(const Distribution1D& d, double p, double hint, double scale);

class Gaussian final : public Distribution1D {
public:
    Gaussian(double mean, double sd);
    double pdf(double x) const override;
    double cdf(double x) const override;
    double ccdf(double x) const override;
    Interval support() const override { return Interval::real_line(); }
    std::string describe() const override;
    double mean() const { return mean_; }
    double sd() const { return sd_; }

protected:
    double quantile_impl(double u) const override;
    double upper_quantile_impl(double p) const override;
    double location_hint() const override { return mean_; }
    double scale_hint() const override { return sd_; }

private:
    double mean_;
    double sd_;
};

/// Density exp(-|x - shift| / scale) / (2 scale).
class Laplace final : public Distribution1D {
public:
    Laplace(double shift, double scale);
    double pdf(double x) const override;
    double cdf(double x) const override;
    double ccdf(double x) const override;
    Interval support() const override { return Interval::real_line(); }
    std::vector<double> breakpoints() const override { return {shift_}; }
    std::string describe() const override;
    double shift() const { return shift_; }
    double scale() const { return scale_; }

protected:
    double quantile_impl(double u) const override;
    double upper_quantile_impl(double p) const override;
    double location_hint() const override { return shift_; }
    double scale_hint() const override { return scale_; }

private:
    double shift_;
    double scale_;
};

class Exponential final : public Distribution1D {
public:
    explicit Exponential(double rate);
    double pdf(double x) const override;
    double cdf(double x) const override;
    double ccdf(double x) const override;
    Interval support() const override { return {0.0, kInf}; }
    std::vector<double> breakpoints() const override { return {0.0}; }
    std::string describe() const override;

protected:
    double quantile_impl(double u) const override;
    double upper_quantile_impl(double p) const override;
    double location_hint() const override { return 1.0 / rate_; }
    double scale_hint() const override { return 1.0 / rate_; }

private:
    double rate_;
};

class Uniform final : public Distribution1D {
public:
    Uniform(double lo, double hi);
    double pdf(double x) const override;
    double cdf(double x) const override;
    double ccdf(double x) const override;
    Interval support() const override { return {lo_, hi_}; }
    std::vector<double> breakpoints() const override { return {lo_, hi_}; }
    std::string describe() const override;

protected:
    double quantile_impl(double u) const override;
    double upper_quantile_impl(double p) const override;
    double location_hint() const override { return 0.5 * (lo_ + hi_); }
    double scale_hint() const override { return hi_ - lo_; }

private:
    double lo_;
    double hi_;
};

class Mixture final : public Distribution1D {
public:
    struct Component {
        double weight;
        DistPtr law;
    };
    /// Weights must be positive and sum to 1 (within 1e-12).
    explicit Mixture(std::vector<Component> components);
    double pdf(double x) const override;
    double cdf(double x) const override;
    double ccdf(double x) const override;
    Interval support() const override;
    bool has_positive_density() const override;
    std::vector<double> breakpoints() const override;
    std::string describe() const override;
    const std::vector<Component>& components() const { return components_; }

protected:
    double location_hint() const override;
    double scale_hint() const override;

private:
    std::vector<Component> components_;
};

/// Piecewise density coef * exp(rate * x) on disjoint ordered pieces
/// [lo, hi); zero elsewhere. Pieces may be unbounded when the exponential
/// decays towards the open end.
class PiecewiseExp final : public Distribution1D {
public:
    struct Piece {
        double lo;
        double hi;
        double coef;
        double rate;
    };
    explicit PiecewiseExp(std::vector<Piece> pieces);
    double pdf(double x) const override;
    double cdf(double x) const override;
    double ccdf(double x) const override;
    Interval support() const override;
    bool has_positive_density() const override;
    std::vector<double> breakpoints() const override;
    std::string describe() const override;
    const std::vector<Piece>& pieces() const { return pieces_; }

protected:
    double location_hint() const override;
    double scale_hint() const override;

private:
    /// Mass of piece i on [a, b] (a, b inside the piece).
    double piece_mass(std::size_t i, double a, double b) const;
    std::vector<Piece> pieces_;
    std::vector<double> below_; // mass strictly left of piece i
    std::vector<double> above_; // mass strictly right of piece i
};

/// The density g_n built from the standard Laplace density f: g_n = f on
/// |x| < n, and for every k >= n it vanishes on [k, x_k) and equals
/// exp(-|x|/2)/2 on [x_k, k+1) (mirrored for negative x). The CDF is exact
/// for every x, so the infinite construction needs no truncation.
class GnLaw final : public Distribution1D {
public:
    explicit GnLaw(int n);
    double pdf(double x) const override;
    double cdf(double x) const override;
    double ccdf(double x) const override;
    Interval support() const override { return Interval::real_line(); }
    bool has_positive_density() const override { return false; }
    /// +-k for k <= kBreakpointReach and +-x_k for n <= k < kBreakpointReach.
    std::vector<double> breakpoints() const override;
    std::string describe() const override;

    int n() const { return n_; }
    /// x_k = k + 1 - 2 ln(1 + (e-1)/2 * exp(-(k+1)/2)), in (k, k+1).
    static double gap_end(int k);
    /// Mass missing relative to a probability law; zero for the exact form.
    double mass_deficit() const { return 0.0; }

    static constexpr int kBreakpointReach = 60;

private:
    /// P(X > a) for a >= 0.
    double upper_tail(double a) const;
    int n_;
};

/// The law with CDF G_n built from a target CDF G and a reference CDF F:
///   min(F, 1/n)        left of  G^{-1}(1/n)
///   G                  on [G^{-1}(1/n), G^{-1}((n-1)/n))
///   max(F, (n-1)/n)    from G^{-1}((n-1)/n) on.
/// It inherits the tails of the reference, hence its finite moments.
class TruncatedCdfLaw final : public Distribution1D {
public:
    TruncatedCdfLaw(DistPtr target, DistPtr reference, int n);
    double pdf(double x) const override;
    double cdf(double x) const override;
    double ccdf(double x) const override;
    Interval support() const override;
    bool has_positive_density() const override { return false; }
    std::vector<double> breakpoints() const override;
    std::string describe() const override;

    double lower_cut() const { return lower_cut_; }
    double upper_cut() const { return upper_cut_; }

protected:
    /// Closed form: F^{-1}(u) ^ G^{-1}(1/n) for u <= 1/n, G^{-1}(u) in the
    /// middle band, F^{-1}(u) v G^{-1}((n-1)/n) above (n-1)/n.
    double quantile_impl(double u) const override;
    double upper_quantile_impl(double p) const override;
    double location_hint() const override;

private:
    DistPtr target_;
    DistPtr reference_;
    int n_;
    double lower_cut_;
    double upper_cut_;
};

/// The truncated-CDF construction as a free function.
DistPtr truncate_cdf(DistPtr target, DistPtr reference, int n);

/// g_n law; n >= 1.
DistPtr make_gn(int n);

} // namespace tchi
