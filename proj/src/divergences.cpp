#include "tchi/divergences.hpp"

#include <cmath>

#include "tchi/errors.hpp"

namespace tchi {

namespace {

constexpr double kOutsideMass = 1e-12;

bool mass_outside(const Distribution1D& nu, const Interval& sup)
{
    double out = 0.0;
    if (sup.lo_finite()) out += nu.cdf(sup.lo);
    if (sup.hi_finite()) out += nu.ccdf(sup.hi);
    return out > kOutsideMass;
}

DivergenceResult integrate_divergence(const RealFunction& integrand, const Distribution1D& nu,
                                      const Distribution1D& mu, const QuadSettings& s,
                                      DivergenceKind kind)
{
    s.validate();
    DivergenceResult r;
    r.kind = kind;
    const Interval sup = mu.support();
    if (mass_outside(nu, sup)) {
        r.abs_cont = false;
        r.value = kInf;
        return r;
    }
    const Interval window = intersect(hull(mu.window(s.trunc_q), nu.window(s.trunc_q)), sup);
    const auto bps = merge_breakpoints(mu.breakpoints(), nu.breakpoints());
    const LineIntegral li = integrate_with_tails(integrand, window, sup, s, bps);
    if (li.diverged) {
        r.value = kInf;
        return r;
    }
    if (!li.converged)
        throw AccuracyError("divergence integral did not converge", li.value, li.error);
    r.value = std::max(li.value, 0.0);
    r.est_error = li.error;
    return r;
}

} // namespace

DivergenceResult chi_square_sq(const Distribution1D& nu, const Distribution1D& mu,
                               const QuadSettings& s, ChiForm form)
{
    const RealFunction integrand = [&](double x) {
        const double f = mu.pdf(x);
        const double g = nu.pdf(x);
        if (f <= kDensityFloor && g <= kDensityFloor) return 0.0;
        const double ff = std::max(f, kDensityFloor);
        if (form == ChiForm::difference) {
            const double d = f - g;
            return d * d / ff;
        }
        const double ratio = g / ff - 1.0;
        return ratio * ratio * ff;
    };
    return integrate_divergence(integrand, nu, mu, s, DivergenceKind::chi_square_squared);
}

DivergenceResult rel_entropy(const Distribution1D& nu, const Distribution1D& mu,
                             const QuadSettings& s)
{
    const RealFunction integrand = [&](double x) {
        const double g = nu.pdf(x);
        if (g <= 0.0) return 0.0;
        const double f = std::max(mu.pdf(x), kDensityFloor);
        return g * std::log(g / f);
    };
    return integrate_divergence(integrand, nu, mu, s, DivergenceKind::entropy);
}

} // namespace tchi
