#include "tchi/mollification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tchi/divergences.hpp"
#include "tchi/errors.hpp"
#include "tchi/transport.hpp"

namespace tchi {

namespace {

constexpr double kCacheTail = 1e-12;

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

} // namespace

double mollifier_density(double n, double x)
{
    if (!(n > 0.0)) throw DomainError("mollifier level n must be positive");
    return std::sqrt(n / (2.0 * std::numbers::pi)) * std::exp(-0.5 * n * x * x);
}

MollifiedLaw::MollifiedLaw(DistPtr base, double n, const QuadSettings& s)
    : base_(std::move(base)), n_(n)
{
    if (!base_) throw SpecError("mollify needs a base law");
    if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("mollifier level n must be positive");
    s.validate();
    sigma_ = 1.0 / std::sqrt(n_);
    inner_ = s;
    inner_.abs_tol = 1e-300;
    inner_.rel_tol = std::min(1e-11, s.rel_tol * 1e-3);
    base_breaks_ = base_->breakpoints();
    std::sort(base_breaks_.begin(), base_breaks_.end());

    const double base_median = base_->median();
    scale_ = base_->upper_quantile(0.25) - base_->quantile(0.25) + sigma_;
    median_hint_ = invert_cdf(*this, 0.5, base_median, scale_);

    const int half = kCacheSize / 2;
    const double t_max = -std::log(2.0 * kCacheTail);
    std::vector<double> ts(half);
    for (int i = 0; i < half; ++i) ts[i] = t_max * i / (half - 1);
    std::vector<double> lo(half);
    std::vector<double> hi(half);
    lo[0] = hi[0] = median_hint_;
    // Each level seeds the search for the next one.
    for (int i = 1; i < half; ++i) {
        const double level = 0.5 * std::exp(-ts[i]);
        const double step = std::max(std::abs(lo[i - 1] - lo[std::max(i - 2, 0)]), 1e-3 * scale_);
        lo[i] = invert_cdf(*this, level, lo[i - 1], step);
        const double step_hi = std::max(std::abs(hi[i - 1] - hi[std::max(i - 2, 0)]), 1e-3 * scale_);
        hi[i] = invert_ccdf(*this, level, hi[i - 1], step_hi);
    }
    // The cache only needs to be monotone for interpolation; ties from a
    // flat stretch are broken by the polish step.
    for (int i = 1; i < half; ++i) {
        lo[i] = std::min(lo[i], lo[i - 1]);
        hi[i] = std::max(hi[i], hi[i - 1]);
    }
    lower_ = MonotoneCubic(ts, lo);
    upper_ = MonotoneCubic(ts, hi);
}

Interval MollifiedLaw::neighbourhood(double x) const
{
    const double reach = kReach * sigma_;
    const Interval sup = base_->support();
    double a = std::min(x - reach, median_hint_);
    double b = std::max(x + reach, median_hint_);
    a = std::max(a, sup.lo);
    b = std::min(b, sup.hi);
    return {a, b};
}

std::vector<double> MollifiedLaw::local_breaks(double x, const Interval& iv) const
{
    std::vector<double> out;
    for (double k : {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0}) {
        const double y = x + k * sigma_;
        if (y > iv.lo && y < iv.hi) out.push_back(y);
    }
    for (double y : base_breaks_)
        if (y > iv.lo && y < iv.hi) out.push_back(y);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double MollifiedLaw::pdf(double x) const
{
    const Interval iv = neighbourhood(x);
    if (!(iv.lo < iv.hi)) return 0.0;
    const RealFunction integrand = [&](double y) { return mollifier_density(n_, x - y) * base_->pdf(y); };
    return integrate(integrand, iv, inner_, local_breaks(x, iv));
}

double MollifiedLaw::cdf(double x) const
{
    const Interval sup = base_->support();
    const double left = x - kReach * sigma_;
    Interval iv = neighbourhood(x);
    iv.lo = std::max(left, sup.lo);
    const double below = left > sup.lo ? base_->cdf(left) : 0.0;
    if (!(iv.lo < iv.hi)) return below;
    const RealFunction integrand = [&](double y) { return std_normal_cdf((x - y) / sigma_) * base_->pdf(y); };
    return std::min(1.0, below + integrate(integrand, iv, inner_, local_breaks(x, iv)));
}

double MollifiedLaw::ccdf(double x) const
{
    const Interval sup = base_->support();
    const double right = x + kReach * sigma_;
    Interval iv = neighbourhood(x);
    iv.hi = std::min(right, sup.hi);
    const double above = right < sup.hi ? base_->ccdf(right) : 0.0;
    if (!(iv.lo < iv.hi)) return above;
    const RealFunction integrand = [&](double y) { return std_normal_cdf((y - x) / sigma_) * base_->pdf(y); };
    return std::min(1.0, above + integrate(integrand, iv, inner_, local_breaks(x, iv)));
}

Interval MollifiedLaw::support() const
{
    const Interval sup = base_->support();
    return {sup.lo - kReach * sigma_, sup.hi + kReach * sigma_};
}

std::string MollifiedLaw::describe() const
{
    std::ostringstream os;
    os.precision(12);
    os << "mollified(" << base_->describe() << ", n=" << n_ << ")";
    return os.str();
}

double MollifiedLaw::polish(double x, double level, bool upper) const
{
    for (int it = 0; it < 4; ++it) {
        const double f = pdf(x);
        if (!(f > 0.0)) return kInf;
        const double resid = upper ? level - ccdf(x) : cdf(x) - level;
        const double dx = resid / f;
        x -= dx;
        if (!std::isfinite(x)) return kInf;
        if (std::abs(dx) <= 1e-13 * (std::abs(x) + scale_)) return x;
    }
    return kInf;
}

double MollifiedLaw::quantile_impl(double u) const
{
    if (u > 0.5) return upper_quantile_impl(1.0 - u);
    const double t = -std::log(2.0 * u);
    const double guess = t <= lower_.x_max() ? lower_(t) : lower_.ys().back();
    const double x = polish(guess, u, false);
    return std::isfinite(x) ? x : invert_cdf(*this, u, guess, 1e-3 * scale_);
}

double MollifiedLaw::upper_quantile_impl(double p) const
{
    const double t = -std::log(2.0 * p);
    const double guess = t <= upper_.x_max() ? upper_(std::max(t, 0.0)) : upper_.ys().back();
    const double x = polish(guess, p, true);
    return std::isfinite(x) ? x : invert_ccdf(*this, p, guess, 1e-3 * scale_);
}

DistPtr mollify(DistPtr d, double n, const QuadSettings& s)
{
    return std::make_shared<MollifiedLaw>(std::move(d), n, s);
}

namespace {

InequalityReport w2_report(double smooth, double plain, double n)
{
    return make_report("w2_contraction", smooth, plain, n, "W2(mu_n,nu_n)", "W2(mu,nu)");
}

InequalityReport chi_report(double smooth, double plain, double n)
{
    return make_report("chi_contraction", smooth, plain, n, "chi2(nu_n|mu_n)", "chi2(nu|mu)");
}

} // namespace

InequalityReport check_w2_contraction(const DistPtr& mu, const DistPtr& nu, double n,
                                      const QuadSettings& s)
{
    const double plain = wq_quantile(*mu, *nu, 2, s).value;
    const auto mu_n = mollify(mu, n, s);
    const auto nu_n = mollify(nu, n, s);
    return w2_report(wq_quantile(*mu_n, *nu_n, 2, s).value, plain, n);
}

InequalityReport check_chi_contraction(const DistPtr& mu, const DistPtr& nu, double n,
                                       const QuadSettings& s)
{
    const double plain = chi_square_sq(*nu, *mu, s).value;
    const auto mu_n = mollify(mu, n, s);
    const auto nu_n = mollify(nu, n, s);
    return chi_report(chi_square_sq(*nu_n, *mu_n, s).value, plain, n);
}

ContractionReports check_contractions(const DistPtr& mu, const DistPtr& nu, double n,
                                      const QuadSettings& s)
{
    const auto mu_n = mollify(mu, n, s);
    const auto nu_n = mollify(nu, n, s);
    return {w2_report(wq_quantile(*mu_n, *nu_n, 2, s).value, wq_quantile(*mu, *nu, 2, s).value, n),
            chi_report(chi_square_sq(*nu_n, *mu_n, s).value, chi_square_sq(*nu, *mu, s).value, n)};
}

std::vector<InequalityReport> w2_contraction_sweep(const DistPtr& mu, const DistPtr& nu,
                                                   std::span<const double> levels,
                                                   const QuadSettings& s)
{
    std::vector<InequalityReport> out;
    for (double n : levels) out.push_back(check_w2_contraction(mu, nu, n, s));
    return out;
}

std::vector<InequalityReport> chi_contraction_sweep(const DistPtr& mu, const DistPtr& nu,
                                                    std::span<const double> levels,
                                                    const QuadSettings& s)
{
    std::vector<InequalityReport> out;
    for (double n : levels) out.push_back(check_chi_contraction(mu, nu, n, s));
    return out;
}

} // namespace tchi
