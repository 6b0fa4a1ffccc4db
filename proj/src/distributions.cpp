#include "tchi/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/distributions/normal.hpp>

#include "tchi/errors.hpp"

namespace tchi {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

bool converged(double lo, double hi, double abs_floor)
{
    return hi - lo <= std::max(2.0 * kEps * std::max(std::abs(lo), std::abs(hi)), abs_floor);
}

// inf{x : g(x) >= target} for nondecreasing g with derivative `dens`.
template <class G>
double monotone_search(G&& g, double target, const Distribution1D& d, double hint, double scale)
{
    const Interval sup = d.support();
    double lo;
    double hi;
    // Bracket: g(lo) < target <= g(hi).
    if (sup.lo_finite() && sup.hi_finite()) {
        lo = sup.lo;
        hi = sup.hi;
        if (g(lo) >= target) return lo;
    } else {
        double step = std::max(scale, 1e-300);
        double x = std::clamp(hint, sup.lo_finite() ? sup.lo : -kInf, sup.hi_finite() ? sup.hi : kInf);
        if (g(x) >= target) {
            hi = x;
            lo = x - step;
            while (true) {
                if (sup.lo_finite() && lo <= sup.lo) {
                    lo = sup.lo;
                    if (g(lo) >= target) return lo;
                    break;
                }
                if (g(lo) < target) break;
                hi = lo;
                step *= 2.0;
                lo -= step;
                if (!std::isfinite(lo)) throw DomainError("quantile bracket search diverged");
            }
        } else {
            lo = x;
            hi = x + step;
            while (true) {
                if (sup.hi_finite() && hi >= sup.hi) {
                    hi = sup.hi;
                    break;
                }
                if (g(hi) >= target) break;
                lo = hi;
                step *= 2.0;
                hi += step;
                if (!std::isfinite(hi)) throw DomainError("quantile bracket search diverged");
            }
        }
    }

    // Safeguarded Newton on the bracket; fall back to bisection whenever the
    // Newton step leaves the bracket or fails to halve it.
    const double abs_floor = 1e-15 * scale;
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 400 && !converged(lo, hi, abs_floor); ++it) {
        const double gx = g(x);
        if (gx >= target) hi = x;
        else lo = x;
        if (converged(lo, hi, abs_floor)) break;
        const double width = hi - lo;
        const double f = d.pdf(x);
        double next = 0.5 * (lo + hi);
        if (f > 0.0 && gx != target) {
            const double newton = x - (gx - target) / f;
            if (newton > lo && newton < hi) {
                // Nudge past the root so the bracket shrinks from both sides.
                const double nudge = 0.25 * std::abs(newton - x) + 4 * kEps * std::abs(newton);
                const double pushed = gx < target ? newton + nudge : newton - nudge;
                next = (pushed > lo && pushed < hi) ? pushed : newton;
                if (std::abs(next - x) > 0.5 * width) next = 0.5 * (lo + hi);
            }
        }
        x = next;
    }
    return hi;
}

} // namespace

double invert_cdf(const Distribution1D& d, double u, double hint, double scale)
{
    return monotone_search([&](double x) { return d.cdf(x); }, u, d, hint, scale);
}

double invert_ccdf(const Distribution1D& d, double p, double hint, double scale)
{
    return monotone_search([&](double x) { return -d.ccdf(x); }, -p, d, hint, scale);
}

double Distribution1D::quantile(double u) const
{
    if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile level must lie in (0,1)");
    return quantile_impl(u);
}

double Distribution1D::upper_quantile(double p) const
{
    if (!(p > 0.0 && p < 1.0)) throw DomainError("upper quantile level must lie in (0,1)");
    return upper_quantile_impl(p);
}

double Distribution1D::quantile_impl(double u) const
{
    if (u > 0.5) return upper_quantile_impl(1.0 - u);
    return invert_cdf(*this, u, location_hint(), scale_hint());
}

double Distribution1D::upper_quantile_impl(double p) const
{
    return invert_ccdf(*this, p, location_hint(), scale_hint());
}

Interval Distribution1D::window(double q) const
{
    if (!(q > 0.0 && q < 0.5)) throw DomainError("window level must lie in (0, 1/2)");
    return {quantile(q), upper_quantile(q)};
}

// --- Gaussian ---------------------------------------------------------------

Gaussian::Gaussian(double mean, double sd) : mean_(mean), sd_(sd)
{
    if (!std::isfinite(mean) || !(sd > 0.0) || !std::isfinite(sd))
        throw SpecError("gaussian requires finite mean and sd > 0");
}

double Gaussian::pdf(double x) const
{
    const double z = (x - mean_) / sd_;
    return std::exp(-0.5 * z * z) / (sd_ * std::sqrt(2.0 * std::numbers::pi));
}

double Gaussian::cdf(double x) const
{
    return 0.5 * std::erfc(-(x - mean_) / (sd_ * std::numbers::sqrt2));
}

double Gaussian::ccdf(double x) const
{
    return 0.5 * std::erfc((x - mean_) / (sd_ * std::numbers::sqrt2));
}

double Gaussian::quantile_impl(double u) const
{
    return boost::math::quantile(boost::math::normal(mean_, sd_), u);
}

double Gaussian::upper_quantile_impl(double p) const
{
    return boost::math::quantile(boost::math::complement(boost::math::normal(mean_, sd_), p));
}

std::string Gaussian::describe() const { return "gaussian(" + fmt(mean_) + "," + fmt(sd_) + ")"; }

// --- Laplace ----------------------------------------------------------------

Laplace::Laplace(double shift, double scale) : shift_(shift), scale_(scale)
{
    if (!std::isfinite(shift) || !(scale > 0.0) || !std::isfinite(scale))
        throw SpecError("laplace requires finite shift and scale > 0");
}

double Laplace::pdf(double x) const
{
    return std::exp(-std::abs(x - shift_) / scale_) / (2.0 * scale_);
}

double Laplace::cdf(double x) const
{
    const double z = (x - shift_) / scale_;
    return z <= 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
}

double Laplace::ccdf(double x) const
{
    const double z = (x - shift_) / scale_;
    return z >= 0.0 ? 0.5 * std::exp(-z) : 1.0 - 0.5 * std::exp(z);
}

double Laplace::quantile_impl(double u) const
{
    if (u <= 0.5) return shift_ + scale_ * std::log(2.0 * u);
    return shift_ - scale_ * std::log(2.0 * (1.0 - u));
}

double Laplace::upper_quantile_impl(double p) const
{
    if (p <= 0.5) return shift_ - scale_ * std::log(2.0 * p);
    return shift_ + scale_ * std::log(2.0 * (1.0 - p));
}

std::string Laplace::describe() const { return "laplace(" + fmt(shift_) + "," + fmt(scale_) + ")"; }

// --- Exponential ------------------------------------------------------------

Exponential::Exponential(double rate) : rate_(rate)
{
    if (!(rate > 0.0) || !std::isfinite(rate)) throw SpecError("exponential requires rate > 0");
}

double Exponential::pdf(double x) const { return x < 0.0 ? 0.0 : rate_ * std::exp(-rate_ * x); }

double Exponential::cdf(double x) const { return x <= 0.0 ? 0.0 : -std::expm1(-rate_ * x); }

double Exponential::ccdf(double x) const { return x <= 0.0 ? 1.0 : std::exp(-rate_ * x); }

double Exponential::quantile_impl(double u) const { return -std::log1p(-u) / rate_; }

double Exponential::upper_quantile_impl(double p) const { return -std::log(p) / rate_; }

std::string Exponential::describe() const { return "exponential(" + fmt(rate_) + ")"; }

// --- Uniform ----------------------------------------------------------------

Uniform::Uniform(double lo, double hi) : lo_(lo), hi_(hi)
{
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
        throw SpecError("uniform requires finite lo < hi");
}

double Uniform::pdf(double x) const { return (x < lo_ || x > hi_) ? 0.0 : 1.0 / (hi_ - lo_); }

double Uniform::cdf(double x) const
{
    if (x <= lo_) return 0.0;
    if (x >= hi_) return 1.0;
    return (x - lo_) / (hi_ - lo_);
}

double Uniform::ccdf(double x) const
{
    if (x <= lo_) return 1.0;
    if (x >= hi_) return 0.0;
    return (hi_ - x) / (hi_ - lo_);
}

double Uniform::quantile_impl(double u) const { return lo_ + u * (hi_ - lo_); }

double Uniform::upper_quantile_impl(double p) const { return hi_ - p * (hi_ - lo_); }

std::string Uniform::describe() const { return "uniform(" + fmt(lo_) + "," + fmt(hi_) + ")"; }

// --- Mixture ----------------------------------------------------------------

Mixture::Mixture(std::vector<Component> components) : components_(std::move(components))
{
    if (components_.empty()) throw SpecError("mixture needs at least one component");
    double total = 0.0;
    for (const auto& c : components_) {
        if (!(c.weight > 0.0) || !std::isfinite(c.weight))
            throw SpecError("mixture weights must be positive");
        if (!c.law) throw SpecError("mixture component is null");
        total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) throw SpecError("mixture weights must sum to 1");
}

double Mixture::pdf(double x) const
{
    double s = 0.0;
    for (const auto& c : components_) s += c.weight * c.law->pdf(x);
    return s;
}

double Mixture::cdf(double x) const
{
    double s = 0.0;
    for (const auto& c : components_) s += c.weight * c.law->cdf(x);
    return s;
}

double Mixture::ccdf(double x) const
{
    double s = 0.0;
    for (const auto& c : components_) s += c.weight * c.law->ccdf(x);
    return s;
}

Interval Mixture::support() const
{
    Interval iv = components_.front().law->support();
    for (const auto& c : components_) iv = hull(iv, c.law->support());
    return iv;
}

bool Mixture::has_positive_density() const
{
    std::vector<Interval> sups;
    for (const auto& c : components_) {
        if (!c.law->has_positive_density()) return false;
        sups.push_back(c.law->support());
    }
    std::sort(sups.begin(), sups.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    double reach = sups.front().hi;
    for (const auto& iv : sups) {
        if (iv.lo > reach) return false;
        reach = std::max(reach, iv.hi);
    }
    return true;
}

std::vector<double> Mixture::breakpoints() const
{
    std::vector<double> out;
    for (const auto& c : components_) {
        auto b = c.law->breakpoints();
        out.insert(out.end(), b.begin(), b.end());
    }
    return merge_breakpoints(out, {});
}

std::string Mixture::describe() const
{
    std::string s = "mixture(";
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (i) s += ",";
        s += fmt(components_[i].weight) + "*" + components_[i].law->describe();
    }
    return s + ")";
}

double Mixture::location_hint() const
{
    double m = 0.0;
    for (const auto& c : components_) m += c.weight * c.law->median();
    return m;
}

double Mixture::scale_hint() const
{
    double lo = kInf;
    double hi = -kInf;
    for (const auto& c : components_) {
        const Interval w = c.law->window(0.25);
        lo = std::min(lo, w.lo);
        hi = std::max(hi, w.hi);
    }
    return std::max(hi - lo, 1e-8);
}

// --- PiecewiseExp -----------------------------------------------------------

PiecewiseExp::PiecewiseExp(std::vector<Piece> pieces) : pieces_(std::move(pieces))
{
    if (pieces_.empty()) throw SpecError("piecewise density needs at least one piece");
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const Piece& p = pieces_[i];
        if (!(p.lo < p.hi) || std::isnan(p.lo) || std::isnan(p.hi))
            throw SpecError("piecewise piece requires lo < hi");
        if (!(p.coef >= 0.0) || !std::isfinite(p.coef) || !std::isfinite(p.rate))
            throw SpecError("piecewise coefficients must be finite and nonnegative");
        if (!std::isfinite(p.lo) && !(p.rate > 0.0))
            throw SpecError("a piece unbounded below needs a positive rate");
        if (!std::isfinite(p.hi) && !(p.rate < 0.0))
            throw SpecError("a piece unbounded above needs a negative rate");
        if (i > 0 && pieces_[i - 1].hi > p.lo)
            throw SpecError("piecewise pieces must be ordered and disjoint");
    }
    const std::size_t n = pieces_.size();
    std::vector<double> mass(n);
    for (std::size_t i = 0; i < n; ++i) mass[i] = piece_mass(i, pieces_[i].lo, pieces_[i].hi);
    below_.assign(n, 0.0);
    above_.assign(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) below_[i] = below_[i - 1] + mass[i - 1];
    for (std::size_t i = n - 1; i-- > 0;) above_[i] = above_[i + 1] + mass[i + 1];
    const double total = below_[n - 1] + mass[n - 1];
    if (std::abs(total - 1.0) > 1e-9)
        throw SpecError("piecewise density must have total mass 1 (got " + fmt(total) + ")");
}

double PiecewiseExp::piece_mass(std::size_t i, double a, double b) const
{
    const Piece& p = pieces_[i];
    if (!(b > a) || p.coef == 0.0) return 0.0;
    if (p.rate == 0.0) return p.coef * (b - a);
    // coef * (e^{rb} - e^{ra}) / r, arranged to avoid overflow and cancellation.
    if (p.rate < 0.0) {
        const double ea = std::exp(p.rate * a);
        return std::isfinite(b) ? p.coef * ea * -std::expm1(p.rate * (b - a)) / -p.rate
                                : p.coef * ea / -p.rate;
    }
    const double eb = std::exp(p.rate * b);
    return std::isfinite(a) ? p.coef * eb * -std::expm1(-p.rate * (b - a)) / p.rate
                            : p.coef * eb / p.rate;
}

double PiecewiseExp::pdf(double x) const
{
    for (const Piece& p : pieces_)
        if (x >= p.lo && x < p.hi) return p.coef * std::exp(p.rate * x);
    return 0.0;
}

double PiecewiseExp::cdf(double x) const
{
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (x < pieces_[i].lo) return below_[i];
        if (x < pieces_[i].hi) return below_[i] + piece_mass(i, pieces_[i].lo, x);
    }
    return 1.0;
}

double PiecewiseExp::ccdf(double x) const
{
    for (std::size_t i = pieces_.size(); i-- > 0;) {
        if (x >= pieces_[i].hi) return above_[i];
        if (x >= pieces_[i].lo) return above_[i] + piece_mass(i, x, pieces_[i].hi);
    }
    return 1.0;
}

Interval PiecewiseExp::support() const { return {pieces_.front().lo, pieces_.back().hi}; }

bool PiecewiseExp::has_positive_density() const
{
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (pieces_[i].coef == 0.0) return false;
        if (i > 0 && pieces_[i - 1].hi < pieces_[i].lo) return false;
    }
    return true;
}

std::vector<double> PiecewiseExp::breakpoints() const
{
    std::vector<double> out;
    for (const Piece& p : pieces_) {
        if (std::isfinite(p.lo)) out.push_back(p.lo);
        if (std::isfinite(p.hi)) out.push_back(p.hi);
    }
    return merge_breakpoints(out, {});
}

std::string PiecewiseExp::describe() const
{
    return "piecewise(" + std::to_string(pieces_.size()) + " pieces)";
}

double PiecewiseExp::location_hint() const
{
    const Interval s = support();
    if (s.bounded()) return 0.5 * (s.lo + s.hi);
    double best = 0.0;
    double best_mass = -1.0;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const double m = piece_mass(i, pieces_[i].lo, pieces_[i].hi);
        if (m > best_mass) {
            best_mass = m;
            const Piece& p = pieces_[i];
            best = std::isfinite(p.lo) ? (std::isfinite(p.hi) ? 0.5 * (p.lo + p.hi) : p.lo) : p.hi;
        }
    }
    return best;
}

double PiecewiseExp::scale_hint() const
{
    double s = 0.0;
    for (const Piece& p : pieces_) {
        if (std::isfinite(p.lo) && std::isfinite(p.hi)) s = std::max(s, p.hi - p.lo);
        else s = std::max(s, 1.0 / std::abs(p.rate));
    }
    return s > 0.0 ? s : 1.0;
}

// --- GnLaw ------------------------------------------------------------------

GnLaw::GnLaw(int n) : n_(n)
{
    if (n < 1) throw DomainError("g_n requires n >= 1");
}

double GnLaw::gap_end(int k)
{
    const double c = 0.5 * (std::numbers::e - 1.0);
    return k + 1.0 - 2.0 * std::log1p(c * std::exp(-(k + 1.0) / 2.0));
}

double GnLaw::pdf(double x) const
{
    const double a = std::abs(x);
    if (a < n_) return 0.5 * std::exp(-a);
    const double k = std::floor(a);
    if (k >= 1e9) return 0.0;
    return a >= gap_end(static_cast<int>(k)) ? 0.5 * std::exp(-0.5 * a) : 0.0;
}

double GnLaw::upper_tail(double a) const
{
    if (a <= n_) return 0.5 * std::exp(-a);
    const double kf = std::floor(a);
    if (kf >= 1e9) return 0.0;
    const int k = static_cast<int>(kf);
    const double beyond = 0.5 * std::exp(-(kf + 1.0));
    if (a <= gap_end(k)) return beyond + 0.5 * (std::exp(-kf) - std::exp(-(kf + 1.0)));
    return beyond + (std::exp(-0.5 * a) - std::exp(-0.5 * (kf + 1.0)));
}

double GnLaw::cdf(double x) const { return x >= 0.0 ? 1.0 - upper_tail(x) : upper_tail(-x); }

double GnLaw::ccdf(double x) const { return x >= 0.0 ? upper_tail(x) : 1.0 - upper_tail(-x); }

std::vector<double> GnLaw::breakpoints() const
{
    std::vector<double> out{0.0};
    for (int k = 1; k <= kBreakpointReach; ++k) {
        out.push_back(k);
        out.push_back(-k);
        if (k >= n_ && k < kBreakpointReach) {
            out.push_back(gap_end(k));
            out.push_back(-gap_end(k));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string GnLaw::describe() const { return "gn(" + std::to_string(n_) + ")"; }

DistPtr make_gn(int n) { return std::make_shared<GnLaw>(n); }

// --- TruncatedCdfLaw --------------------------------------------------------

TruncatedCdfLaw::TruncatedCdfLaw(DistPtr target, DistPtr reference, int n)
    : target_(std::move(target)), reference_(std::move(reference)), n_(n)
{
    if (!target_ || !reference_) throw SpecError("truncated law needs target and reference");
    if (n < 2) throw DomainError("truncated law requires n >= 2");
    lower_cut_ = target_->quantile(1.0 / n);
    upper_cut_ = target_->quantile((n - 1.0) / n);
}

double TruncatedCdfLaw::cdf(double x) const
{
    if (x < lower_cut_) return std::min(reference_->cdf(x), 1.0 / n_);
    if (x < upper_cut_) return target_->cdf(x);
    return std::max(reference_->cdf(x), (n_ - 1.0) / n_);
}

double TruncatedCdfLaw::ccdf(double x) const
{
    if (x < lower_cut_) return std::max(reference_->ccdf(x), 1.0 - 1.0 / n_);
    if (x < upper_cut_) return target_->ccdf(x);
    return std::min(reference_->ccdf(x), 1.0 / n_);
}

double TruncatedCdfLaw::pdf(double x) const
{
    if (x < lower_cut_) return reference_->cdf(x) < 1.0 / n_ ? reference_->pdf(x) : 0.0;
    if (x < upper_cut_) return target_->pdf(x);
    return reference_->cdf(x) > (n_ - 1.0) / n_ ? reference_->pdf(x) : 0.0;
}

double TruncatedCdfLaw::quantile_impl(double u) const
{
    if (u <= 1.0 / n_) return std::min(reference_->quantile(u), lower_cut_);
    if (u <= (n_ - 1.0) / n_) return target_->quantile(u);
    return std::max(reference_->quantile(u), upper_cut_);
}

double TruncatedCdfLaw::upper_quantile_impl(double p) const
{
    if (p < 1.0 / n_) return std::max(reference_->upper_quantile(p), upper_cut_);
    return quantile_impl(1.0 - p);
}

Interval TruncatedCdfLaw::support() const
{
    return hull(reference_->support(), Interval{lower_cut_, upper_cut_});
}

std::vector<double> TruncatedCdfLaw::breakpoints() const
{
    std::vector<double> out{lower_cut_, upper_cut_, reference_->quantile(1.0 / n_),
                            reference_->quantile((n_ - 1.0) / n_)};
    const auto a = target_->breakpoints();
    const auto b = reference_->breakpoints();
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return merge_breakpoints(out, {});
}

std::string TruncatedCdfLaw::describe() const
{
    return "truncated(" + target_->describe() + "|" + reference_->describe() + "," +
           std::to_string(n_) + ")";
}

double TruncatedCdfLaw::location_hint() const { return 0.5 * (lower_cut_ + upper_cut_); }

DistPtr truncate_cdf(DistPtr target, DistPtr reference, int n)
{
    return std::make_shared<TruncatedCdfLaw>(std::move(target), std::move(reference), n);
}

} // namespace tchi
