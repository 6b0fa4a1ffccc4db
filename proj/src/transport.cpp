#include "tchi/transport.hpp"

#include <algorithm>
#include <cmath>

#include "tchi/errors.hpp"

namespace tchi {

std::string_view method_name(TransportMethod m)
{
    switch (m) {
    case TransportMethod::quantile: return "quantile";
    case TransportMethod::cdf_l1: return "cdf_l1";
    case TransportMethod::double_integral: return "double_integral";
    case TransportMethod::empirical: return "empirical";
    }
    return "unknown";
}

double TransportResult::powered() const { return std::pow(value, power); }

namespace {

TransportResult finish(double integral, double err, int q, TransportMethod m)
{
    TransportResult r;
    r.power = q;
    r.method = m;
    r.est_error = err;
    if (!std::isfinite(integral) || integral > kDivergenceCap) {
        r.value = kInf;
        return r;
    }
    r.value = std::pow(std::max(integral, 0.0), 1.0 / q);
    return r;
}

// Union of both trunc_q windows, clipped to the union of supports.
Interval joint_window(const Distribution1D& mu, const Distribution1D& nu, double q)
{
    return intersect(hull(mu.window(q), nu.window(q)), hull(mu.support(), nu.support()));
}

// Point beyond which differences of CDFs are formed from upper tails.
double tail_pivot(const Distribution1D& mu, const Distribution1D& nu)
{
    return 0.5 * (mu.median() + nu.median());
}

} // namespace

TransportResult wq_quantile(const Distribution1D& mu, const Distribution1D& nu, int q,
                            const QuadSettings& s)
{
    s.validate();
    if (q < 1) throw DomainError("transport power q must be >= 1");
    const double eps = s.trunc_q;
    const double t_end = -std::log(2.0 * eps);

    auto gap_pow = [q](double a, double b) { return std::pow(std::abs(a - b), q); };
    const RealFunction lower = [&](double t) {
        const double u = 0.5 * std::exp(-t);
        return gap_pow(mu.quantile(u), nu.quantile(u)) * u;
    };
    const RealFunction upper = [&](double t) {
        const double p = 0.5 * std::exp(-t);
        return gap_pow(mu.upper_quantile(p), nu.upper_quantile(p)) * p;
    };

    double total = 0.0;
    double err = 0.0;
    bool ok = true;
    try {
        const QuadResult lo = integrate_adaptive(lower, {0.0, t_end}, s);
        const QuadResult hi = integrate_adaptive(upper, {0.0, t_end}, s);
        total = lo.value + hi.value;
        err = lo.error + hi.error;
        ok = lo.converged && hi.converged;
    } catch (const EvaluationError&) {
        return finish(kInf, kInf, q, TransportMethod::quantile);
    }
    const double tails = eps * gap_pow(mu.quantile(eps), nu.quantile(eps)) +
                         eps * gap_pow(mu.upper_quantile(eps), nu.upper_quantile(eps));
    total += tails;
    err += tails;
    if (total > kDivergenceCap) return finish(kInf, err, q, TransportMethod::quantile);
    if (!ok) throw AccuracyError("quantile transport integral did not converge", total, err);
    return finish(total, err, q, TransportMethod::quantile);
}

TransportResult w1_cdf(const Distribution1D& mu, const Distribution1D& nu, const QuadSettings& s)
{
    s.validate();
    const double pivot = tail_pivot(mu, nu);
    const RealFunction gap = [&](double x) {
        return x >= pivot ? std::abs(mu.ccdf(x) - nu.ccdf(x)) : std::abs(mu.cdf(x) - nu.cdf(x));
    };
    const Interval domain = hull(mu.support(), nu.support());
    const auto bps = merge_breakpoints(mu.breakpoints(), nu.breakpoints());
    const LineIntegral r = integrate_with_tails(gap, joint_window(mu, nu, s.trunc_q), domain, s, bps);
    if (r.diverged) return finish(kInf, r.error, 1, TransportMethod::cdf_l1);
    if (!r.converged) throw AccuracyError("W1 CDF integral did not converge", r.value, r.error);
    return finish(r.value, r.error, 1, TransportMethod::cdf_l1);
}

namespace {

// int_x^inf (A(x) - B(y))^+ dy, A and B CDFs, written with upper tails past
// the pivot. The positive part vanishes beyond the first y with B(y) >= A(x).
double one_sided_excess(const Distribution1D& a_law, const Distribution1D& b_law, double x,
                        double pivot, double scale, const QuadSettings& inner,
                        const std::vector<double>& b_breaks)
{
    const bool upper = x >= pivot;
    const double ax = upper ? a_law.ccdf(x) : a_law.cdf(x);
    // excess(y) = A(x) - B(y), nonincreasing in y.
    auto excess = [&](double y) { return upper ? b_law.ccdf(y) - ax : ax - b_law.cdf(y); };
    if (!(excess(x) > 0.0)) return 0.0;

    double step = scale;
    double hi = x + step;
    const double sup_hi = b_law.support().hi;
    while (excess(hi) > 0.0) {
        if (hi >= sup_hi) break;
        step *= 2.0;
        hi = std::min(x + step, sup_hi);
        if (!std::isfinite(hi)) return kInf;
    }
    double end = hi;
    if (excess(hi) <= 0.0)
        end = find_root([&](double y) { return excess(y); }, {x, hi}, inner);
    if (!(end > x)) return 0.0;
    const RealFunction pos = [&](double y) { return std::max(excess(y), 0.0); };
    return integrate_adaptive(pos, {x, end}, inner, b_breaks).value;
}

} // namespace

TransportResult w2_double_integral(const Distribution1D& mu, const Distribution1D& nu,
                                   const QuadSettings& s)
{
    s.validate();
    const Interval window = joint_window(mu, nu, s.trunc_q);
    const double pivot = tail_pivot(mu, nu);
    const double scale = std::max(window.width() / 16.0, 1e-6);
    QuadSettings inner = s.tightened(1e-2);
    inner.abs_tol = std::min(inner.abs_tol, 1e-13);
    const auto mu_breaks = mu.breakpoints();
    const auto nu_breaks = nu.breakpoints();

    const RealFunction outer = [&](double x) {
        return one_sided_excess(mu, nu, x, pivot, scale, inner, nu_breaks) +
               one_sided_excess(nu, mu, x, pivot, scale, inner, mu_breaks);
    };
    const auto bps = merge_breakpoints(mu_breaks, nu_breaks, window);
    QuadResult r;
    try {
        r = integrate_adaptive(outer, window, s, bps);
    } catch (const EvaluationError&) {
        return finish(kInf, kInf, 2, TransportMethod::double_integral);
    }
    const double neglect = s.trunc_q * window.width() * window.width();
    const double w2sq = 2.0 * r.value;
    if (!r.converged && w2sq < kDivergenceCap)
        throw AccuracyError("double-integral W2 did not converge", w2sq, 2.0 * r.error);
    return finish(w2sq, 2.0 * r.error + neglect, 2, TransportMethod::double_integral);
}

TransportResult w2_empirical(std::span<const double> xs, std::span<const double> ys)
{
    if (xs.size() != ys.size()) throw ShapeError("empirical W2 needs samples of equal size");
    if (xs.empty()) throw ShapeError("empirical W2 needs at least one atom");
    if (!std::is_sorted(xs.begin(), xs.end()) || !std::is_sorted(ys.begin(), ys.end()))
        throw ShapeError("empirical W2 expects sorted samples");
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double d = xs[i] - ys[i];
        acc += d * d;
    }
    TransportResult r;
    r.power = 2;
    r.method = TransportMethod::empirical;
    r.value = std::sqrt(acc / static_cast<double>(xs.size()));
    return r;
}

std::vector<double> stratified_sample(const Distribution1D& d, std::size_t n)
{
    if (n == 0) throw ShapeError("sample size must be positive");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = d.quantile((static_cast<double>(i) + 0.5) / static_cast<double>(n));
    return out;
}

} // namespace tchi
