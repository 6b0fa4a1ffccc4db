#include "tchi/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "tchi/errors.hpp"

namespace tchi {

void QuadSettings::validate() const
{
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw DomainError("quadrature tolerances must be positive");
    if (!(trunc_q > 0.0 && trunc_q < 0.5))
        throw DomainError("trunc_q must lie in (0, 1/2)");
    if (max_depth < 1)
        throw DomainError("max_depth must be at least 1");
}

QuadSettings QuadSettings::tightened(double factor) const
{
    QuadSettings t = *this;
    t.abs_tol *= factor;
    t.rel_tol *= factor;
    return t;
}

void Interval::validate() const
{
    if (!(lo < hi))
        throw DomainError("interval requires lo < hi");
}

Interval hull(const Interval& a, const Interval& b)
{
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Interval intersect(const Interval& a, const Interval& b)
{
    return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

std::vector<double> merge_breakpoints(std::span<const double> a, std::span<const double> b,
                                      Interval iv)
{
    std::vector<double> out;
    out.reserve(a.size() + b.size());
    for (double x : a)
        if (x > iv.lo && x < iv.hi) out.push_back(x);
    for (double x : b)
        if (x > iv.lo && x < iv.hi) out.push_back(x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// Kronrod 15-point abscissae (positive half) and weights; the Gauss 7-point
// rule uses the odd-indexed abscissae.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kMaxPanels = 40000;

enum class Map { finite, to_pos_inf, to_neg_inf };

struct Segment {
    Map map;
    double anchor; // finite end for semi-infinite maps
};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    int depth;
    int segment;
};

struct PanelByError {
    bool operator()(const Panel& l, const Panel& r) const { return l.error < r.error; }
};

class Evaluator {
public:
    Evaluator(const RealFunction& f, std::vector<Segment> segs) : f_(f), segs_(std::move(segs)) {}

    double operator()(int seg, double t)
    {
        ++count_;
        const Segment& s = segs_[static_cast<std::size_t>(seg)];
        double x = t;
        double jac = 1.0;
        if (s.map != Map::finite) {
            const double one_minus = 1.0 - t;
            const double u = t / one_minus;
            jac = 1.0 / (one_minus * one_minus);
            x = s.map == Map::to_pos_inf ? s.anchor + u : s.anchor - u;
        }
        const double y = f_(x);
        if (!std::isfinite(y))
            throw EvaluationError("non-finite integrand value at x = " + std::to_string(x), x);
        if (y == 0.0) return 0.0;
        return y * jac;
    }

    std::size_t count() const { return count_; }

private:
    const RealFunction& f_;
    std::vector<Segment> segs_;
    std::size_t count_ = 0;
};

Panel gauss_kronrod(Evaluator& ev, int seg, double a, double b, int depth)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = ev(seg, center);
    double resk = fc * kWgk[7];
    double resg = fc * kWg[3];
    double resabs = std::abs(resk);
    std::array<double, 7> f1{}, f2{};
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = ev(seg, center - dx);
        f2[j] = ev(seg, center + dx);
        const double sum = f1[j] + f2[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }
    const double mean = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    resk *= half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg * half));
    // QUADPACK error scaling.
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
        err = std::max(50.0 * kEps * resabs, err);
    return {a, b, resk, err, depth, seg};
}

} // namespace

QuadResult integrate_adaptive(const RealFunction& f, Interval iv, const QuadSettings& s,
                              std::span<const double> breakpoints)
{
    s.validate();
    if (iv.lo == iv.hi) return {};
    iv.validate();

    std::vector<double> cuts = merge_breakpoints(breakpoints, {}, iv);
    if (!iv.lo_finite() && !iv.hi_finite() && cuts.empty()) cuts.push_back(0.0);

    std::vector<double> nodes;
    nodes.push_back(iv.lo);
    nodes.insert(nodes.end(), cuts.begin(), cuts.end());
    nodes.push_back(iv.hi);

    std::vector<Segment> segs;
    std::vector<std::pair<double, double>> ranges;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double a = nodes[i];
        const double b = nodes[i + 1];
        if (!std::isfinite(a)) {
            segs.push_back({Map::to_neg_inf, b});
            ranges.emplace_back(0.0, 1.0);
        } else if (!std::isfinite(b)) {
            segs.push_back({Map::to_pos_inf, a});
            ranges.emplace_back(0.0, 1.0);
        } else {
            segs.push_back({Map::finite, 0.0});
            ranges.emplace_back(a, b);
        }
    }

    Evaluator ev(f, segs);
    std::priority_queue<Panel, std::vector<Panel>, PanelByError> active;
    std::vector<Panel> frozen;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        Panel p = gauss_kronrod(ev, static_cast<int>(i), ranges[i].first, ranges[i].second, 0);
        total += p.value;
        total_err += p.error;
        active.push(p);
    }

    auto tolerance = [&] { return std::max(s.abs_tol, s.rel_tol * std::abs(total)); };

    std::size_t panels = active.size();
    bool budget_exhausted = false;
    double frozen_err = 0.0;
    while (!active.empty() && total_err > tolerance()) {
        Panel p = active.top();
        active.pop();
        const double mid = 0.5 * (p.a + p.b);
        const bool too_narrow = !(mid > p.a && mid < p.b) ||
                                (p.b - p.a) <= 64.0 * kEps * std::max(std::abs(p.a), std::abs(p.b));
        if (p.depth >= s.max_depth || too_narrow) {
            frozen.push_back(p);
            frozen_err += p.error;
            if (frozen_err > tolerance()) break; // unreachable accuracy
            continue;
        }
        if (panels >= kMaxPanels) {
            frozen.push_back(p);
            budget_exhausted = true;
            break;
        }
        Panel left = gauss_kronrod(ev, p.segment, p.a, mid, p.depth + 1);
        Panel right = gauss_kronrod(ev, p.segment, mid, p.b, p.depth + 1);
        total += left.value + right.value - p.value;
        total_err += left.error + right.error - p.error;
        active.push(left);
        active.push(right);
        ++panels;
    }

    // Deterministic summation in panel order.
    while (!active.empty()) {
        frozen.push_back(active.top());
        active.pop();
    }
    std::sort(frozen.begin(), frozen.end(), [](const Panel& l, const Panel& r) {
        return l.segment != r.segment ? l.segment < r.segment : l.a < r.a;
    });
    QuadResult out;
    for (const Panel& p : frozen) {
        out.value += p.value;
        out.error += p.error;
    }
    out.evaluations = ev.count();
    out.converged = !budget_exhausted &&
                    out.error <= std::max(s.abs_tol, s.rel_tol * std::abs(out.value));
    return out;
}

double integrate(const RealFunction& f, Interval iv, const QuadSettings& s,
                 std::span<const double> breakpoints)
{
    const QuadResult r = integrate_adaptive(f, iv, s, breakpoints);
    if (!r.converged)
        throw AccuracyError("quadrature accuracy not reached", r.value, r.error);
    return r.value;
}

double find_root(const RealFunction& f, Interval iv, const QuadSettings& s)
{
    s.validate();
    if (!iv.bounded()) throw DomainError("find_root needs a finite bracket");
    iv.validate();
    const double flo = f(iv.lo);
    const double fhi = f(iv.hi);
    if (!std::isfinite(flo) || !std::isfinite(fhi))
        throw EvaluationError("non-finite value at bracket end", std::isfinite(flo) ? iv.hi : iv.lo);
    if (flo == 0.0) return iv.lo;
    if (fhi == 0.0) return iv.hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw BracketError("no sign change on [" + std::to_string(iv.lo) + ", " +
                           std::to_string(iv.hi) + "]");

    const double xtol = s.abs_tol;
    auto done = [&](double a, double b) {
        return std::abs(b - a) <= std::max(xtol, 4.0 * kEps * std::max(std::abs(a), std::abs(b)));
    };
    boost::uintmax_t iters = 400;
    const auto [a, b] = boost::math::tools::toms748_solve(f, iv.lo, iv.hi, flo, fhi, done, iters);
    const double fa = f(a);
    const double fb = f(b);
    return std::abs(fa) <= std::abs(fb) ? a : b;
}

LineIntegral integrate_with_tails(const RealFunction& f, Interval window, Interval domain,
                                  const QuadSettings& s, std::span<const double> breakpoints,
                                  double cap)
{
    domain.validate();
    window = intersect(window, domain);
    if (!(window.lo < window.hi)) {
        if (domain.bounded())
            window = domain;
        else if (domain.lo_finite())
            window = {domain.lo, std::min(domain.hi, domain.lo + 1.0)};
        else if (domain.hi_finite())
            window = {std::max(domain.lo, domain.hi - 1.0), domain.hi};
        else
            window = {-0.5, 0.5};
    }

    LineIntegral out;
    try {
        const QuadResult central = integrate_adaptive(f, window, s, breakpoints);
        out.value = central.value;
        out.error = central.error;
        out.converged = central.converged;
    } catch (const EvaluationError&) {
        out.diverged = true;
        out.value = kInf;
        return out;
    }
    if (std::abs(out.value) > cap) {
        out.diverged = true;
        out.value = kInf;
        return out;
    }

    constexpr int kMaxTailPanels = 400;
    for (const int dir : {+1, -1}) {
        double edge = dir > 0 ? window.hi : window.lo;
        const double end = dir > 0 ? domain.hi : domain.lo;
        if (edge == end) continue;
        double width = std::max(0.25 * window.width(), 1e-3);
        int small_run = 0;
        bool finished = false;
        for (int k = 0; k < kMaxTailPanels; ++k) {
            double next = edge + dir * width;
            if ((dir > 0 && next >= end) || (dir < 0 && next <= end)) next = end;
            const Interval panel_iv = dir > 0 ? Interval{edge, next} : Interval{next, edge};
            QuadResult panel;
            try {
                panel = integrate_adaptive(f, panel_iv, s, breakpoints);
            } catch (const EvaluationError&) {
                out.diverged = true;
                out.value = kInf;
                return out;
            }
            out.value += panel.value;
            out.error += panel.error;
            out.converged = out.converged && panel.converged;
            if (std::abs(out.value) > cap || !std::isfinite(out.value)) {
                out.diverged = true;
                out.value = kInf;
                return out;
            }
            if (next == end) {
                finished = true;
                break;
            }
            const double negligible = 0.01 * std::max(s.abs_tol, s.rel_tol * std::abs(out.value));
            small_run = std::abs(panel.value) <= negligible ? small_run + 1 : 0;
            if (small_run >= 2 && k >= 3) {
                finished = true;
                break;
            }
            edge = next;
            width *= 1.5;
        }
        if (!finished) out.converged = false;
    }
    return out;
}

MonotoneCubic::MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys))
{
    const std::size_t n = xs_.size();
    if (n < 2 || ys_.size() != n) throw ShapeError("monotone cubic needs >= 2 matching knots");
    std::vector<double> delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!(xs_[i + 1] > xs_[i])) throw ShapeError("monotone cubic knots must increase");
        delta[i] = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
    }
    slopes_.assign(n, 0.0);
    slopes_[0] = delta[0];
    slopes_[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i)
        slopes_[i] = delta[i - 1] * delta[i] <= 0.0 ? 0.0 : 0.5 * (delta[i - 1] + delta[i]);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (delta[i] == 0.0) {
            slopes_[i] = slopes_[i + 1] = 0.0;
            continue;
        }
        const double a = slopes_[i] / delta[i];
        const double b = slopes_[i + 1] / delta[i];
        const double r = a * a + b * b;
        if (r > 9.0) {
            const double t = 3.0 / std::sqrt(r);
            slopes_[i] = t * a * delta[i];
            slopes_[i + 1] = t * b * delta[i];
        }
    }
}

std::size_t MonotoneCubic::panel(double x) const
{
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t i = it == xs_.begin() ? 0 : static_cast<std::size_t>(it - xs_.begin()) - 1;
    return std::min(i, xs_.size() - 2);
}

double MonotoneCubic::operator()(double x) const
{
    const std::size_t i = panel(x);
    const double h = xs_[i + 1] - xs_[i];
    const double t = (x - xs_[i]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * ys_[i] + (t3 - 2 * t2 + t) * h * slopes_[i] +
           (-2 * t3 + 3 * t2) * ys_[i + 1] + (t3 - t2) * h * slopes_[i + 1];
}

} // namespace tchi
