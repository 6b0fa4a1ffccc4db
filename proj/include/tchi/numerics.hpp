#pragma once

// Adaptive quadrature, bracketed root finding and tail-scanning integration.

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace tchi {

using RealFunction = std::function<double(double)>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Partial integrals beyond this magnitude are reported as divergent.
inline constexpr double kDivergenceCap = 1e12;

struct QuadSettings {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_depth = 60;
    /// Quantile level used to cut unbounded domains to a finite window.
    double trunc_q = 1e-9;

    /// Throws DomainError if any invariant is violated.
    void validate() const;

    /// Same settings with both tolerances multiplied by `factor`.
    QuadSettings tightened(double factor) const;
};

struct Interval {
    double lo = -kInf;
    double hi = kInf;

    static Interval real_line() { return {}; }

    bool lo_finite() const { return lo > -kInf; }
    bool hi_finite() const { return hi < kInf; }
    bool bounded() const { return lo_finite() && hi_finite(); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    double width() const { return hi - lo; }

    /// Throws DomainError unless lo < hi.
    void validate() const;
};

/// Smallest interval containing both.
Interval hull(const Interval& a, const Interval& b);
/// Intersection; may be empty (lo >= hi).
Interval intersect(const Interval& a, const Interval& b);

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
    std::size_t evaluations = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature. Infinite endpoints are
/// handled by the x = a + t/(1-t) map. No panel ever straddles one of the
/// supplied breakpoints. Never throws on missed accuracy; inspect
/// `converged`. Throws EvaluationError when f is non-finite.
QuadResult integrate_adaptive(const RealFunction& f, Interval iv, const QuadSettings& s,
                              std::span<const double> breakpoints = {});

/// As integrate_adaptive, but throws AccuracyError when the tolerance
/// max(abs_tol, rel_tol*|I|) is not met.
double integrate(const RealFunction& f, Interval iv, const QuadSettings& s,
                 std::span<const double> breakpoints = {});

/// Bracketed root of a continuous f with f(lo)*f(hi) <= 0 on a finite
/// interval. Throws BracketError if there is no sign change.
double find_root(const RealFunction& f, Interval iv, const QuadSettings& s);

struct LineIntegral {
    double value = 0.0;
    double error = 0.0;
    bool diverged = false;
    bool converged = true;
};

/// Integrates a nonnegative-tailed f over `domain`: the central `window`
/// adaptively, then outward panels of geometrically growing width on each
/// side until contributions become negligible. Tail partial sums larger than
/// `cap`, or a non-finite tail evaluation, mark the integral as divergent.
LineIntegral integrate_with_tails(const RealFunction& f, Interval window, Interval domain,
                                  const QuadSettings& s,
                                  std::span<const double> breakpoints = {},
                                  double cap = kDivergenceCap);

/// Sorted, de-duplicated merge of breakpoint lists restricted to iv's interior.
std::vector<double> merge_breakpoints(std::span<const double> a, std::span<const double> b,
                                      Interval iv = Interval::real_line());

/// Monotone piecewise-cubic (Fritsch-Carlson) interpolant through sorted knots.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> xs, std::vector<double> ys);

    double operator()(double x) const;
    bool empty() const { return xs_.empty(); }
    double x_min() const { return xs_.front(); }
    double x_max() const { return xs_.back(); }
    /// Index i with xs[i] <= x < xs[i+1], clamped to valid panels.
    std::size_t panel(double x) const;
    const std::vector<double>& xs() const { return xs_; }
    const std::vector<double>& ys() const { return ys_; }

private:
    std::vector<double> xs_;
    std::vector<double> ys_;
    std::vector<double> slopes_;
};

} // namespace tchi
