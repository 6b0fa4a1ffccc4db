#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tchi/errors.hpp"
#include "tchi/numerics.hpp"

using namespace tchi;

namespace {

// Phi^{-1}(0.975), 20 digits from an arbitrary-precision evaluation.
constexpr double kNormal975 = 1.95996398454005423552;

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

} // namespace

TEST_CASE("integrate: closed-form integrals")
{
    const QuadSettings s;
    CHECK(integrate([](double) { return 1.0; }, {0.0, 1.0}, s) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(integrate([](double x) { return x * x; }, {0.0, 1.0}, s) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    const double laplace_mass = integrate([](double x) { return 0.5 * std::exp(-std::abs(x)); }, Interval::real_line(), s);
    CHECK(laplace_mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("integrate: additivity over a split")
{
    const QuadSettings s;
    auto f = [](double x) { return std::sin(3.0 * x) * std::exp(-x); };
    const double whole = integrate(f, {0.0, 4.0}, s);
    const double parts = integrate(f, {0.0, 1.3}, s) + integrate(f, {1.3, 4.0}, s);
    CHECK(std::abs(whole - parts) <= 2.0 * s.abs_tol);
}

TEST_CASE("integrate: breakpoints resolve jumps exactly")
{
    const QuadSettings s;
    auto step = [](double x) { return x < 0.3 ? 1.0 : 3.0; };
    const std::vector<double> bps{0.3};
    CHECK(integrate(step, {0.0, 1.0}, s, bps) == doctest::Approx(0.3 + 2.1).epsilon(1e-14));
}

TEST_CASE("integrate: errors")
{
    QuadSettings s;
    CHECK_THROWS_AS(integrate([](double) { return std::nan(""); }, {0.0, 1.0}, s), EvaluationError);

    s.max_depth = 1;
    s.abs_tol = 1e-15;
    s.rel_tol = 1e-15;
    try {
        integrate([](double x) { return std::sqrt(std::abs(x - 0.123456)); }, {0.0, 1.0}, s);
        FAIL("expected an accuracy error");
    } catch (const AccuracyError& e) {
        CHECK(e.best_estimate() == doctest::Approx(0.6).epsilon(0.05));
        CHECK(e.error_estimate() > 0.0);
    }
}

TEST_CASE("QuadSettings validation")
{
    QuadSettings s;
    CHECK_NOTHROW(s.validate());
    s.trunc_q = 0.5;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = QuadSettings{};
    s.abs_tol = 0.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = QuadSettings{};
    s.max_depth = 0;
    CHECK_THROWS_AS(s.validate(), DomainError);
}

TEST_CASE("find_root")
{
    const QuadSettings s;
    CHECK(find_root([](double x) { return x - 0.5; }, {0.0, 1.0}, s) == doctest::Approx(0.5).epsilon(1e-14));
    const double q = find_root([](double x) { return std_normal_cdf(x) - 0.975; }, {0.0, 4.0}, s);
    CHECK(q == doctest::Approx(kNormal975).epsilon(1e-9));
    const double l = find_root([](double x) { return std::exp(x) - 2.0; }, {0.0, 2.0}, s);
    CHECK(l == doctest::Approx(std::numbers::ln2).epsilon(1e-12));
}

TEST_CASE("find_root: residual of a Lipschitz function")
{
    const QuadSettings s;
    auto f = [](double x) { return 10.0 * std::tanh(x - 0.7); };
    const double r = find_root(f, {-3.0, 5.0}, s);
    CHECK(std::abs(f(r)) <= 10.0 * s.abs_tol);
}

TEST_CASE("find_root: errors")
{
    const QuadSettings s;
    CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, {-1.0, 1.0}, s), BracketError);
    CHECK_THROWS_AS(find_root([](double x) { return x; }, {-kInf, 1.0}, s), DomainError);
}

TEST_CASE("integrate_with_tails")
{
    const QuadSettings s;
    SUBCASE("slowly decaying integrand converges")
    {
        const auto r = integrate_with_tails([](double x) { return 1.0 / (1.0 + x * x); }, {-5.0, 5.0},
                                            Interval::real_line(), s, {});
        CHECK_FALSE(r.diverged);
        CHECK(r.value == doctest::Approx(std::numbers::pi).epsilon(1e-7));
    }
    SUBCASE("growing integrand is reported as divergent")
    {
        const auto r = integrate_with_tails([](double x) { return std::exp(0.5 * std::abs(x)); }, {-5.0, 5.0},
                                            Interval::real_line(), s, {});
        CHECK(r.diverged);
        CHECK(r.value == kInf);
    }
    SUBCASE("window outside a half-line domain")
    {
        const auto r = integrate_with_tails([](double x) { return std::exp(-x); }, {-3.0, -1.0},
                                            {2.0, kInf}, s, {});
        CHECK(r.value == doctest::Approx(std::exp(-2.0)).epsilon(1e-8));
    }
}

TEST_CASE("Interval helpers")
{
    const Interval a{0.0, 2.0};
    const Interval b{1.0, kInf};
    CHECK(hull(a, b).lo == 0.0);
    CHECK(hull(a, b).hi == kInf);
    CHECK(intersect(a, b).lo == 1.0);
    CHECK(intersect(a, b).hi == 2.0);
    CHECK(Interval::real_line().contains(1e300));
    CHECK_THROWS_AS(Interval({1.0, 0.0}).validate(), DomainError);
}

TEST_CASE("merge_breakpoints keeps sorted interior points")
{
    const std::vector<double> a{3.0, 1.0, 1.0};
    const std::vector<double> b{2.0, -5.0};
    const auto m = merge_breakpoints(a, b, {0.0, 3.0});
    REQUIRE(m.size() == 2);
    CHECK(m[0] == 1.0);
    CHECK(m[1] == 2.0);
}

TEST_CASE("MonotoneCubic preserves monotone data")
{
    const MonotoneCubic c({0.0, 1.0, 2.0, 3.0, 4.0}, {0.0, 0.1, 0.1, 5.0, 5.2});
    double prev = c(0.0);
    for (int i = 1; i <= 400; ++i) {
        const double v = c(i * 0.01);
        CHECK(v >= prev - 1e-15);
        prev = v;
    }
    CHECK(c(3.0) == doctest::Approx(5.0));
    CHECK_THROWS_AS(MonotoneCubic({0.0, 0.0}, {1.0, 2.0}), ShapeError);
}
