#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tchi/distribution_spec.hpp"
#include "tchi/errors.hpp"
#include "tchi/families.hpp"
#include "tchi/inequalities.hpp"

using namespace tchi;

namespace {

const QuadSettings kSettings;

// Independent arbitrary-precision evaluations.
constexpr double kGaussianB = 0.478812895037724206;
constexpr double kFgShiftOne = 1.20770203400583730;     // int (F-G)^2/f, laplace(0,1) vs laplace(1,1)
constexpr double kChiLaplaceOne = 0.857299646718234387; // chi^2(laplace(1,1) | laplace(0,1))
constexpr double kGnChiLb4 = 0.199104642971777307;
constexpr double kGnFgUb4 = 0.0101528790697831874;

} // namespace

TEST_CASE("report semantics")
{
    const auto ok = make_report("c", 1.0, 2.0, 1.0, "l", "r");
    CHECK(ok.passed);
    CHECK_FALSE(ok.vacuous);
    CHECK(ok.margin == doctest::Approx(1.0));
    CHECK(make_report("c", 2.0 + 1e-9, 2.0, 1.0, "l", "r").passed);
    CHECK_FALSE(make_report("c", 2.1, 2.0, 1.0, "l", "r").passed);
    const auto vac = make_report("c", 5.0, kInf, 1.0, "l", "r");
    CHECK(vac.passed);
    CHECK(vac.vacuous);
    CHECK(make_report("c", kInf, kInf, 1.0, "l", "r").vacuous);
    CHECK_FALSE(make_report("c", 1.0, std::nan(""), 1.0, "l", "r").passed);
}

TEST_CASE("Muckenhoupt constant: analytic cases")
{
    const auto lap = muckenhoupt_b(Laplace(0.0, 1.0), kSettings);
    CHECK(lap.b == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(lap.right.at_infinity);
    CHECK(lap.left.at_infinity);

    const auto uni = muckenhoupt_b(Uniform(0.0, 1.0), kSettings);
    CHECK(std::abs(uni.b - 1.0 / 16.0) <= 1e-8);
    CHECK_FALSE(uni.right.at_infinity);
    CHECK(uni.right.arg == doctest::Approx(0.75).epsilon(1e-4));

    CHECK(muckenhoupt_b(Gaussian(0.0, 1.0), kSettings).b == doctest::Approx(kGaussianB).epsilon(1e-7));
    CHECK(muckenhoupt_b(Exponential(1.0), kSettings).b == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Muckenhoupt constant: scaling and translation")
{
    for (double lam : {0.5, 2.0, 3.0}) {
        CHECK(muckenhoupt_b(Gaussian(0.0, lam), kSettings).b == doctest::Approx(lam * lam * kGaussianB).epsilon(1e-7));
        CHECK(muckenhoupt_b(Uniform(0.0, lam), kSettings).b == doctest::Approx(lam * lam / 16.0).epsilon(1e-8));
    }
    CHECK(muckenhoupt_b(Gaussian(4.0, 1.0), kSettings).b == doctest::Approx(kGaussianB).epsilon(1e-7));
    CHECK(muckenhoupt_b(Laplace(-2.0, 1.0), kSettings).b == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Muckenhoupt constant requires a positive density")
{
    CHECK_THROWS_AS(muckenhoupt_b(GnLaw(3), kSettings), PositivityError);
}

TEST_CASE("(F-G)^2/f functional")
{
    const Laplace mu(0.0, 1.0);
    CHECK(fg_ratio_integral(mu, mu, kSettings) == doctest::Approx(0.0));
    CHECK(fg_ratio_integral(mu, Laplace(1.0, 1.0), kSettings) == doctest::Approx(kFgShiftOne).epsilon(1e-8));
    // nu leaves the support of mu.
    CHECK(fg_ratio_integral(Uniform(0.0, 1.0), Uniform(0.5, 1.5), kSettings) == kInf);
}

TEST_CASE("shifted Laplace example")
{
    for (double m : {0.5, 1.0, 2.0}) {
        const auto ex = counterexample_shift(m, kSettings);
        const double exact = 0.5 * std::exp(-m) * std::expm1(m) * std::expm1(m);
        CHECK(ex.lower_bound == doctest::Approx(exact).epsilon(1e-14));
        CHECK(ex.tail_integral == doctest::Approx(exact).epsilon(1e-6));
        CHECK(ex.w2_sq_numeric == doctest::Approx(m * m).epsilon(1e-6));
        CHECK(ex.fg_int >= ex.tail_integral);
    }
    CHECK(counterexample_shift(1.0, kSettings).fg_int == doctest::Approx(kFgShiftOne).epsilon(1e-8));
    // The ratio to W2^2 grows like e^m / (2 m^2).
    double prev = 0.0;
    for (int m = 1; m <= 5; ++m) {
        const double r = counterexample_shift(m, kSettings).ratio;
        CHECK(r > prev);
        prev = r;
    }
    CHECK_THROWS_AS(counterexample_shift(0.0, kSettings), DomainError);
}

TEST_CASE("g_n example")
{
    const auto ex = counterexample_gn(4, kSettings);
    CHECK(ex.chi_lb == doctest::Approx(kGnChiLb4).epsilon(1e-13));
    CHECK(ex.fg_ub == doctest::Approx(kGnFgUb4).epsilon(1e-13));
    CHECK(std::abs(ex.chi_sq - ex.chi_series) <= 1e-8);
    CHECK(ex.bounds_hold(1e-12));
    for (int n = 2; n <= 8; ++n) {
        const auto g = counterexample_gn(n, kSettings);
        INFO(n);
        CHECK(std::abs(g.chi_sq - g.chi_series) <= 1e-8);
        CHECK(g.bounds_hold(0.0));
    }
    const auto g8 = counterexample_gn(8, kSettings);
    CHECK(g8.chi_sq / g8.fg_int > 10.0);
}

TEST_CASE("chain links on explicit pairs")
{
    const Laplace mu(0.0, 1.0);
    const Laplace nu(1.0, 1.0);
    const auto p1 = verify_prop1(mu, nu, kSettings);
    CHECK(p1.passed);
    CHECK(p1.lhs == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(p1.rhs == doctest::Approx(4.0 * kFgShiftOne).epsilon(1e-7));

    const auto t = verify_tchi_from_b(mu, nu, kSettings, 1.0);
    CHECK(t.passed);
    CHECK(t.rhs == doctest::Approx(16.0 * kChiLaplaceOne).epsilon(1e-7));

    const auto g = verify_prop2(mu, Gaussian(0.3, 1.0), kSettings);
    CHECK(g.passed);
    CHECK_FALSE(g.vacuous);

    // chi^2 diverges: the second link passes vacuously.
    const auto heavy = verify_prop2(Gaussian(0.0, 1.0), Laplace(0.0, 1.0), kSettings);
    CHECK(heavy.passed);
    CHECK(heavy.vacuous);
}

TEST_CASE("chain links over the standard family")
{
    const auto pairs = standard_pairs();
    CHECK(pairs.size() >= 20);
    for (const auto& p : pairs) {
        const auto mu = make_family(p.mu);
        const auto nu = make_family(p.nu);
        const double b = muckenhoupt_b(*mu, kSettings).b;
        INFO(p.label);
        CHECK(verify_prop1(*mu, *nu, kSettings).passed);
        CHECK(verify_prop2(*mu, *nu, kSettings, b).passed);
        CHECK(verify_tchi_from_b(*mu, *nu, kSettings, b).passed);
    }
}

TEST_CASE("constants from a Poincare constant")
{
    CHECK(tchi_constant_from_poincare(1.0) == 32.0);
    CHECK(tchi_constant_from_poincare(0.25) == 8.0);
    CHECK(poincare_b_bridge(3.0) == 6.0);
    CHECK_THROWS_AS(tchi_constant_from_poincare(0.0), DomainError);
    CHECK_THROWS_AS(poincare_b_bridge(-1.0), DomainError);
    CHECK_THROWS_AS(tchi_constant_from_poincare(kInf), DomainError);
}
