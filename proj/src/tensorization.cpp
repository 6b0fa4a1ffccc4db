#include "tchi/tensorization.hpp"

#include <cmath>
#include <random>

#include "tchi/errors.hpp"

namespace tchi {

double tensor_constant(const TensorConstantInput& in)
{
    if (!(in.C1 > 0.0) || !(in.C2 > 0.0) || !std::isfinite(in.C1) || !std::isfinite(in.C2))
        throw DomainError("tensor constant needs positive finite C1, C2");
    if (in.d1 < 1 || in.d2 < 1) throw DomainError("tensor constant needs dimensions >= 1");
    auto inflate = [](int d) { return 1.0 + std::sqrt((3.0 * d + 2.0) * d); };
    return std::min(in.C1 + in.C2 * inflate(in.d2), in.C2 + in.C1 * inflate(in.d1));
}

MomentLemmaReport check_moment_lemma(const Distribution1D& mu, double C, const QuadSettings& s)
{
    if (!(C > 0.0)) throw DomainError("transport constant must be positive");
    s.validate();
    const Interval sup = mu.support();
    const Interval window = mu.window(s.trunc_q);
    const auto bps = mu.breakpoints();
    auto moment = [&](auto&& weight) {
        const RealFunction f = [&](double x) { return weight(x) * mu.pdf(x); };
        const LineIntegral li = integrate_with_tails(f, window, sup, s, bps);
        if (li.diverged) return kInf;
        if (!li.converged) throw AccuracyError("moment integral did not converge", li.value, li.error);
        return li.value;
    };
    MomentLemmaReport r;
    r.mean = moment([](double x) { return x; });
    const double m2 = moment([&](double x) { return (x - r.mean) * (x - r.mean); });
    const double m4 = moment([&](double x) {
        const double c = (x - r.mean) * (x - r.mean);
        return c * c;
    });
    r.second = make_report("moment2", m2, C, C, "m2", "C");
    r.fourth = make_report("moment4", m4, 5.0 * C * C, C, "m4", "5*C^2");
    return r;
}

namespace {

constexpr double kMassTol = 1e-9;

void check_grid(const std::vector<DiscreteProductDensity::Atom>& g, const char* name)
{
    if (g.empty()) throw SpecError(std::string(name) + " is empty");
    double total = 0.0;
    for (const auto& a : g) {
        if (!std::isfinite(a.point) || !std::isfinite(a.weight) || a.weight < 0.0)
            throw SpecError(std::string(name) + " has an invalid atom");
        total += a.weight;
    }
    if (std::abs(total - 1.0) > kMassTol) throw SpecError(std::string(name) + " weights must sum to 1");
}

} // namespace

void DiscreteProductDensity::validate() const
{
    check_grid(grid1, "grid1");
    check_grid(grid2, "grid2");
    if (rho.size() != grid1.size()) throw SpecError("rho must have one row per grid1 atom");
    double mass = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        if (rho[i].size() != grid2.size()) throw SpecError("rho must have one column per grid2 atom");
        for (std::size_t j = 0; j < rho[i].size(); ++j) {
            if (!std::isfinite(rho[i][j]) || rho[i][j] < 0.0) throw SpecError("rho entries must be >= 0");
            mass += rho[i][j] * grid1[i].weight * grid2[j].weight;
        }
    }
    if (std::abs(mass - 1.0) > kMassTol) throw SpecError("rho must integrate to 1");
}

std::vector<double> DiscreteProductDensity::first_marginal() const
{
    std::vector<double> out(grid1.size(), 0.0);
    for (std::size_t i = 0; i < grid1.size(); ++i)
        for (std::size_t j = 0; j < grid2.size(); ++j) out[i] += rho[i][j] * grid2[j].weight;
    return out;
}

InequalityReport check_rhogd_lemma(const DiscreteProductDensity& dpd, double alpha, double beta)
{
    if (!(alpha > 0.0) || !(beta >= alpha) || !std::isfinite(beta))
        throw DomainError("rhogd lemma needs beta >= alpha > 0");
    dpd.validate();
    const auto rho1 = dpd.first_marginal();
    double conditional = 0.0;
    double marginal = 0.0;
    double joint = 0.0;
    for (std::size_t i = 0; i < dpd.grid1.size(); ++i) {
        if (!(rho1[i] >= 1.0 / alpha)) continue;
        const double w1 = dpd.grid1[i].weight;
        marginal += (rho1[i] - 1.0) * (rho1[i] - 1.0) * w1;
        for (std::size_t j = 0; j < dpd.grid2.size(); ++j) {
            const double w = w1 * dpd.grid2[j].weight;
            const double q = dpd.rho[i][j] / rho1[i] - 1.0;
            conditional += q * q * rho1[i] * w;
            joint += (dpd.rho[i][j] - 1.0) * (dpd.rho[i][j] - 1.0) * w;
        }
    }
    return make_report("rhogd", conditional + beta * marginal, beta * joint, beta,
                       "conditional + beta*marginal", "beta*joint");
}

DiscreteProductDensity random_product_density(std::uint64_t seed, int rows, int cols)
{
    if (rows < 1 || cols < 1) throw DomainError("grid sizes must be positive");
    std::mt19937_64 rng(seed);
    // Explicit transforms keep the stream identical across standard libraries.
    auto unit = [](std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1p-53; };
    auto expo = [&](std::mt19937_64& g) { return -std::log1p(-unit(g)); };
    auto grid = [&](int size) {
        std::vector<DiscreteProductDensity::Atom> g(static_cast<std::size_t>(size));
        double total = 0.0;
        for (int i = 0; i < size; ++i) {
            g[i].point = static_cast<double>(i);
            g[i].weight = 0.05 + unit(rng);
            total += g[i].weight;
        }
        for (auto& a : g) a.weight /= total;
        return g;
    };
    DiscreteProductDensity d;
    d.grid1 = grid(rows);
    d.grid2 = grid(cols);
    d.rho.assign(rows, std::vector<double>(cols));
    double mass = 0.0;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            d.rho[i][j] = expo(rng);
            mass += d.rho[i][j] * d.grid1[i].weight * d.grid2[j].weight;
        }
    for (auto& row : d.rho)
        for (double& v : row) v /= mass;
    return d;
}

} // namespace tchi
