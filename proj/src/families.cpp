#include "tchi/families.hpp"

#include <algorithm>

namespace tchi {

namespace {

DistributionSpec bimodal()
{
    return mixture_spec({{0.5, gaussian_spec(-1.0, 1.0)}, {0.5, gaussian_spec(1.0, 1.0)}});
}

// Density e^{2x} left of 0 and e^{-x}/2 right of 0.
DistributionSpec skewed()
{
    DistributionSpec s;
    s.family = Family::piecewise;
    s.pieces = {{-kInf, 0.0, 1.0, 2.0}, {0.0, kInf, 0.5, -1.0}};
    return s;
}

std::vector<NamedPair> sorted(std::vector<NamedPair> v)
{
    std::sort(v.begin(), v.end(), [](const NamedPair& a, const NamedPair& b) { return a.label < b.label; });
    return v;
}

} // namespace

std::vector<NamedLaw> reference_laws()
{
    return {
        {"bimodal", bimodal()},
        {"exponential(1)", exponential_spec(1.0)},
        {"gaussian(0,1)", gaussian_spec(0.0, 1.0)},
        {"gaussian(2,0.5)", gaussian_spec(2.0, 0.5)},
        {"laplace(0,1)", laplace_spec(0.0, 1.0)},
        {"laplace(1,2)", laplace_spec(1.0, 2.0)},
        {"skewed", skewed()},
        {"uniform(0,1)", uniform_spec(0.0, 1.0)},
    };
}

std::vector<NamedPair> standard_pairs()
{
    const auto g0 = gaussian_spec(0.0, 1.0);
    const auto l0 = laplace_spec(0.0, 1.0);
    const auto u0 = uniform_spec(0.0, 1.0);
    return sorted({
        {"bimodal|gaussian(0,1)", bimodal(), g0},
        {"exponential(1)|exponential(1.5)", exponential_spec(1.0), exponential_spec(1.5)},
        {"exponential(1)|exponential(2)", exponential_spec(1.0), exponential_spec(2.0)},
        {"gaussian(0,1)|bimodal", g0, bimodal()},
        {"gaussian(0,1)|gaussian(0,0.7)", g0, gaussian_spec(0.0, 0.7)},
        {"gaussian(0,1)|gaussian(0,1.2)", g0, gaussian_spec(0.0, 1.2)},
        {"gaussian(0,1)|gaussian(0.25,1)", g0, gaussian_spec(0.25, 1.0)},
        {"gaussian(0,1)|gaussian(0.3,0.8)", g0, gaussian_spec(0.3, 0.8)},
        {"gaussian(0,1)|gaussian(0.5,1)", g0, gaussian_spec(0.5, 1.0)},
        {"gaussian(0,1)|gaussian(1,1)", g0, gaussian_spec(1.0, 1.0)},
        {"gaussian(0,1)|laplace(0,1)", g0, l0},
        {"gaussian(0,1)|mix(0.7,0.3)", g0,
         mixture_spec({{0.7, gaussian_spec(0.0, 1.0)}, {0.3, gaussian_spec(1.0, 1.0)}})},
        {"laplace(0,1)|gaussian(0,1)", l0, g0},
        {"laplace(0,1)|gaussian(0.3,1)", l0, gaussian_spec(0.3, 1.0)},
        {"laplace(0,1)|gn(4)", l0, gn_spec(4)},
        {"laplace(0,1)|gn(6)", l0, gn_spec(6)},
        {"laplace(0,1)|laplace(0.5,1)", l0, laplace_spec(0.5, 1.0)},
        {"laplace(0,1)|laplace(1,1)", l0, laplace_spec(1.0, 1.0)},
        {"laplace(0,1)|laplace(2,1)", l0, laplace_spec(2.0, 1.0)},
        {"laplace(0,1)|mix(0.5,0.5)", l0,
         mixture_spec({{0.5, laplace_spec(0.0, 1.0)}, {0.5, laplace_spec(1.0, 1.0)}})},
        {"skewed|gaussian(0,1)", skewed(), g0},
        {"uniform(0,1)|uniform(0,0.5)", u0, uniform_spec(0.0, 0.5)},
        {"uniform(0,1)|uniform(0.25,0.75)", u0, uniform_spec(0.25, 0.75)},
        {"uniform(0,1)|uniform(0.5,1.5)", u0, uniform_spec(0.5, 1.5)},
    });
}

std::vector<NamedPair> agreement_pairs()
{
    const auto g0 = gaussian_spec(0.0, 1.0);
    const auto l0 = laplace_spec(0.0, 1.0);
    return sorted({
        {"bimodal|gaussian(0,1)", bimodal(), g0},
        {"gaussian(0,1)|gaussian(0.25,1)", g0, gaussian_spec(0.25, 1.0)},
        {"gaussian(0,1)|gaussian(0.3,0.8)", g0, gaussian_spec(0.3, 0.8)},
        {"gaussian(0,1)|gaussian(1,1)", g0, gaussian_spec(1.0, 1.0)},
        {"laplace(0,1)|gaussian(0.3,1)", l0, gaussian_spec(0.3, 1.0)},
        {"laplace(0,1)|laplace(0.5,1)", l0, laplace_spec(0.5, 1.0)},
        {"laplace(0,1)|laplace(1,1)", l0, laplace_spec(1.0, 1.0)},
        {"laplace(0,1)|mix(0.5,0.5)", l0,
         mixture_spec({{0.5, laplace_spec(0.0, 1.0)}, {0.5, laplace_spec(1.0, 1.0)}})},
        {"uniform(0,1)|uniform(0.25,0.75)", uniform_spec(0.0, 1.0), uniform_spec(0.25, 0.75)},
        {"uniform(0,1)|uniform(0.5,1.5)", uniform_spec(0.0, 1.0), uniform_spec(0.5, 1.5)},
    });
}

std::vector<NamedPair> empirical_pairs()
{
    const auto g0 = gaussian_spec(0.0, 1.0);
    return sorted({
        {"bimodal|gaussian(0,1)", bimodal(), g0},
        {"gaussian(0,1)|gaussian(0.3,0.8)", g0, gaussian_spec(0.3, 0.8)},
        {"gaussian(0,1)|gaussian(0.5,1)", g0, gaussian_spec(0.5, 1.0)},
        {"uniform(0,1)|uniform(0.25,0.75)", uniform_spec(0.0, 1.0), uniform_spec(0.25, 0.75)},
    });
}

std::vector<NamedPair> mollify_pairs()
{
    const auto g0 = gaussian_spec(0.0, 1.0);
    const auto l0 = laplace_spec(0.0, 1.0);
    return sorted({
        {"bimodal|gaussian(0,1)", bimodal(), g0},
        {"exponential(1)|exponential(2)", exponential_spec(1.0), exponential_spec(2.0)},
        {"gaussian(0,1)|gaussian(0.25,1)", g0, gaussian_spec(0.25, 1.0)},
        {"gaussian(0,1)|gaussian(0.5,1)", g0, gaussian_spec(0.5, 1.0)},
        {"gaussian(0,1)|gaussian(1,1)", g0, gaussian_spec(1.0, 1.0)},
        {"gaussian(0,1)|mix(0.7,0.3)", g0,
         mixture_spec({{0.7, gaussian_spec(0.0, 1.0)}, {0.3, gaussian_spec(1.0, 1.0)}})},
        {"laplace(0,1)|gaussian(0.3,1)", l0, gaussian_spec(0.3, 1.0)},
        {"laplace(0,1)|laplace(0.5,1)", l0, laplace_spec(0.5, 1.0)},
        {"laplace(0,1)|laplace(1,1)", l0, laplace_spec(1.0, 1.0)},
        {"uniform(0,1)|uniform(0.25,0.75)", uniform_spec(0.0, 1.0), uniform_spec(0.25, 0.75)},
    });
}

} // namespace tchi
