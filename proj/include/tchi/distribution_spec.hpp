#pragma once

// Serializable description of a distribution and its JSON / shorthand forms.
//
// JSON layout:
//   {"family": "gaussian",    "params": {"mean": 0, "sd": 1}}
//   {"family": "laplace",     "params": {"shift": 0, "scale": 1}}
//   {"family": "exponential", "params": {"rate": 1}}
//   {"family": "uniform",     "params": {"lo": 0, "hi": 1}}
//   {"family": "gn_example",  "params": {"n": 4}}
//   {"family": "mixture",
//    "components": [{"weight": 0.5, "dist": {...}}, {"weight": 0.5, "dist": {...}}]}
//   {"family": "piecewise",
//    "pieces": [{"lo": 0, "hi": 0.5, "coef": 0.5, "rate": 0}, ...]}
//   {"family": "truncated",   "params": {"n": 10},
//    "components": [{"weight": 1, "dist": <target>}, {"weight": 1, "dist": <reference>}]}
//
// Piece densities are coef * exp(rate * x) on [lo, hi); "lo"/"hi" may be the
// strings "-inf"/"inf".

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tchi/distributions.hpp"

namespace tchi {

enum class Family { gaussian, laplace, exponential, uniform, mixture, piecewise, gn_example, truncated };

std::string_view family_name(Family f);
Family family_from_name(std::string_view name);

struct DistributionSpec;

struct WeightedSpec {
    double weight = 1.0;
    std::vector<DistributionSpec> dist; // exactly one element; vector breaks the type cycle
};

struct DistributionSpec {
    Family family = Family::gaussian;
    std::map<std::string, double> params;
    std::vector<WeightedSpec> components;
    std::vector<PiecewiseExp::Piece> pieces;

    double param(const std::string& key) const;
};

DistributionSpec gaussian_spec(double mean, double sd);
DistributionSpec laplace_spec(double shift, double scale);
DistributionSpec exponential_spec(double rate);
DistributionSpec uniform_spec(double lo, double hi);
DistributionSpec gn_spec(int n);
DistributionSpec mixture_spec(std::vector<std::pair<double, DistributionSpec>> parts);

/// Builds the law; throws SpecError on invalid parameters.
DistPtr make_family(const DistributionSpec& spec);

nlohmann::json to_json(const DistributionSpec& spec);
DistributionSpec spec_from_json(const nlohmann::json& j);

/// Parses `laplace(0,1)`, `gaussian(0.3,1)`, `uniform(0,1)`, `exponential(2)`,
/// `gn(4)`, or inline JSON beginning with '{'.
DistributionSpec parse_spec(std::string_view text);

} // namespace tchi
