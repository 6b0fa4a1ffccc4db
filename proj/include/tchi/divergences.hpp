#pragma once

#include <string_view>

#include "tchi/distributions.hpp"

namespace tchi {

enum class DivergenceKind { chi_square_squared, entropy };

struct DivergenceResult {
    double value = 0.0; ///< +inf when divergent or not absolutely continuous
    DivergenceKind kind = DivergenceKind::chi_square_squared;
    bool abs_cont = true;
    double est_error = 0.0;

    bool finite() const { return value < kInf; }
};

/// Which arrangement of the chi-square integrand to evaluate.
enum class ChiForm {
    difference, ///< (f - g)^2 / f
    ratio,      ///< (g/f - 1)^2 f
};

/// Densities below this floor are treated as this floor in denominators.
inline constexpr double kDensityFloor = 1e-300;

/// chi^2_2(nu|mu) = int (f - g)^2 / f. Mass of nu outside the support of mu
/// (beyond 1e-12) yields abs_cont = false and +inf; tail partial sums above
/// the divergence cap yield +inf with abs_cont = true.
DivergenceResult chi_square_sq(const Distribution1D& nu, const Distribution1D& mu,
                               const QuadSettings& s, ChiForm form = ChiForm::difference);

/// H(nu|mu) = int g ln(g/f), with 0 ln 0 = 0.
DivergenceResult rel_entropy(const Distribution1D& nu, const Distribution1D& mu,
                             const QuadSettings& s);

} // namespace tchi
