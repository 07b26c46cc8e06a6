#pragma once

#include <cstddef>
#include <functional>

namespace imdd::quad {

struct LineOptions {
    double center = 0.0;       ///< panels are laid out symmetrically around this point
    double panel_width = 0.5;
    double tol = 1e-9;         ///< absolute tolerance on the integral
    int decay_power = 2;       ///< integrand ~ g(t)/|t|^p with g bounded and quasi-periodic
    std::size_t min_panels = 64;        ///< per side, must be a power of two
    std::size_t max_panels = std::size_t{1} << 21;
};

struct LineIntegral {
    double value;
    double error_estimate;
    std::size_t panels_per_side;
    double tail_correction;
};

/// Integral of f over the real line for slowly decaying oscillatory
/// integrands. Panels are integrated with adaptive Gauss-Kronrod; the
/// remainder beyond the last panel is estimated from the mean of
/// |t|^p * (panel integral) over the outer half of the panels. The panel
/// count doubles until two successive estimates agree within tol.
///
/// Throws NumericalError when max_panels is reached first.
LineIntegral integrate_real_line(const std::function<double(double)>& f, const LineOptions& options);

/// sum_{j >= 0} (z + j)^-p for z >= 8 and p >= 2, by Euler-Maclaurin.
double hurwitz_zeta_tail(double z, int p);

}  // namespace imdd::quad
