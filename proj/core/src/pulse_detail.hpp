#pragma once

#include "imdd/pulse.hpp"

namespace imdd::detail {

/// eval_normalized with sin(pi x) and cos(pi x) supplied by the caller.
/// Periodic sums use this: over x0 - k the pair only flips sign with k, and
/// taking it from the exact phase x0 also avoids the rounding of x0 - k.
double eval_with_phase(PulseFamily family, double alpha, double x, double sin_pi_x, double cos_pi_x);

void sincos_pi(double x, double& s, double& c);

}  // namespace imdd::detail
