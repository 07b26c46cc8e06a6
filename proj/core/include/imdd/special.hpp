#pragma once

namespace imdd {

/// Gaussian tail probability Q(x) = P(N(0,1) > x).
double q_function(double x);

/// Inverse of q_function on (0, 1); throws DomainError outside.
double q_inverse(double p);

}  // namespace imdd
