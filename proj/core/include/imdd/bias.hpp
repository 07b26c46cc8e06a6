#pragma once

#include "imdd/constellation.hpp"
#include "imdd/pulse.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace imdd {

/// Hard cap on the truncation half-width of periodic pulse sums.
inline constexpr std::int64_t kMaxTruncation = 1'000'000;

struct FoldedSum {
    double value;
    std::int64_t k_trunc;
};

struct FoldedSums {
    double abs_sum;     ///< sum_k |q(t - k Ts)|
    double signed_sum;  ///< sum_k q(t - k Ts)
    std::int64_t k_trunc;
};

/// Half-width K for which the envelope-predicted remainder of the
/// tail-corrected sum, 8 c / K^p, is below tail_tol. Throws DivergenceError
/// above kMaxTruncation.
std::int64_t truncation_depth(const PulseSpec& pulse, double tail_tol);

/// Both periodic sums over |k| <= k_trunc plus a mean-value estimate of the
/// remainder on each side. Any real t is accepted (the sums are Ts-periodic).
FoldedSums folded_sums_at_depth(const PulseSpec& pulse, double t, std::int64_t k_trunc);

/// Requires 0 <= t < Ts.
FoldedSum folded_abs_sum(const PulseSpec& pulse, double t, double tail_tol = 1e-9);
FoldedSum folded_signed_sum(const PulseSpec& pulse, double t, double tail_tol = 1e-9);

/// The periodic signed sum written as its Fourier series,
/// (1/Ts) sum_n Q(2 pi n / Ts) exp(j 2 pi n t / Ts), with the finitely many
/// in-band coefficients obtained from spectrum_at.
class FourierFoldedSum {
public:
    FourierFoldedSum(const PulseSpec& pulse, double tol = 1e-8);

    double operator()(double t) const;
    int harmonics() const noexcept { return n_max_; }

private:
    double ts_;
    int n_max_;
    std::vector<std::complex<double>> coeff_;  // n = -n_max .. n_max
};

struct BiasOptions {
    std::size_t grid_n = 4096;
    double tail_tol = 1e-8;
    double refine_tol = 1e-10;       ///< final golden-section bracket, in units of Ts
    double candidate_margin = 1e-3;  ///< coarse maxima this close to the best are refined too
};

struct PeriodicMax {
    double value;
    double argmax_t;  ///< in [0, Ts)
    std::int64_t k_trunc;
};

/// sup over t of weight_abs * sum|q(t - k Ts)| + weight_signed * sum q(t - k Ts):
/// uniform grid with a cheap truncation, then golden-section refinement of
/// every near-best local maximum at full depth.
PeriodicMax maximize_folded(const PulseSpec& pulse, double weight_abs, double weight_signed,
                            const BiasOptions& options = {});

struct BiasSolution {
    double mu;
    double argmax_t;
    std::int64_t k_trunc;
    std::size_t grid_n;
    double refine_tol;
};

/// Smallest constant bias keeping the transmitted intensity nonnegative for
/// every symbol sequence:
///   mu = max_t [ (a_hat - L) sum|q(t - k Ts)| - L sum q(t - k Ts) ].
/// The signed sum is evaluated rather than replaced by q_bar, so the same
/// code path serves pulses wider than 1/Ts.
BiasSolution required_bias(const PulseSpec& pulse, const Constellation& constellation,
                           const BiasOptions& options = {});

struct BiasCurvePoint {
    double alpha;
    double mu;
    double mu_over_a_hat;
};

std::vector<BiasCurvePoint> bias_curve(PulseFamily family, std::span<const double> alpha_grid,
                                       const Constellation& constellation, const BiasOptions& options = {});

}  // namespace imdd
