#pragma once

#include "imdd/constellation.hpp"
#include "imdd/pulse.hpp"
#include "imdd/receiver.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace imdd {

struct LinkConfig {
    PulseSpec pulse;
    Constellation constellation;
    Receiver receiver = Receiver::Sampling;
    double amp_a = 1.0;
    double n0 = 0.0;     ///< noise power spectral density is N0/2 (two-sided)
    double g0 = 1.0;     ///< sampling filter gain G(0)
    double zeta = 1.0;   ///< matched filter gain
    int rate = 32;       ///< oversampling of the matched-filter inner products
    std::uint64_t seed = 1;
    bool allow_isi = false;  ///< permit a pulse that is not ISI-free for the receiver
};

/// Throws DomainError on out-of-range numbers and ContractError when the
/// pulse is not Nyquist (sampling) / root-Nyquist (matched filter) and
/// allow_isi is off.
void validate(const LinkConfig& config);

/// Noise standard deviation at the detector input:
/// g0 sqrt(N0 B) for sampling, zeta sqrt(N0 Eq / 2) for the matched filter.
double noise_sigma(const LinkConfig& config);

enum class NoiseMode { Off, On };

/// r(i Ts) for the given symbols, biased with mu = required_bias. The
/// matched filter is realized as oversampled inner products at config.rate;
/// noise is added at the samples with noise_sigma.
std::vector<double> receiver_samples(const LinkConfig& config, std::span<const double> symbols, NoiseMode noise);

/// Symbol error probability of minimum-distance detection on uniform PAM.
/// Throws UnsupportedError for non-uniform alphabets.
double analytic_ser(const LinkConfig& config);

/// Amplitude A at which analytic_ser(config) equals target.
double amplitude_for_ser(const LinkConfig& config, double target);

struct SerEstimate {
    double p_hat;
    std::size_t n_symbols;
    std::size_t n_errors;
    double ci95;
    double p_analytic;  ///< NaN when the alphabet is not uniform PAM
};

/// Monte Carlo SER with midpoint thresholds between the noise-free levels
/// (ties go to the lower symbol). Symbols are processed in fixed-size
/// chunks, each with its own generator seeded from (seed, chunk index), so
/// the estimate depends only on (config, n_symbols).
SerEstimate monte_carlo_ser(const LinkConfig& config, std::size_t n_symbols);

/// Binomial 95% half-width, normal approximation plus a 0.5/n continuity term.
double binomial_ci95(double p_hat, std::size_t n);

}  // namespace imdd
