#pragma once

#include "imdd/constellation.hpp"
#include "imdd/pulse.hpp"
#include "imdd/receiver.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace imdd {

struct SynthesisOptions {
    double amp = 1.0;
    double mu = 0.0;
    int rate = 32;   ///< samples per Ts, at least 16
    int guard = 0;   ///< guard symbols at each end of the block, at least support_symbols(pulse)
};

/// Sampled intensity over a symbol block. Sample i sits at t0 + i Ts / rate;
/// the block's first symbol is transmitted at t = t0 and the payload
/// occupies symbols [first_symbol, first_symbol + n_symbols).
struct WaveformGrid {
    std::vector<double> samples;
    int rate;
    double t0;
    double ts;
    std::size_t first_symbol;
    std::size_t n_symbols;
    double scale_a;
    double bias_mu;

    double time(std::size_t i) const noexcept { return t0 + static_cast<double>(i) * ts / rate; }
    /// Sample range covering the payload symbols.
    std::span<const double> payload() const;
    double payload_min() const;
};

/// x(t) = A (mu + sum_k a_k q(t - k Ts)) for a block that includes its guard
/// symbols. Symbols outside the block are taken at the constellation
/// midpoint L, whose infinite train L sum_k q(t - k Ts) is added in closed
/// form; this keeps x(t) >= 0 whenever mu >= required_bias and makes the
/// result independent of a common shift of the alphabet.
///
/// Throws ContractError when the guard is shorter than the pulse support,
/// the block has no payload, or a symbol is not a constellation level.
WaveformGrid synthesize(const PulseSpec& pulse, const Constellation& constellation, std::span<const double> symbols,
                        const SynthesisOptions& options);

/// Equiprobable i.i.d. levels.
std::vector<double> random_symbols(const Constellation& constellation, std::size_t n, std::uint64_t seed);

/// Block of n symbols that drives the intensity at t = centre_index*Ts + t_star
/// to its lower envelope: a_k = a_hat where q(t - k Ts) < 0, else a_check.
std::vector<double> adversarial_symbols(const PulseSpec& pulse, const Constellation& constellation, std::size_t n,
                                        std::size_t centre_index, double t_star);

struct OpticalPowers {
    double p_opt;  ///< A (mu + E{a} q_bar)
    double p_max;  ///< sup_t x(t) over all symbol sequences
};

/// p_max is the sign-matched supremum A (mu + max_t[(a_hat - L) sum|q| + L sum q]),
/// which the sup over sequences attains exactly for every pulse.
OpticalPowers optical_powers(const PulseSpec& pulse, const Constellation& constellation, double amp, double mu);

struct EyeTraces {
    Receiver receiver;
    PulseSpec pulse;
    Constellation constellation;
    int rate;
    /// Each trace covers [-Ts/2, 3Ts/2) around its symbol; index rate/2 is the sampling instant.
    std::vector<std::vector<double>> traces;
    std::vector<double> symbols;  ///< symbol transmitted at each trace's sampling instant

    std::size_t sample_index() const noexcept { return static_cast<std::size_t>(rate / 2); }
    double time(std::size_t i) const noexcept { return (static_cast<double>(i) / rate - 0.5) * pulse.ts(); }
    /// Worst-case gap between adjacent levels at the sampling instant
    /// (negative when the eye is closed).
    double opening() const;
    /// Distinct noise-free values at the sampling instant, merged within tol.
    std::vector<double> sample_levels(double tol = 1e-9) const;
};

/// Noise-free receiver output for random OOK/PAM data with A = 1, unit
/// filter gain and mu = required_bias.
EyeTraces eye_diagram(const PulseSpec& pulse, const Constellation& constellation, Receiver receiver,
                      std::size_t n_traces, int rate, std::uint64_t seed);

}  // namespace imdd
