#pragma once

#include "imdd/pulse.hpp"

#include <string_view>
#include <vector>

namespace imdd {

enum class Receiver { Sampling, MatchedFilter };

std::string_view to_string(Receiver receiver);
/// Accepts "sampling" and "matched"/"matched-filter" (case-insensitive).
Receiver parse_receiver(std::string_view name);

/// Noise-free response of the receive filter to one transmitted pulse,
/// tabulated at offsets j*Ts/resolution for |j| <= span*resolution:
///   Sampling:       g0 * q(tau)
///   MatchedFilter:  zeta * h * sum_n q(n h) q(n h - tau),   h = Ts/rate
/// plus the response `dc` to a unit constant input (g0, or zeta * h * sum_n q(n h)).
/// The matched-filter inner products run over |n h| <= window symbols.
struct ReceiverKernel {
    Receiver receiver;
    int resolution;  ///< offsets per Ts
    int span;        ///< in symbols
    double dc;
    std::vector<double> values;

    /// Response at offset j/resolution symbols; zero beyond the span.
    double at(long long j) const noexcept;
};

struct KernelOptions {
    double gain = 1.0;    ///< g0 or zeta
    int rate = 32;        ///< oversampling of the matched-filter inner products
    int resolution = 1;   ///< must divide rate for the matched filter
    int span = 64;
    double window = 1024.0;
};

ReceiverKernel receiver_kernel(const PulseSpec& pulse, Receiver receiver, const KernelOptions& options = {});

}  // namespace imdd
