#include "imdd/receiver.hpp"

#include "imdd/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace imdd {

std::string_view to_string(Receiver receiver) {
    return receiver == Receiver::Sampling ? "sampling" : "matched";
}

Receiver parse_receiver(std::string_view name) {
    std::string key(name);
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (key == "sampling") return Receiver::Sampling;
    if (key == "matched" || key == "matched-filter" || key == "matchedfilter") return Receiver::MatchedFilter;
    throw DomainError("unknown receiver '" + std::string(name) + "'");
}

double ReceiverKernel::at(long long j) const noexcept {
    const long long half = static_cast<long long>(span) * resolution;
    if (j < -half || j > half) return 0.0;
    return values[static_cast<std::size_t>(j + half)];
}

ReceiverKernel receiver_kernel(const PulseSpec& pulse, Receiver receiver, const KernelOptions& options) {
    if (options.resolution < 1 || options.span < 1) throw DomainError("receiver_kernel: resolution and span must be positive");
    const long long half = static_cast<long long>(options.span) * options.resolution;
    ReceiverKernel k{receiver, options.resolution, options.span, options.gain, {}};
    k.values.resize(static_cast<std::size_t>(2 * half + 1));
    const PulseFamily family = pulse.family();
    const double alpha = pulse.alpha();

    if (receiver == Receiver::Sampling) {
        for (long long j = -half; j <= half; ++j) {
            k.values[static_cast<std::size_t>(j + half)] =
                options.gain * eval_normalized(family, alpha, static_cast<double>(j) / options.resolution);
        }
        return k;
    }

    if (options.rate < 16) throw DomainError("receiver_kernel: oversampling rate must be at least 16");
    if (options.rate % options.resolution != 0) throw DomainError("receiver_kernel: resolution must divide the rate");
    if (!(options.window >= 2.0 * options.span)) throw DomainError("receiver_kernel: window must cover twice the span");
    const int rate = options.rate;
    const long long n_half = static_cast<long long>(std::ceil(options.window * rate));
    const long long stride = rate / options.resolution;
    const long long reach = n_half + half * stride;
    // q on the fine grid wide enough for every shifted copy.
    std::vector<double> q(static_cast<std::size_t>(2 * reach + 1));
    for (long long n = -reach; n <= reach; ++n) {
        q[static_cast<std::size_t>(n + reach)] = eval_normalized(family, alpha, static_cast<double>(n) / rate);
    }
    const double h = 1.0 / rate;
    double dc = 0.0;
    for (long long n = -n_half; n <= n_half; ++n) dc += q[static_cast<std::size_t>(n + reach)];
    k.dc = options.gain * h * dc;
    for (long long j = -half; j <= half; ++j) {
        const long long shift = j * stride;
        double acc = 0.0;
        for (long long n = -n_half; n <= n_half; ++n) {
            acc += q[static_cast<std::size_t>(n + reach)] * q[static_cast<std::size_t>(n - shift + reach)];
        }
        k.values[static_cast<std::size_t>(j + half)] = options.gain * h * acc * pulse.ts();
    }
    k.dc *= pulse.ts();
    return k;
}

}  // namespace imdd
