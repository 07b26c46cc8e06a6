#include "imdd/waveform.hpp"

#include "imdd/bias.hpp"
#include "imdd/errors.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <sstream>

namespace imdd {

namespace {

constexpr std::size_t kDirectMax = 96;

// sum_k q(t - k Ts) at the rate phases t = i Ts / rate, i = 0..rate-1.
std::vector<double> periodic_train(const PulseSpec& pulse, int rate) {
    const PulseMetadata meta = metadata(pulse);
    if (meta.b_ts <= 1.0) return std::vector<double>(static_cast<std::size_t>(rate), meta.q_bar);
    std::vector<double> out(static_cast<std::size_t>(rate));
    const auto k = truncation_depth(pulse, 1e-10);
    for (int i = 0; i < rate; ++i) {
        out[static_cast<std::size_t>(i)] = folded_sums_at_depth(pulse, pulse.ts() * i / rate, k).signed_sum;
    }
    return out;
}

void check_rate(int rate) {
    if (rate < 16) throw DomainError("oversampling rate must be at least 16 samples per symbol");
}

}  // namespace

std::span<const double> WaveformGrid::payload() const {
    return std::span<const double>(samples).subspan(first_symbol * static_cast<std::size_t>(rate),
                                                    n_symbols * static_cast<std::size_t>(rate));
}

double WaveformGrid::payload_min() const {
    const auto p = payload();
    return *std::min_element(p.begin(), p.end());
}

WaveformGrid synthesize(const PulseSpec& pulse, const Constellation& constellation, std::span<const double> symbols,
                        const SynthesisOptions& options) {
    check_rate(options.rate);
    if (!std::isfinite(options.amp) || options.amp < 0.0) throw DomainError("synthesize: amplitude must be finite and >= 0");
    if (!std::isfinite(options.mu)) throw DomainError("synthesize: bias must be finite");
    const int need = support_symbols(pulse);
    if (options.guard < need) {
        std::ostringstream msg;
        msg << "synthesize: guard of " << options.guard << " symbols is shorter than the support of " << pulse.label()
            << " (" << need << " symbols)";
        throw ContractError(msg.str());
    }
    const std::size_t guard = static_cast<std::size_t>(options.guard);
    if (symbols.size() <= 2 * guard) throw ContractError("synthesize: block holds no payload symbols beyond its guards");
    for (double a : symbols) {
        if (constellation.index_of(a) == constellation.size()) throw ContractError("synthesize: symbol is not a constellation level");
    }

    const PulseFamily family = pulse.family();
    const double alpha = pulse.alpha();
    const double mid = constellation.midpoint();
    const std::size_t rate = static_cast<std::size_t>(options.rate);
    const std::vector<double> train = periodic_train(pulse, options.rate);

    WaveformGrid grid{{}, options.rate, -static_cast<double>(guard) * pulse.ts(), pulse.ts(), guard,
                      symbols.size() - 2 * guard, options.amp, options.mu};
    const std::size_t n = symbols.size();
    grid.samples.resize(n * rate);
    std::vector<double> b(n);
    for (std::size_t k = 0; k < n; ++k) b[k] = symbols[k] - mid;

    // Phase j of the output is the linear convolution of b with q(m + j/rate),
    // |m| < n. Long blocks go through the FFT; short ones are summed directly.
    if (n <= kDirectMax) {
        for (std::size_t i = 0; i < grid.samples.size(); ++i) {
            const double x = static_cast<double>(i) / static_cast<double>(rate);
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += b[k] * eval_normalized(family, alpha, x - static_cast<double>(k));
            grid.samples[i] = acc;
        }
    } else {
        std::size_t size = 1;
        while (size < 3 * n) size *= 2;
        Eigen::FFT<double> fft;
        std::vector<double> padded(size, 0.0);
        std::copy(b.begin(), b.end(), padded.begin());
        std::vector<std::complex<double>> b_hat;
        fft.fwd(b_hat, padded);
        std::vector<double> kernel(size);
        std::vector<std::complex<double>> k_hat;
        std::vector<double> conv;
        for (std::size_t j = 0; j < rate; ++j) {
            // kernel[m + n - 1] = q(m + j/rate); output index n' sits at conv[n' + n - 1].
            std::fill(kernel.begin(), kernel.end(), 0.0);
            const double frac = static_cast<double>(j) / static_cast<double>(rate);
            for (std::size_t i = 0; i + 1 < 2 * n; ++i) {
                kernel[i] = eval_normalized(family, alpha, static_cast<double>(i) - static_cast<double>(n - 1) + frac);
            }
            fft.fwd(k_hat, kernel);
            for (std::size_t i = 0; i < k_hat.size(); ++i) k_hat[i] *= b_hat[i];
            fft.inv(conv, k_hat);
            for (std::size_t m = 0; m < n; ++m) grid.samples[m * rate + j] = conv[m + n - 1];
        }
    }
    for (std::size_t i = 0; i < grid.samples.size(); ++i) {
        grid.samples[i] = options.amp * (options.mu + mid * train[i % rate] + grid.samples[i]);
    }
    return grid;
}

std::vector<double> random_symbols(const Constellation& constellation, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, constellation.size() - 1);
    std::vector<double> out(n);
    for (double& a : out) a = constellation.level(pick(rng));
    return out;
}

std::vector<double> adversarial_symbols(const PulseSpec& pulse, const Constellation& constellation, std::size_t n,
                                        std::size_t centre_index, double t_star) {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double offset = (static_cast<double>(centre_index) - static_cast<double>(k)) * pulse.ts() + t_star;
        out[k] = eval(pulse, offset) < 0.0 ? constellation.a_hat() : constellation.a_check();
    }
    return out;
}

OpticalPowers optical_powers(const PulseSpec& pulse, const Constellation& constellation, double amp, double mu) {
    if (!(amp >= 0.0) || !std::isfinite(amp) || !std::isfinite(mu)) {
        throw DomainError("optical_powers: amplitude must be finite and >= 0, bias finite");
    }
    const PulseMetadata meta = metadata(pulse);
    const double mid = constellation.midpoint();
    const double p_opt = amp * (mu + constellation.mean() * meta.q_bar);
    const PeriodicMax peak = maximize_folded(pulse, constellation.a_hat() - mid, mid);
    return {p_opt, amp * (mu + peak.value)};
}

double EyeTraces::opening() const {
    const auto levels = constellation.levels();
    std::vector<double> lo(levels.size(), std::numeric_limits<double>::infinity());
    std::vector<double> hi(levels.size(), -std::numeric_limits<double>::infinity());
    for (std::size_t j = 0; j < traces.size(); ++j) {
        const std::size_t idx = constellation.index_of(symbols[j]);
        const double v = traces[j][sample_index()];
        lo[idx] = std::min(lo[idx], v);
        hi[idx] = std::max(hi[idx], v);
    }
    double open = std::numeric_limits<double>::infinity();
    std::size_t prev = levels.size();
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!std::isfinite(lo[i])) continue;  // level never transmitted
        if (prev < levels.size()) open = std::min(open, lo[i] - hi[prev]);
        prev = i;
    }
    return open;
}

std::vector<double> EyeTraces::sample_levels(double tol) const {
    std::vector<double> v;
    v.reserve(traces.size());
    for (const auto& t : traces) v.push_back(t[sample_index()]);
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v) {
        if (out.empty() || x - out.back() > tol) out.push_back(x);
    }
    return out;
}

EyeTraces eye_diagram(const PulseSpec& pulse, const Constellation& constellation, Receiver receiver,
                      std::size_t n_traces, int rate, std::uint64_t seed) {
    if (n_traces < 1) throw DomainError("eye_diagram: need at least one trace");
    check_rate(rate);
    if (rate % 2 != 0) throw DomainError("eye_diagram: rate must be even");

    KernelOptions ko;
    ko.rate = rate;
    ko.resolution = rate;
    ko.span = std::clamp(support_symbols(pulse, 1e-4), 8, 48);
    ko.window = 1024.0;
    const ReceiverKernel kernel = receiver_kernel(pulse, receiver, ko);
    const double mu = required_bias(pulse, constellation).mu;

    const std::size_t span = static_cast<std::size_t>(ko.span);
    const std::vector<double> block = random_symbols(constellation, n_traces + 2 * span + 2, seed);
    EyeTraces eye{receiver, pulse, constellation, rate, {}, {}};
    eye.traces.reserve(n_traces);
    const long long r = rate;
    for (std::size_t j = 0; j < n_traces; ++j) {
        const std::size_t centre = span + 1 + j;
        std::vector<double> trace(static_cast<std::size_t>(2 * rate));
        for (long long m = 0; m < 2 * r; ++m) {
            double acc = mu * kernel.dc;
            for (std::size_t k = centre - span - 1; k <= centre + span + 1; ++k) {
                const long long offset = (static_cast<long long>(centre) - static_cast<long long>(k)) * r + m - r / 2;
                acc += block[k] * kernel.at(offset);
            }
            trace[static_cast<std::size_t>(m)] = acc;
        }
        eye.traces.push_back(std::move(trace));
        eye.symbols.push_back(block[centre]);
    }
    return eye;
}

}  // namespace imdd
