#include "imdd/link.hpp"

#include "imdd/bias.hpp"
#include "imdd/errors.hpp"
#include "imdd/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace imdd {

namespace {

constexpr std::size_t kChunk = 8192;

struct LinkModel {
    ReceiverKernel kernel;
    double mu;
    std::vector<double> levels;      // noise-free detector input per constellation index
    std::vector<double> thresholds;  // midpoints between consecutive levels
    double sigma;
};

LinkModel build_model(const LinkConfig& config) {
    validate(config);
    KernelOptions ko;
    ko.gain = config.receiver == Receiver::Sampling ? config.g0 : config.zeta;
    ko.rate = config.rate;
    ko.resolution = 1;
    ko.span = std::clamp(support_symbols(config.pulse, 1e-6), 8, 64);
    ko.window = 1024.0;
    LinkModel m{receiver_kernel(config.pulse, config.receiver, ko), required_bias(config.pulse, config.constellation).mu,
                {}, {}, noise_sigma(config)};
    for (double a : config.constellation.levels()) {
        m.levels.push_back(config.amp_a * (m.mu * m.kernel.dc + a * m.kernel.at(0)));
    }
    for (std::size_t i = 1; i < m.levels.size(); ++i) m.thresholds.push_back(0.5 * (m.levels[i - 1] + m.levels[i]));
    return m;
}

// Noise-free samples for out[i] = r(i Ts), i in [begin, end) of `symbols`.
void filter_block(const LinkConfig& config, const LinkModel& m, std::span<const double> symbols, std::size_t begin,
                  std::size_t end, std::vector<double>& out) {
    const long long span = m.kernel.span;
    const long long n = static_cast<long long>(symbols.size());
    out.assign(end - begin, 0.0);
    for (std::size_t i = begin; i < end; ++i) {
        const long long ii = static_cast<long long>(i);
        double acc = m.mu * m.kernel.dc;
        for (long long k = std::max(0LL, ii - span); k <= std::min(n - 1, ii + span); ++k) {
            acc += symbols[static_cast<std::size_t>(k)] * m.kernel.at(ii - k);
        }
        out[i - begin] = config.amp_a * acc;
    }
}

// Index of the detected level; a value on a threshold goes to the lower symbol.
std::size_t detect(const LinkModel& m, double r) {
    return static_cast<std::size_t>(std::lower_bound(m.thresholds.begin(), m.thresholds.end(), r) - m.thresholds.begin());
}

double energy_of(const PulseSpec& pulse) {
    const PulseMetadata meta = metadata(pulse);
    return meta.energy_ratio ? *meta.energy_ratio * pulse.ts() : energy(pulse);
}

}  // namespace

void validate(const LinkConfig& config) {
    if (!std::isfinite(config.amp_a) || config.amp_a < 0.0) throw DomainError("link: amplitude must be finite and >= 0");
    if (!std::isfinite(config.n0) || config.n0 < 0.0) throw DomainError("link: N0 must be finite and >= 0");
    if (!(config.g0 > 0.0) || !(config.zeta > 0.0)) throw DomainError("link: receiver gains must be positive");
    if (config.rate < 16) throw DomainError("link: oversampling rate must be at least 16");
    if (config.allow_isi) return;
    const PulseMetadata meta = metadata(config.pulse);
    if (config.receiver == Receiver::Sampling && !meta.is_nyquist) {
        throw ContractError("link: sampling receiver needs a Nyquist pulse; " + config.pulse.label() + " is not");
    }
    if (config.receiver == Receiver::MatchedFilter && !meta.is_root_nyquist) {
        throw ContractError("link: matched filter needs a root-Nyquist pulse; " + config.pulse.label() + " is not");
    }
}

double noise_sigma(const LinkConfig& config) {
    validate(config);
    if (config.receiver == Receiver::Sampling) {
        const double bandwidth = metadata(config.pulse).b_ts / config.pulse.ts();
        return config.g0 * std::sqrt(config.n0 * bandwidth);
    }
    return config.zeta * std::sqrt(config.n0 * energy_of(config.pulse) / 2.0);
}

std::vector<double> receiver_samples(const LinkConfig& config, std::span<const double> symbols, NoiseMode noise) {
    const LinkModel m = build_model(config);
    for (double a : symbols) {
        if (config.constellation.index_of(a) == config.constellation.size()) {
            throw ContractError("receiver_samples: symbol is not a constellation level");
        }
    }
    std::vector<double> out;
    filter_block(config, m, symbols, 0, symbols.size(), out);
    if (noise == NoiseMode::On && m.sigma > 0.0) {
        std::mt19937_64 rng(config.seed);
        std::normal_distribution<double> gauss(0.0, m.sigma);
        for (double& r : out) r += gauss(rng);
    }
    return out;
}

double analytic_ser(const LinkConfig& config) {
    validate(config);
    const Constellation& c = config.constellation;
    if (!c.is_uniform_pam()) throw UnsupportedError("analytic_ser: closed form needs a uniform PAM alphabet");
    const double m = static_cast<double>(c.size());
    const double prefactor = 2.0 * (m - 1.0) / m;
    // Half the noise-free distance between adjacent levels, over sigma.
    double half_gap;
    if (config.receiver == Receiver::Sampling) {
        half_gap = 0.5 * config.amp_a * config.g0 * c.delta_a() * metadata(config.pulse).q_zero;
    } else {
        half_gap = 0.5 * config.amp_a * config.zeta * c.delta_a() * energy_of(config.pulse);
    }
    const double sigma = noise_sigma(config);
    if (half_gap == 0.0) return prefactor * 0.5;
    if (sigma == 0.0) return 0.0;
    return prefactor * q_function(half_gap / sigma);
}

double amplitude_for_ser(const LinkConfig& config, double target) {
    const double m = static_cast<double>(config.constellation.size());
    if (!(target > 0.0 && target < (m - 1.0) / m)) throw DomainError("amplitude_for_ser: target outside (0, (M-1)/M)");
    LinkConfig unit = config;
    unit.amp_a = 1.0;
    validate(unit);
    if (!unit.constellation.is_uniform_pam()) throw UnsupportedError("amplitude_for_ser: needs a uniform PAM alphabet");
    const double sigma = noise_sigma(unit);
    if (sigma == 0.0) throw DomainError("amplitude_for_ser: noiseless link has no finite amplitude for a positive SER");
    const double x = q_inverse(target * m / (2.0 * (m - 1.0)));
    const double unit_half_gap = unit.receiver == Receiver::Sampling
                                     ? 0.5 * unit.g0 * unit.constellation.delta_a() * metadata(unit.pulse).q_zero
                                     : 0.5 * unit.zeta * unit.constellation.delta_a() * energy_of(unit.pulse);
    return x * sigma / unit_half_gap;
}

double binomial_ci95(double p_hat, std::size_t n) {
    const double nd = static_cast<double>(n);
    return 1.96 * std::sqrt(p_hat * (1.0 - p_hat) / nd) + 0.5 / nd;
}

SerEstimate monte_carlo_ser(const LinkConfig& config, std::size_t n_symbols) {
    if (n_symbols < 10'000) throw DomainError("monte_carlo_ser: need at least 10^4 symbols");
    const LinkModel m = build_model(config);
    const Constellation& c = config.constellation;
    const std::size_t guard = static_cast<std::size_t>(m.kernel.span);
    std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::size_t errors = 0;
    std::vector<double> block;
    std::vector<std::size_t> index;
    std::vector<double> clean;
    for (std::size_t done = 0, chunk = 0; done < n_symbols; ++chunk) {
        const std::size_t n = std::min(kChunk, n_symbols - done);
        std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                          static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
        std::mt19937_64 rng(seq);
        index.resize(n + 2 * guard);
        block.resize(n + 2 * guard);
        for (std::size_t k = 0; k < block.size(); ++k) {
            index[k] = pick(rng);
            block[k] = c.level(index[k]);
        }
        filter_block(config, m, block, guard, guard + n, clean);
        for (std::size_t i = 0; i < n; ++i) {
            const double r = clean[i] + m.sigma * gauss(rng);
            if (detect(m, r) != index[guard + i]) ++errors;
        }
        done += n;
    }

    const double p_hat = static_cast<double>(errors) / static_cast<double>(n_symbols);
    double p_analytic = std::numeric_limits<double>::quiet_NaN();
    if (c.is_uniform_pam()) p_analytic = analytic_ser(config);
    return {p_hat, n_symbols, errors, binomial_ci95(p_hat, n_symbols), p_analytic};
}

}  // namespace imdd
