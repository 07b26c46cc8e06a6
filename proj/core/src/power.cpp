#include "imdd/power.hpp"

#include "imdd/bias.hpp"
#include "imdd/errors.hpp"
#include "imdd/special.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <optional>
#include <tuple>

namespace imdd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double db(double ratio) { return 10.0 * std::log10(ratio); }

double mean_power(const PulseSpec& pulse, const Constellation& c, double mu) { return mu + c.mean() * metadata(pulse).q_bar; }

double eye_unreferenced(const PulseSpec& pulse, const Constellation& c, double mu) {
    const PulseMetadata meta = metadata(pulse);
    if (!meta.is_nyquist) throw UnsupportedError("equal-eye gain is defined for Nyquist pulses; " + pulse.label() + " is not");
    return 10.0 * std::log10(c.delta_a() * meta.q_zero / mean_power(pulse, c, mu));
}

void require_pam(const Constellation& c, const char* what) {
    if (!c.is_uniform_pam()) throw UnsupportedError(std::string(what) + ": needs a uniform PAM alphabet");
}

bool supports(Receiver receiver, const PulseMetadata& meta) {
    return receiver == Receiver::Sampling ? meta.is_nyquist : meta.is_root_nyquist;
}

}  // namespace

std::string_view to_string(Scenario scenario) { return scenario == Scenario::EqualEye ? "equal-eye" : "equal-ser"; }

Scenario parse_scenario(std::string_view name) {
    std::string key(name);
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) {
        return c == '_' ? '-' : static_cast<char>(std::tolower(c));
    });
    if (key == "equal-eye") return Scenario::EqualEye;
    if (key == "equal-ser") return Scenario::EqualSer;
    throw DomainError("unknown scenario '" + std::string(name) + "'");
}

double gain_equal_eye(const PulseSpec& pulse, const Constellation& constellation) {
    return gain_equal_eye_unreferenced(pulse, constellation) - db(2.0);
}

double gain_equal_eye_unreferenced(const PulseSpec& pulse, const Constellation& constellation) {
    if (!metadata(pulse).is_nyquist) return eye_unreferenced(pulse, constellation, 0.0);  // throws
    return eye_unreferenced(pulse, constellation, required_bias(pulse, constellation).mu);
}

double amp_ratio_equal_ser(Receiver receiver, const PulseSpec& pulse, const Constellation& constellation, double p_err) {
    require_pam(constellation, "amp_ratio_equal_ser");
    const PulseMetadata meta = metadata(pulse);
    if (!supports(receiver, meta)) {
        throw UnsupportedError("amp_ratio_equal_ser: " + pulse.label() + " is not ISI-free with the " +
                               std::string(to_string(receiver)) + " receiver");
    }
    const double m = static_cast<double>(constellation.size());
    if (!(p_err > 0.0 && p_err < (m - 1.0) / m)) throw DomainError("amp_ratio_equal_ser: p_err outside (0, (M-1)/M)");
    const double log2m = std::log2(m);
    const double q_ratio = q_inverse(p_err) / q_inverse(p_err * m / (2.0 * (m - 1.0)));
    if (receiver == Receiver::Sampling) {
        return constellation.delta_a() * meta.q_zero * q_ratio * std::sqrt(log2m / meta.b_ts);
    }
    return constellation.delta_a() * std::sqrt(2.0) * q_ratio * std::sqrt(log2m * meta.energy_ratio.value_or(1.0));
}

double gain_equal_ser(Receiver receiver, const PulseSpec& pulse, const Constellation& constellation, double p_err) {
    const double ratio = amp_ratio_equal_ser(receiver, pulse, constellation, p_err);
    return db(ratio * 0.5 / mean_power(pulse, constellation, required_bias(pulse, constellation).mu));
}

std::vector<GainPoint> sweep(const SweepRequest& request) {
    if (request.families.empty() || request.alphas.empty() || request.m_values.empty()) {
        throw DomainError("sweep: pulse, alpha and M lists must be nonempty");
    }
    std::vector<GainPoint> out;
    const PulseSpec ref(PulseFamily::S2, 1.0);
    out.push_back({request.scenario, Receiver::Sampling, PulseFamily::S2, 1.0, 2, 1.0, 0.0, 0.0, 1.0, 1.0,
                   request.scenario == Scenario::EqualEye ? db(2.0) : kNaN, true, {}});

    for (PulseFamily family : request.families) {
        for (double alpha : request.alphas) {
            std::optional<PulseSpec> pulse;
            try {
                pulse.emplace(family, alpha);
            } catch (const std::exception& e) {
                for (int m : request.m_values) {
                    out.push_back({request.scenario, Receiver::Sampling, family, alpha, m, kNaN, kNaN, kNaN, kNaN, kNaN,
                                   kNaN, false, e.what()});
                }
                continue;
            }
            const PulseMetadata meta = metadata(*pulse);
            std::vector<Receiver> receivers = request.receivers;
            if (receivers.empty()) {
                receivers.push_back(Receiver::Sampling);
                if (request.scenario == Scenario::EqualSer) receivers.push_back(Receiver::MatchedFilter);
            }
            std::vector<Receiver> usable;
            for (Receiver r : receivers) {
                if (supports(r, meta)) usable.push_back(r);
            }
            if (usable.empty()) usable.push_back(receivers.front());  // yields an error row

            for (int m : request.m_values) {
                for (Receiver r : usable) {
                    GainPoint p{request.scenario, r, family, alpha, m, kNaN, kNaN, kNaN, meta.q_bar, meta.q_zero, kNaN, false, {}};
                    try {
                        const Constellation c = Constellation::pam(m);
                        p.b_tb = meta.b_ts / std::log2(static_cast<double>(m));
                        if (request.scenario == Scenario::EqualEye) {
                            if (r != Receiver::Sampling) throw UnsupportedError("equal-eye gain is defined for the sampling receiver");
                            if (!meta.is_nyquist) eye_unreferenced(*pulse, c, 0.0);  // throws
                            p.mu = required_bias(*pulse, c).mu;
                            p.gain_unreferenced_db = eye_unreferenced(*pulse, c, p.mu);
                            p.gain_db = p.gain_unreferenced_db - db(2.0);
                        } else {
                            const double ratio = amp_ratio_equal_ser(r, *pulse, c, request.p_err);
                            p.mu = required_bias(*pulse, c).mu;
                            p.gain_db = db(ratio * 0.5 / mean_power(*pulse, c, p.mu));
                        }
                    } catch (const std::exception& e) {
                        p.gain_db = kNaN;
                        p.error = e.what();
                    }
                    out.push_back(std::move(p));
                }
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const GainPoint& a, const GainPoint& b) {
        auto key = [](const GainPoint& p) { return std::isnan(p.b_tb) ? std::numeric_limits<double>::infinity() : p.b_tb; };
        return key(a) < key(b);
    });
    return out;
}

}  // namespace imdd
