#include "imdd/pulse.hpp"

#include "imdd/errors.hpp"
#include "pulse_detail.hpp"
#include "imdd/quadrature.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace imdd {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();
constexpr double kLn2 = boost::math::constants::ln_two<double>();
constexpr double kSqrt2 = boost::math::constants::root_two<double>();

// sin(pi x), cos(pi x) with exact reduction to |f| <= 1/4: x = n/2 + f.
// Much cheaper than the policy-checked library versions in the hot sums.
inline void sincos_pi(double x, double& s, double& c) {
    const double n = std::nearbyint(2.0 * x);
    const double f = kPi * (x - 0.5 * n);
    const double sf = std::sin(f);
    const double cf = std::cos(f);
    switch (static_cast<long long>(n) & 3) {
        case 0: s = sf; c = cf; break;
        case 1: s = cf; c = -sf; break;
        case 2: s = -sf; c = -cf; break;
        default: s = -cf; c = sf; break;
    }
}

inline double sin_pi(double x) {
    double s, c;
    sincos_pi(x, s, c);
    return s;
}

inline double cos_pi(double x) {
    double s, c;
    sincos_pi(x, s, c);
    return c;
}

// Normalized sinc, sin(pi x)/(pi x).
double sinc(double x) {
    if (x == 0.0) return 1.0;
    return sin_pi(x) / (kPi * x);
}

// cos(pi u/2) / (1 - u^2) for u >= 0, written without the removable
// singularity at u = 1.
double raised_cosine_factor(double u) { return 0.5 * kPi * sinc(0.5 * (1.0 - u)) / (1.0 + u); }

double rc(double alpha, double x) { return sinc(x) * raised_cosine_factor(2.0 * alpha * std::abs(x)); }

double btn(double alpha, double x) {
    const double b = kPi * alpha * x / kLn2;
    double sa, ca;
    sincos_pi(alpha * x, sa, ca);
    const double num = 2.0 * b * sa + 2.0 * ca - 1.0;
    return sinc(x) * num / (b * b + 1.0);
}

// [sinc(z/pi)^2 - sinc(2z/pi)] / z^2 with z = pi*alpha*x/2; a power series
// near the origin where the difference cancels.
double poly_core(double alpha, double x) {
    const double z = 0.5 * kPi * alpha * x;
    if (std::abs(z) < 0.5) {
        // sum_{m>=1} (-1)^{m+1} 4^m 2m / (2m+2)! z^{2m-2}
        const double z2 = z * z;
        double zpow = 1.0;
        double sum = 0.0;
        double fact = 2.0;  // (2m+2)! at m = 0
        double four = 1.0;
        for (int m = 1; m <= 12; ++m) {
            four *= 4.0;
            fact *= (2.0 * m + 1.0) * (2.0 * m + 2.0);
            sum += ((m % 2 == 1) ? 1.0 : -1.0) * four * 2.0 * m / fact * zpow;
            zpow *= z2;
        }
        return sum;
    }
    const double s = sinc(0.5 * alpha * x);
    return (s * s - sinc(alpha * x)) / (z * z);
}

double poly(double alpha, double x) { return 3.0 * sinc(x) * poly_core(alpha, x); }

double sdj(double alpha, double x) {
    const double v =
        0.5 * (1.0 - alpha) * sinc((1.0 - alpha) * x) + 0.5 * (1.0 + alpha) * sinc((1.0 + alpha) * x);
    return v * v;
}

double rrc(double alpha, double x) {
    const double ax = std::abs(x);
    const double u = 4.0 * alpha * ax;
    if (u < 0.5) {
        const double num = (1.0 - alpha) * sinc((1.0 - alpha) * ax) + 4.0 * alpha / kPi * cos_pi((1.0 + alpha) * ax);
        return num / (1.0 - u * u);
    }
    // Both bracketed coefficients vanish at u = 1; dividing them by (1 - u)
    // analytically leaves a form that is smooth through t = Ts/(4 alpha).
    const double e = 1.0 - u;
    const double s = kSqrt2 * 0.25 * kPi * sinc(0.25 * e);
    double sa, ca, sx, cx;
    sincos_pi(alpha * ax, sa, ca);
    sincos_pi(ax, sx, cx);
    return (sx * (s + sa) + cx * (s - ca)) / (kPi * ax * (1.0 + u));
}

// sinc(x) cos(pi alpha x) / (2 alpha x + 1), smooth through x = -1/(2 alpha).
double xia(double alpha, double x) { return sinc(x) * 0.5 * kPi * sinc(0.5 * (1.0 + 2.0 * alpha * x)); }

void check_tol(double tol, const char* what) {
    if (!(tol > 0.0)) throw DomainError(std::string(what) + ": tolerance must be positive");
}

}  // namespace

namespace detail {

void sincos_pi(double x, double& s, double& c) { imdd::sincos_pi(x, s, c); }

double eval_with_phase(PulseFamily family, double alpha, double x, double sx, double cx) {
    if (x == 0.0) return eval_normalized(family, alpha, x);
    const double sc = sx / (kPi * x);  // sinc(x)
    switch (family) {
        case PulseFamily::RC: return sc * raised_cosine_factor(2.0 * alpha * std::abs(x));
        case PulseFamily::BTN: {
            const double b = kPi * alpha * x / kLn2;
            double sa, ca;
            imdd::sincos_pi(alpha * x, sa, ca);
            return sc * (2.0 * b * sa + 2.0 * ca - 1.0) / (b * b + 1.0);
        }
        case PulseFamily::PL: return sc * sinc(alpha * x);
        case PulseFamily::Poly: return 3.0 * sc * poly_core(alpha, x);
        case PulseFamily::S2: return sc * sc;
        case PulseFamily::SRC: {
            const double r = sc * raised_cosine_factor(2.0 * alpha * std::abs(x));
            return r * r;
        }
        case PulseFamily::RRC: {
            const double ax = std::abs(x);
            const double u = 4.0 * alpha * ax;
            if (u < 0.5) return rrc(alpha, x);
            const double e = 1.0 - u;
            const double s = kSqrt2 * 0.25 * kPi * sinc(0.25 * e);
            double sa, ca;
            imdd::sincos_pi(alpha * ax, sa, ca);
            const double sxa = x < 0.0 ? -sx : sx;  // sin(pi |x|)
            return (sxa * (s + sa) + cx * (s - ca)) / (kPi * ax * (1.0 + u));
        }
        case PulseFamily::Xia: return sc * 0.5 * kPi * sinc(0.5 * (1.0 + 2.0 * alpha * x));
        case PulseFamily::SDJ: break;
    }
    return eval_normalized(family, alpha, x);
}

}  // namespace detail

std::string_view to_string(PulseFamily family) {
    switch (family) {
        case PulseFamily::RC: return "RC";
        case PulseFamily::BTN: return "BTN";
        case PulseFamily::PL: return "PL";
        case PulseFamily::Poly: return "Poly";
        case PulseFamily::S2: return "S2";
        case PulseFamily::SRC: return "SRC";
        case PulseFamily::SDJ: return "SDJ";
        case PulseFamily::RRC: return "RRC";
        case PulseFamily::Xia: return "Xia";
    }
    return "?";
}

PulseFamily parse_pulse_family(std::string_view name) {
    auto lower = [](std::string_view s) {
        std::string out(s);
        std::transform(out.begin(), out.end(), out.begin(),
                       [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
        return out;
    };
    const std::string key = lower(name);
    for (PulseFamily f : kAllFamilies) {
        if (lower(to_string(f)) == key) return f;
    }
    throw DomainError("unknown pulse family '" + std::string(name) + "'");
}

PulseSpec::PulseSpec(PulseFamily family, double alpha, double ts) : family_(family), alpha_(alpha), ts_(ts) {
    if (!(alpha >= kAlphaMin && alpha <= 1.0)) {
        std::ostringstream msg;
        msg << "roll-off " << alpha << " outside [" << kAlphaMin << ", 1]";
        throw DomainError(msg.str());
    }
    if (!(ts > 0.0) || !std::isfinite(ts)) throw DomainError("symbol duration must be positive and finite");
}

std::string PulseSpec::label() const {
    std::ostringstream out;
    out << to_string(family_) << "(alpha=" << alpha_ << ")";
    return out.str();
}

double TailEnvelope::at(double x) const { return coeff / std::pow(std::abs(x), power); }

double TailEnvelope::sum_beyond(double n) const {
    const double p = power;
    return coeff * (std::pow(n, -p) + std::pow(n, 1.0 - p) / (p - 1.0));
}

double TailEnvelope::integral_beyond(double x) const {
    const double p = power;
    return coeff * std::pow(x, 1.0 - p) / (p - 1.0);
}

double eval_normalized(PulseFamily family, double alpha, double x) {
    switch (family) {
        case PulseFamily::RC: return rc(alpha, x);
        case PulseFamily::BTN: return btn(alpha, x);
        case PulseFamily::PL: return sinc(x) * sinc(alpha * x);
        case PulseFamily::Poly: return poly(alpha, x);
        case PulseFamily::S2: {
            const double s = sinc(x);
            return s * s;
        }
        case PulseFamily::SRC: {
            const double r = rc(alpha, x);
            return r * r;
        }
        case PulseFamily::SDJ: return sdj(alpha, x);
        case PulseFamily::RRC: return rrc(alpha, x);
        case PulseFamily::Xia: return xia(alpha, x);
    }
    return 0.0;
}

double eval(const PulseSpec& pulse, double t) { return eval_normalized(pulse.family(), pulse.alpha(), t / pulse.ts()); }

PulseMetadata metadata(const PulseSpec& pulse) {
    const double a = pulse.alpha();
    const double narrow = 0.5 * (1.0 + a);
    switch (pulse.family()) {
        case PulseFamily::RC:
        case PulseFamily::BTN:
        case PulseFamily::PL:
        case PulseFamily::Poly: return {1.0, 1.0, narrow, std::nullopt, true, false};
        case PulseFamily::S2: return {1.0, 1.0, 1.0, std::nullopt, true, false};
        case PulseFamily::SRC: return {1.0 - a / 4.0, 1.0, 1.0 + a, std::nullopt, true, false};
        case PulseFamily::SDJ: return {1.0 - a / 2.0, 1.0, 1.0 + a, std::nullopt, true, false};
        case PulseFamily::RRC: return {1.0, 1.0 - a + 4.0 * a / kPi, narrow, 1.0, false, true};
        case PulseFamily::Xia: return {1.0, 1.0, narrow, 1.0, true, true};
    }
    return {};
}

TailEnvelope tail_envelope(const PulseSpec& pulse) {
    const double a = pulse.alpha();
    const double pi2 = kPi * kPi;
    switch (pulse.family()) {
        case PulseFamily::RC: return {1.0 / (3.0 * kPi * a * a), 3, 1.0 / a};
        case PulseFamily::SRC: return {1.0 / (9.0 * pi2 * a * a * a * a), 6, 1.0 / a};
        case PulseFamily::BTN: return {(2.0 * kLn2 + 3.0 * kLn2 * kLn2 / kPi) / (pi2 * a), 2, 1.0 / a};
        case PulseFamily::PL: return {1.0 / (pi2 * a), 2, 1.0};
        case PulseFamily::Poly: return {36.0 / (pi2 * pi2 * a * a * a), 4, 2.0 / (kPi * a)};
        case PulseFamily::S2:
        case PulseFamily::SDJ: return {1.0 / pi2, 2, 1.0};
        case PulseFamily::RRC: return {1.0 / (2.0 * kPi * a), 2, 0.5 / a};
        case PulseFamily::Xia: return {1.0 / (kPi * a), 2, 1.0 / a};
    }
    return {1.0, 2, 1.0};
}

int support_symbols(const PulseSpec& pulse, double level) {
    if (!(level > 0.0)) throw DomainError("support_symbols: level must be positive");
    const TailEnvelope env = tail_envelope(pulse);
    const double reach = std::pow(env.coeff / level, 1.0 / env.power);
    return static_cast<int>(std::ceil(std::max(reach, env.x_min)));
}

std::complex<double> spectrum_at(const PulseSpec& pulse, double omega, double tol) {
    check_tol(tol, "spectrum_at");
    const PulseFamily family = pulse.family();
    const double alpha = pulse.alpha();
    const double ts = pulse.ts();
    const double w = omega * ts;  // radians per normalized time unit

    quad::LineOptions opts;
    opts.panel_width = 0.5 / (1.0 + std::abs(w) / (2.0 * kPi));
    opts.decay_power = tail_envelope(pulse).power;
    opts.tol = 0.5 * tol / ts;
    try {
        const auto re = quad::integrate_real_line(
            [=](double x) { return eval_normalized(family, alpha, x) * std::cos(w * x); }, opts);
        const auto im = quad::integrate_real_line(
            [=](double x) { return -eval_normalized(family, alpha, x) * std::sin(w * x); }, opts);
        return {ts * re.value, ts * im.value};
    } catch (const NumericalError& e) {
        throw NumericalError("spectrum_at " + pulse.label() + ": " + e.what());
    }
}

double autocorrelation(const PulseSpec& pulse, double tau, double tol) {
    check_tol(tol, "autocorrelation");
    const PulseFamily family = pulse.family();
    const double alpha = pulse.alpha();
    const double ts = pulse.ts();
    const double shift = tau / ts;

    quad::LineOptions opts;
    opts.center = 0.5 * shift;
    opts.decay_power = 2 * tail_envelope(pulse).power;
    opts.tol = tol / ts;
    try {
        const auto r = quad::integrate_real_line(
            [=](double x) { return eval_normalized(family, alpha, x) * eval_normalized(family, alpha, x - shift); },
            opts);
        return ts * r.value;
    } catch (const NumericalError& e) {
        throw NumericalError("autocorrelation " + pulse.label() + ": " + e.what());
    }
}

double energy(const PulseSpec& pulse, double tol) { return autocorrelation(pulse, 0.0, tol); }

double nyquist_residual(const PulseSpec& pulse, int k_max) {
    if (k_max < 1) throw DomainError("nyquist_residual: k_max must be at least 1");
    double worst = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        const double x = static_cast<double>(k);
        worst = std::max({worst, std::abs(eval_normalized(pulse.family(), pulse.alpha(), x)),
                          std::abs(eval_normalized(pulse.family(), pulse.alpha(), -x))});
    }
    return worst;
}

}  // namespace imdd
