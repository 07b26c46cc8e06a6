#include "imdd/bias.hpp"

#include "imdd/errors.hpp"
#include "imdd/quadrature.hpp"
#include "pulse_detail.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace imdd {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();
constexpr double kInvPhi = 0.6180339887498949;

double ipow(double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

void check_phase(const PulseSpec& pulse, double t) {
    if (!(t >= 0.0 && t < pulse.ts())) throw DomainError("folded sum: t must lie in [0, Ts)");
}

}  // namespace

std::int64_t truncation_depth(const PulseSpec& pulse, double tail_tol) {
    if (!(tail_tol > 0.0)) throw DomainError("truncation_depth: tail tolerance must be positive");
    const TailEnvelope env = tail_envelope(pulse);
    const double k = std::max({std::pow(8.0 * env.coeff / tail_tol, 1.0 / env.power), 2.0 * env.x_min + 1.0, 32.0});
    if (k > static_cast<double>(kMaxTruncation)) {
        std::ostringstream msg;
        msg << "periodic sum for " << pulse.label() << " needs K = " << k << " > " << kMaxTruncation
            << " terms at tail tolerance " << tail_tol << "; roll-off too small";
        throw DivergenceError(msg.str());
    }
    return static_cast<std::int64_t>(std::ceil(k));
}

FoldedSums folded_sums_at_depth(const PulseSpec& pulse, double t, std::int64_t k_trunc) {
    if (k_trunc < 4) throw DomainError("folded_sums_at_depth: truncation must be at least 4");
    const PulseFamily family = pulse.family();
    const double alpha = pulse.alpha();
    const int p = tail_envelope(pulse).power;
    const double x0 = t / pulse.ts();
    const std::int64_t half = k_trunc / 2;

    // Far terms first; the outer half also feeds the remainder estimate.
    double abs_sum = 0.0;
    double signed_sum = 0.0;
    double m_abs_right = 0.0, m_sig_right = 0.0, m_abs_left = 0.0, m_sig_left = 0.0;
    double s0, c0;
    detail::sincos_pi(x0, s0, c0);
    for (std::int64_t k = k_trunc; k >= 1; --k) {
        const double kd = static_cast<double>(k);
        const double sign = (k & 1) ? -1.0 : 1.0;
        const double vr = detail::eval_with_phase(family, alpha, x0 - kd, sign * s0, sign * c0);
        const double vl = detail::eval_with_phase(family, alpha, x0 + kd, sign * s0, sign * c0);
        abs_sum += std::abs(vr) + std::abs(vl);
        signed_sum += vr + vl;
        if (k > half) {
            const double wr = ipow(kd - x0, p);
            const double wl = ipow(kd + x0, p);
            m_abs_right += std::abs(vr) * wr;
            m_sig_right += vr * wr;
            m_abs_left += std::abs(vl) * wl;
            m_sig_left += vl * wl;
        }
    }
    const double v0 = eval_normalized(family, alpha, x0);
    abs_sum += std::abs(v0);
    signed_sum += v0;

    const double count = static_cast<double>(k_trunc - half);
    const double zr = quad::hurwitz_zeta_tail(static_cast<double>(k_trunc) + 1.0 - x0, p);
    const double zl = quad::hurwitz_zeta_tail(static_cast<double>(k_trunc) + 1.0 + x0, p);
    abs_sum += (m_abs_right * zr + m_abs_left * zl) / count;
    signed_sum += (m_sig_right * zr + m_sig_left * zl) / count;
    return {abs_sum, signed_sum, k_trunc};
}

FoldedSum folded_abs_sum(const PulseSpec& pulse, double t, double tail_tol) {
    check_phase(pulse, t);
    const auto k = truncation_depth(pulse, tail_tol);
    return {folded_sums_at_depth(pulse, t, k).abs_sum, k};
}

FoldedSum folded_signed_sum(const PulseSpec& pulse, double t, double tail_tol) {
    check_phase(pulse, t);
    const auto k = truncation_depth(pulse, tail_tol);
    return {folded_sums_at_depth(pulse, t, k).signed_sum, k};
}

FourierFoldedSum::FourierFoldedSum(const PulseSpec& pulse, double tol) : ts_(pulse.ts()) {
    // Q(2 pi n / Ts) vanishes for |n| >= B Ts.
    const double b_ts = metadata(pulse).b_ts;
    n_max_ = static_cast<int>(std::ceil(b_ts)) - 1;
    coeff_.reserve(static_cast<std::size_t>(2 * n_max_ + 1));
    for (int n = -n_max_; n <= n_max_; ++n) {
        coeff_.push_back(spectrum_at(pulse, 2.0 * kPi * n / ts_, tol * ts_) / ts_);
    }
}

double FourierFoldedSum::operator()(double t) const {
    std::complex<double> acc = 0.0;
    for (int n = -n_max_; n <= n_max_; ++n) {
        acc += coeff_[static_cast<std::size_t>(n + n_max_)] * std::polar(1.0, 2.0 * kPi * n * t / ts_);
    }
    return acc.real();
}

PeriodicMax maximize_folded(const PulseSpec& pulse, double weight_abs, double weight_signed,
                            const BiasOptions& options) {
    if (options.grid_n < 8) throw DomainError("maximize_folded: grid needs at least 8 points");
    if (!(options.refine_tol > 0.0)) throw DomainError("maximize_folded: refine tolerance must be positive");
    const double ts = pulse.ts();
    const auto k_full = truncation_depth(pulse, options.tail_tol);
    const auto k_coarse = std::min(k_full, truncation_depth(pulse, 1e-4));
    const auto k_locate = std::min(k_full, truncation_depth(pulse, 1e-6));

    auto objective = [&](double t, std::int64_t k) {
        const FoldedSums s = folded_sums_at_depth(pulse, t, k);
        return weight_abs * s.abs_sum + weight_signed * s.signed_sum;
    };

    // Even pulses give an objective symmetric about t = 0, so half a period suffices.
    const std::size_t n = options.grid_n;
    const bool even = pulse.family() != PulseFamily::Xia;
    const double h = ts / static_cast<double>(n);
    std::vector<double> coarse(n);
    const std::size_t last = even ? n / 2 : n - 1;
    for (std::size_t i = 0; i <= last; ++i) coarse[i] = objective(static_cast<double>(i) * h, k_coarse);
    if (even) {
        for (std::size_t i = last + 1; i < n; ++i) coarse[i] = coarse[n - i];
    }

    const double best_coarse = *std::max_element(coarse.begin(), coarse.end());
    const double margin = options.candidate_margin * (std::abs(weight_abs) + std::abs(weight_signed));
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i <= last; ++i) {
        const double prev = coarse[(i + n - 1) % n];
        const double next = coarse[(i + 1) % n];
        if (coarse[i] >= prev && coarse[i] >= next && coarse[i] >= best_coarse - margin) candidates.push_back(i);
    }
    // A flat objective (e.g. a nonnegative pulse with a unipolar alphabet)
    // makes every point a local maximum; refining a handful is enough.
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](std::size_t a, std::size_t b) { return coarse[a] > coarse[b]; });
    if (candidates.size() > 4) candidates.resize(4);

    // Maxima are smooth stationary points (kinks of |q| only form minima),
    // so locating them with a mid-depth sum costs O(error^2) in the value;
    // the reported value uses the full depth.
    PeriodicMax best{-std::numeric_limits<double>::infinity(), 0.0, k_full};
    for (std::size_t i : candidates) {
        const double centre = static_cast<double>(i) * h;
        double a = centre - h;
        double b = centre + h;
        double c = b - kInvPhi * (b - a);
        double d = a + kInvPhi * (b - a);
        double fc = objective(c, k_locate);
        double fd = objective(d, k_locate);
        while (b - a > options.refine_tol * ts) {
            if (fc >= fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - kInvPhi * (b - a);
                fc = objective(c, k_locate);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + kInvPhi * (b - a);
                fd = objective(d, k_locate);
            }
        }
        const double t_star = fc >= fd ? c : d;
        for (double t : {t_star, centre}) {
            const double v = objective(t, k_full);
            if (v > best.value) {
                best.value = v;
                best.argmax_t = t;
            }
        }
    }
    best.argmax_t = std::fmod(best.argmax_t, ts);
    if (best.argmax_t < 0.0) best.argmax_t += ts;
    if (best.argmax_t >= ts) best.argmax_t = 0.0;
    return best;
}

BiasSolution required_bias(const PulseSpec& pulse, const Constellation& constellation, const BiasOptions& options) {
    const double spread = constellation.a_hat() - constellation.midpoint();
    const double mid = constellation.midpoint();
    const PeriodicMax m = maximize_folded(pulse, spread, -mid, options);
    return {m.value, m.argmax_t, m.k_trunc, options.grid_n, options.refine_tol};
}

std::vector<BiasCurvePoint> bias_curve(PulseFamily family, std::span<const double> alpha_grid,
                                       const Constellation& constellation, const BiasOptions& options) {
    if (constellation.a_hat() == 0.0) throw DomainError("bias_curve: normalization needs a nonzero largest level");
    std::vector<BiasCurvePoint> out;
    out.reserve(alpha_grid.size());
    for (double alpha : alpha_grid) {
        const BiasSolution s = required_bias(PulseSpec(family, alpha), constellation, options);
        out.push_back({alpha, s.mu, s.mu / constellation.a_hat()});
    }
    return out;
}

}  // namespace imdd
