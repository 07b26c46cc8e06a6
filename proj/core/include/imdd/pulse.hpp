#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <string_view>

namespace imdd {

enum class PulseFamily { RC, BTN, PL, Poly, S2, SRC, SDJ, RRC, Xia };

inline constexpr std::array<PulseFamily, 9> kAllFamilies = {
    PulseFamily::RC,  PulseFamily::BTN, PulseFamily::PL,  PulseFamily::Poly, PulseFamily::S2,
    PulseFamily::SRC, PulseFamily::SDJ, PulseFamily::RRC, PulseFamily::Xia};

/// Smallest admissible roll-off. As alpha -> 0 every family except the
/// squared ones collapses to sinc, whose periodic absolute sum diverges.
inline constexpr double kAlphaMin = 0.01;

std::string_view to_string(PulseFamily family);

/// Case-insensitive; accepts the names produced by to_string.
/// Throws DomainError for unknown names.
PulseFamily parse_pulse_family(std::string_view name);

/// A pulse family with its roll-off and symbol duration. Always valid:
/// the constructor throws DomainError on out-of-range parameters.
class PulseSpec {
public:
    PulseSpec(PulseFamily family, double alpha, double ts = 1.0);

    PulseFamily family() const noexcept { return family_; }
    double alpha() const noexcept { return alpha_; }
    double ts() const noexcept { return ts_; }

    /// "RC(alpha=0.6)" style label used in diagnostics.
    std::string label() const;

    friend bool operator==(const PulseSpec&, const PulseSpec&) = default;

private:
    PulseFamily family_;
    double alpha_;
    double ts_;
};

struct PulseMetadata {
    double q_bar;                       ///< (1/Ts) * integral of q
    double q_zero;                      ///< q(0)
    double b_ts;                        ///< lowpass bandwidth times Ts
    std::optional<double> energy_ratio; ///< Eq/Ts, root-Nyquist pulses only
    bool is_nyquist;
    bool is_root_nyquist;
};

/// |q(t)| <= coeff / |t/Ts|^power for |t/Ts| >= x_min.
struct TailEnvelope {
    double coeff;
    int power;
    double x_min;

    /// Bound on the value at normalized distance x (x >= x_min).
    double at(double x) const;
    /// Bound on sum_{j > n} |q(x0 +- j Ts)| for any x0 in [0, 1) and n >= x_min + 1.
    double sum_beyond(double n) const;
    /// Bound on the one-sided integral of |q| beyond normalized distance x.
    double integral_beyond(double x) const;
};

/// q(t) from the closed-form definitions. Removable singularities are
/// evaluated through algebraically equivalent forms that are free of
/// cancellation, so the special-case values are hit exactly.
double eval(const PulseSpec& pulse, double t);

/// q evaluated at normalized time x = t/Ts.
double eval_normalized(PulseFamily family, double alpha, double x);

PulseMetadata metadata(const PulseSpec& pulse);

TailEnvelope tail_envelope(const PulseSpec& pulse);

/// Smallest symbol count G such that the envelope is below `level` at G*Ts.
int support_symbols(const PulseSpec& pulse, double level = 1e-3);

/// Q(omega) by adaptive quadrature over the real line. Throws NumericalError
/// if the tolerance cannot be met.
std::complex<double> spectrum_at(const PulseSpec& pulse, double omega, double tol = 1e-7);

/// Integral of q^2.
double energy(const PulseSpec& pulse, double tol = 1e-9);

/// Integral of q(t) q(t - tau).
double autocorrelation(const PulseSpec& pulse, double tau, double tol = 1e-9);

/// max |q(k Ts)| over k = +-1 .. +-k_max.
double nyquist_residual(const PulseSpec& pulse, int k_max);

}  // namespace imdd
