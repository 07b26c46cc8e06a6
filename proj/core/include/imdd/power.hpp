#pragma once

#include "imdd/constellation.hpp"
#include "imdd/pulse.hpp"
#include "imdd/receiver.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace imdd {

enum class Scenario { EqualEye, EqualSer };

std::string_view to_string(Scenario scenario);
/// Accepts "equal-eye" and "equal-ser" (case-insensitive, '_' for '-').
Scenario parse_scenario(std::string_view name);

/// Optical power gains are relative to S2 pulses with OOK and a sampling
/// receiver: Gain = 10 log10(P_opt,ref / P_opt) in dB.

/// Equal noiseless eye opening: 10 log10(da q(0) / (2 (mu + E{a} q_bar))).
/// Throws UnsupportedError for pulses that are not Nyquist.
double gain_equal_eye(const PulseSpec& pulse, const Constellation& constellation);

/// The same scenario without the factor 2 of the reference's mean symbol
/// (the 10 log10(da q(0) / (mu + E{a} q_bar)) form); kept for comparison only.
double gain_equal_eye_unreferenced(const PulseSpec& pulse, const Constellation& constellation);

/// A_ref / A at equal symbol error probability p_err.
/// Throws UnsupportedError for non-uniform alphabets or a pulse the receiver
/// cannot detect ISI-free, DomainError unless 0 < p_err < (M-1)/M.
double amp_ratio_equal_ser(Receiver receiver, const PulseSpec& pulse, const Constellation& constellation, double p_err);

/// 10 log10((A_ref/A) (1/2) / (mu + E{a} q_bar)).
double gain_equal_ser(Receiver receiver, const PulseSpec& pulse, const Constellation& constellation, double p_err);

struct GainPoint {
    Scenario scenario;
    Receiver receiver;
    PulseFamily family;
    double alpha;
    int m;
    double b_tb;     ///< B Ts / log2 M
    double gain_db;  ///< NaN when the point failed
    double mu;
    double q_bar;
    double q_zero;
    double gain_unreferenced_db;  ///< equal-eye only, NaN otherwise
    bool reference = false;
    std::string error;  ///< empty on success
};

struct SweepRequest {
    Scenario scenario = Scenario::EqualEye;
    std::vector<PulseFamily> families;
    std::vector<double> alphas;
    std::vector<int> m_values{2};
    double p_err = 1e-6;
    /// Empty: sampling for Nyquist pulses plus the matched filter for
    /// root-Nyquist pulses (equal-SER), sampling only (equal-eye).
    std::vector<Receiver> receivers;
};

/// Gain curves plus the reference row, sorted by b_tb. A failing point is
/// recorded with its error message instead of aborting the sweep.
std::vector<GainPoint> sweep(const SweepRequest& request);

}  // namespace imdd
