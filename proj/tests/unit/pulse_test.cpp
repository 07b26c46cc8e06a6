#include "imdd/errors.hpp"
#include "imdd/pulse.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace imdd;

namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(kPi * x) / (kPi * x); }

// Textbook forms, evaluated away from their removable singularities.
double rc_ref(double a, double x) { return sinc(x) * std::cos(kPi * a * x) / (1.0 - 4.0 * a * a * x * x); }
double rrc_ref(double a, double x) {
    const double num = std::sin(kPi * x * (1 - a)) + 4 * a * x * std::cos(kPi * x * (1 + a));
    return num / (kPi * x * (1 - 16 * a * a * x * x));
}
double xia_ref(double a, double x) { return sinc(x) * std::cos(kPi * a * x) / (2 * a * x + 1); }
double btn_ref(double a, double x) {
    const double b = kPi * a * x / std::numbers::ln2;
    return sinc(x) * (4 * b * std::sin(kPi * a * x / 2) * std::cos(kPi * a * x / 2) + 2 * std::cos(kPi * a * x) - 1) / (b * b + 1);
}
double poly_ref(double a, double x) {
    const double z = kPi * a * x / 2;
    return 3 * sinc(x) * (std::pow(std::sin(z) / z, 2) - std::sin(2 * z) / (2 * z)) / (z * z);
}

}  // namespace

TEST(PulseSpec, RejectsOutOfRangeParameters) {
    EXPECT_THROW(PulseSpec(PulseFamily::RC, 0.0), DomainError);
    EXPECT_THROW(PulseSpec(PulseFamily::RC, 0.009), DomainError);
    EXPECT_THROW(PulseSpec(PulseFamily::RC, 1.01), DomainError);
    EXPECT_THROW(PulseSpec(PulseFamily::RC, 0.5, 0.0), DomainError);
    EXPECT_NO_THROW(PulseSpec(PulseFamily::RC, kAlphaMin));
    EXPECT_NO_THROW(PulseSpec(PulseFamily::S2, 0.3));  // accepted, ignored
}

TEST(PulseSpec, ParsesFamilyNames) {
    EXPECT_EQ(parse_pulse_family("rrc"), PulseFamily::RRC);
    EXPECT_EQ(parse_pulse_family("Poly"), PulseFamily::Poly);
    EXPECT_EQ(parse_pulse_family("XIA"), PulseFamily::Xia);
    EXPECT_THROW(parse_pulse_family("gauss"), DomainError);
    for (PulseFamily f : kAllFamilies) EXPECT_EQ(parse_pulse_family(to_string(f)), f);
}

TEST(PulseEval, Examples) {
    EXPECT_DOUBLE_EQ(eval(PulseSpec(PulseFamily::RC, 0.6), 0.0), 1.0);
    EXPECT_NEAR(eval(PulseSpec(PulseFamily::PL, 0.5), 1.0), 0.0, 1e-15);
    EXPECT_NEAR(eval(PulseSpec(PulseFamily::RRC, 0.22), 0.0), 1.0 - 0.22 + 4 * 0.22 / kPi, 1e-14);
    EXPECT_NEAR(eval(PulseSpec(PulseFamily::RC, 0.5), 1.0), 0.0, 1e-15);
    EXPECT_NEAR(eval(PulseSpec(PulseFamily::Poly, 0.4), 0.0), 1.0, 1e-14);
}

TEST(PulseEval, SpecialValuesAtRemovableSingularities) {
    for (double a : {0.2, 0.35, 0.8}) {
        // RC at Ts/(2a): (pi/4) sinc(1/(2a))
        EXPECT_NEAR(eval(PulseSpec(PulseFamily::RC, a), 0.5 / a), kPi / 4 * sinc(0.5 / a), 1e-14);
        // RRC at Ts/(4a)
        const double x = 0.25 / a;
        const double expect = a / std::sqrt(2.0) *
                              ((1 + 2 / kPi) * std::sin(kPi / (4 * a)) + (1 - 2 / kPi) * std::cos(kPi / (4 * a)));
        EXPECT_NEAR(eval(PulseSpec(PulseFamily::RRC, a), x), expect, 1e-13);
        EXPECT_NEAR(eval(PulseSpec(PulseFamily::RRC, a), -x), expect, 1e-13);
    }
}

TEST(PulseEval, ContinuousThroughSingularities) {
    for (double a : {0.25, 0.6}) {
        for (PulseFamily f : {PulseFamily::RC, PulseFamily::RRC, PulseFamily::Xia, PulseFamily::Poly}) {
            const PulseSpec p(f, a);
            for (double s : {0.0, 0.5 / a, 0.25 / a, -0.5 / a}) {
                for (double d : {1e-9, 1e-7, 1e-5}) {
                    EXPECT_NEAR(eval(p, s + d), eval(p, s - d), 10 * d) << p.label() << " at " << s;
                }
            }
        }
    }
}

TEST(PulseEval, MatchesTextbookFormsAwayFromSingularities) {
    for (double a : {0.15, 0.5, 0.9}) {
        for (double x : {0.13, 0.77, 1.4, 3.3, 12.71}) {
            for (double s : {1.0, -1.0}) {
                const double t = s * x;
                EXPECT_NEAR(eval(PulseSpec(PulseFamily::RC, a), t), rc_ref(a, t), 1e-12);
                EXPECT_NEAR(eval(PulseSpec(PulseFamily::RRC, a), t), rrc_ref(a, t), 1e-12);
                EXPECT_NEAR(eval(PulseSpec(PulseFamily::Xia, a), t), xia_ref(a, t), 1e-12);
                EXPECT_NEAR(eval(PulseSpec(PulseFamily::BTN, a), t), btn_ref(a, t), 1e-12);
                EXPECT_NEAR(eval(PulseSpec(PulseFamily::Poly, a), t), poly_ref(a, t), 1e-10);
                EXPECT_NEAR(eval(PulseSpec(PulseFamily::PL, a), t), sinc(t) * sinc(a * t), 1e-14);
                const double sdj = 0.5 * (1 - a) * sinc((1 - a) * t) + 0.5 * (1 + a) * sinc((1 + a) * t);
                EXPECT_NEAR(eval(PulseSpec(PulseFamily::SDJ, a), t), sdj * sdj, 1e-14);
            }
        }
    }
}

TEST(PulseEval, TimeScalesWithSymbolDuration) {
    for (PulseFamily f : kAllFamilies) {
        EXPECT_DOUBLE_EQ(eval(PulseSpec(f, 0.4, 2e-3), 0.7e-3), eval(PulseSpec(f, 0.4), 0.35));
    }
}

TEST(PulseEval, EvenExceptXia) {
    for (PulseFamily f : kAllFamilies) {
        const PulseSpec p(f, 0.5);
        if (f == PulseFamily::Xia) {
            EXPECT_GT(std::abs(eval(p, 0.3) - eval(p, -0.3)), 1e-3);
        } else {
            for (double t : {0.3, 1.7, 5.25}) EXPECT_DOUBLE_EQ(eval(p, t), eval(p, -t)) << p.label();
        }
    }
}

TEST(PulseEval, SrcIsSquaredRc) {
    for (double a : {0.1, 0.6, 1.0}) {
        for (int i = 0; i < 1000; ++i) {
            const double t = -20.0 + 0.04 * i;
            const double rc = eval(PulseSpec(PulseFamily::RC, a), t);
            EXPECT_NEAR(eval(PulseSpec(PulseFamily::SRC, a), t), rc * rc, 1e-12);
        }
    }
}

TEST(PulseEval, TailEnvelopeBoundsPulse) {
    for (PulseFamily f : kAllFamilies) {
        for (double a : {0.05, 0.3, 1.0}) {
            const PulseSpec p(f, a);
            const TailEnvelope env = tail_envelope(p);
            for (int i = 0; i < 4000; ++i) {
                const double x = env.x_min + 0.0137 * i * (1 + i / 400.0);
                EXPECT_LE(std::abs(eval(p, x)), env.at(x) * (1 + 1e-9)) << p.label() << " x=" << x;
                EXPECT_LE(std::abs(eval(p, -x)), env.at(x) * (1 + 1e-9)) << p.label() << " x=" << -x;
            }
        }
    }
}

TEST(Metadata, TableValues) {
    const auto src = metadata(PulseSpec(PulseFamily::SRC, 0.8));
    EXPECT_DOUBLE_EQ(src.q_bar, 0.8);
    EXPECT_DOUBLE_EQ(src.q_zero, 1.0);
    EXPECT_DOUBLE_EQ(src.b_ts, 1.8);
    const auto s2 = metadata(PulseSpec(PulseFamily::S2, 0.4));
    EXPECT_DOUBLE_EQ(s2.q_bar, 1.0);
    EXPECT_DOUBLE_EQ(s2.b_ts, 1.0);
    const auto xia = metadata(PulseSpec(PulseFamily::Xia, 0.3));
    EXPECT_DOUBLE_EQ(xia.energy_ratio.value(), 1.0);
    EXPECT_DOUBLE_EQ(xia.b_ts, 0.65);
    EXPECT_TRUE(xia.is_nyquist && xia.is_root_nyquist);
    const auto rrc = metadata(PulseSpec(PulseFamily::RRC, 0.3));
    EXPECT_FALSE(rrc.is_nyquist);
    EXPECT_TRUE(rrc.is_root_nyquist);
    EXPECT_NEAR(rrc.q_zero, 1 - 0.3 + 1.2 / kPi, 1e-15);
    EXPECT_DOUBLE_EQ(metadata(PulseSpec(PulseFamily::SDJ, 0.6)).q_bar, 0.7);
    for (PulseFamily f : kAllFamilies) {
        const auto m = metadata(PulseSpec(f, 0.5));
        if (f != PulseFamily::RRC && f != PulseFamily::Xia) {
            EXPECT_TRUE(m.is_nyquist && !m.is_root_nyquist);
            EXPECT_FALSE(m.energy_ratio.has_value());
        }
    }
}

TEST(Metadata, QZeroMatchesEval) {
    for (PulseFamily f : kAllFamilies) {
        for (double a : {0.1, 0.5, 1.0}) {
            const PulseSpec p(f, a);
            EXPECT_NEAR(eval(p, 0.0), metadata(p).q_zero, 1e-14) << p.label();
        }
    }
}

TEST(Nyquist, ResidualVanishesForNyquistPulses) {
    for (PulseFamily f : kAllFamilies) {
        for (double a : {0.1, 0.25, 0.5, 0.75, 1.0}) {
            const PulseSpec p(f, a);
            if (metadata(p).is_nyquist) EXPECT_LT(nyquist_residual(p, 20), 1e-9) << p.label();
        }
    }
    EXPECT_GT(nyquist_residual(PulseSpec(PulseFamily::RRC, 0.5), 20), 1e-3);
    EXPECT_THROW(nyquist_residual(PulseSpec(PulseFamily::RC, 0.5), 0), DomainError);
}

TEST(Spectrum, DcEqualsMeanTimesTs) {
    for (PulseFamily f : kAllFamilies) {
        for (double a : {0.2, 0.7}) {
            const PulseSpec p(f, a, 0.5);
            const auto q0 = spectrum_at(p, 0.0);
            EXPECT_NEAR(q0.real(), metadata(p).q_bar * p.ts(), 1e-6 * p.ts()) << p.label();
            EXPECT_NEAR(q0.imag(), 0.0, 1e-6 * p.ts());
        }
    }
}

TEST(Spectrum, VanishesBeyondBandEdge) {
    for (PulseFamily f : kAllFamilies) {
        const PulseSpec p(f, 0.6);
        const double edge = 2 * kPi * metadata(p).b_ts * (1 + 2e-2);
        for (double w : {edge, 1.3 * edge}) EXPECT_LT(std::abs(spectrum_at(p, w)), 1e-6) << p.label();
    }
    EXPECT_GT(std::abs(spectrum_at(PulseSpec(PulseFamily::SRC, 0.6), 2 * kPi)), 1e-3);
}

TEST(Spectrum, RaisedCosineShape) {
    // RC spectrum: Ts on |f| <= (1-a)/2Ts, cosine roll-off to zero at (1+a)/2Ts.
    const double a = 0.6;
    const PulseSpec p(PulseFamily::RC, a);
    for (double f : {0.1, 0.35, 0.5, 0.7}) {
        double expect = 1.0;
        if (f > (1 - a) / 2) expect = 0.5 * (1 + std::cos(kPi / a * (f - (1 - a) / 2)));
        EXPECT_NEAR(spectrum_at(p, 2 * kPi * f).real(), expect, 1e-6) << f;
    }
}

TEST(Energy, RootNyquistPulsesHaveUnitEnergy) {
    EXPECT_NEAR(energy(PulseSpec(PulseFamily::RRC, 0.5)), 1.0, 1e-6);
    EXPECT_NEAR(energy(PulseSpec(PulseFamily::Xia, 0.3)), 1.0, 1e-6);
    EXPECT_NEAR(energy(PulseSpec(PulseFamily::S2, 0.3)), 2.0 / 3.0, 1e-6);
    EXPECT_NEAR(energy(PulseSpec(PulseFamily::RRC, 0.5, 3.0)), 3.0, 3e-6);
}

TEST(Autocorrelation, RootNyquistOrthogonality) {
    for (PulseFamily f : {PulseFamily::RRC, PulseFamily::Xia}) {
        for (double a : {0.1, 0.4, 1.0}) {
            const PulseSpec p(f, a);
            for (int k = 1; k <= 10; ++k) EXPECT_LT(std::abs(autocorrelation(p, k)), 1e-6) << p.label() << " k=" << k;
        }
    }
    EXPECT_GT(std::abs(autocorrelation(PulseSpec(PulseFamily::RC, 0.4), 1.0)), 1e-3);
    // RRC * RRC = RC
    EXPECT_NEAR(autocorrelation(PulseSpec(PulseFamily::RRC, 0.4), 0.37), eval(PulseSpec(PulseFamily::RC, 0.4), 0.37), 1e-7);
}

TEST(Support, CoversEnvelopeLevel) {
    const PulseSpec p(PulseFamily::PL, 0.3);
    const int n = support_symbols(p, 1e-3);
    EXPECT_LE(tail_envelope(p).at(n), 1e-3);
    EXPECT_THROW(support_symbols(p, 0.0), DomainError);
}
