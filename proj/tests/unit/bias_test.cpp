#include "imdd/bias.hpp"
#include "imdd/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace imdd;

namespace {

// Plain truncated sums, the brute-force oracle.
double brute_abs(const PulseSpec& p, double t, int k) {
    double s = 0.0;
    for (int i = -k; i <= k; ++i) s += std::abs(eval(p, t - i));
    return s;
}

// Richardson in K for a remainder falling like 1/K^(p-1).
double extrapolated_abs(const PulseSpec& p, double t, int k) {
    const int r = tail_envelope(p).power - 1;
    const double s1 = brute_abs(p, t, k);
    const double s2 = brute_abs(p, t, 2 * k);
    const double g = std::pow(2.0, r);
    return (g * s2 - s1) / (g - 1.0);
}

double brute_signed(const PulseSpec& p, double t, int k) {
    double s = 0.0;
    for (int i = k; i >= 1; --i) s += eval(p, t - i) + eval(p, t + i);
    return s + eval(p, t);
}

}  // namespace

TEST(FoldedSums, Examples) {
    EXPECT_NEAR(folded_abs_sum(PulseSpec(PulseFamily::S2, 1.0), 0.0).value, 1.0, 1e-12);
    const PulseSpec rc(PulseFamily::RC, 0.6);
    const double v = folded_abs_sum(rc, 0.5).value;
    EXPECT_GT(v, 1.0);
    EXPECT_NEAR(v, extrapolated_abs(rc, 0.5, 100000), 1e-9);
    // PL at alpha = 1 is sinc^2: the abs sum is exactly 1.
    EXPECT_NEAR(folded_abs_sum(PulseSpec(PulseFamily::PL, 1.0), 0.25).value, 1.0, 1e-9);
    EXPECT_NEAR(folded_signed_sum(rc, 0.37).value, 1.0, 1e-9);
    for (double t : {0.0, 0.21, 0.5, 0.93}) EXPECT_NEAR(folded_signed_sum(PulseSpec(PulseFamily::Xia, 0.5), t).value, 1.0, 1e-9);
}

TEST(FoldedSums, TailCorrectionBeatsPlainTruncation) {
    const PulseSpec p(PulseFamily::PL, 0.3);
    const double ref = extrapolated_abs(p, 0.4, 400000);
    const auto k = truncation_depth(p, 1e-8);
    EXPECT_NEAR(folded_sums_at_depth(p, 0.4, k).abs_sum, ref, 1e-8);
    EXPECT_GT(std::abs(brute_abs(p, 0.4, static_cast<int>(k)) - ref), 1e-6);
}

TEST(FoldedSums, AllFamiliesAgainstBruteForce) {
    for (PulseFamily f : kAllFamilies) {
        for (double a : {0.25, 0.8}) {
            const PulseSpec p(f, a);
            for (double t : {0.0, 0.3, 0.5, 0.91}) {
                const double ref = extrapolated_abs(p, t, 100000);
                EXPECT_NEAR(folded_abs_sum(p, t, 1e-9).value, ref, 2e-9) << p.label() << " t=" << t;
                EXPECT_NEAR(folded_signed_sum(p, t, 1e-9).value, brute_signed(p, t, 100000),
                            2.0 * tail_envelope(p).sum_beyond(100000) + 1e-9)  // both sides
                    << p.label() << " t=" << t;
            }
        }
    }
}

TEST(FoldedSums, TruncationSelfConsistency) {
    for (PulseFamily f : kAllFamilies) {
        const PulseSpec p(f, 0.4);
        const double tol = 1e-8;
        const auto k = truncation_depth(p, tol);
        for (double t : {0.1, 0.5, 0.77}) {
            const auto a = folded_sums_at_depth(p, t, k);
            const auto b = folded_sums_at_depth(p, t, 2 * k);
            EXPECT_LT(std::abs(a.abs_sum - b.abs_sum), tol) << p.label();
            EXPECT_LT(std::abs(a.signed_sum - b.signed_sum), tol) << p.label();
        }
    }
}

TEST(FoldedSums, SpectralFormForWidebandPulses) {
    for (PulseFamily f : {PulseFamily::SRC, PulseFamily::SDJ}) {
        const PulseSpec p(f, 0.6);
        const FourierFoldedSum spectral(p, 1e-9);
        EXPECT_EQ(spectral.harmonics(), 1);
        for (int i = 0; i < 100; ++i) {
            const double t = i / 100.0;
            EXPECT_NEAR(folded_signed_sum(p, t).value, spectral(t), 1e-5) << p.label() << " t=" << t;
        }
    }
    EXPECT_NEAR(folded_signed_sum(PulseSpec(PulseFamily::SDJ, 0.6), 0.2).value,
                FourierFoldedSum(PulseSpec(PulseFamily::SDJ, 0.6))(0.2), 1e-6);
}

TEST(FoldedSums, PreconditionsAndDivergence) {
    const PulseSpec p(PulseFamily::RC, 0.5);
    EXPECT_THROW(folded_abs_sum(p, -0.1), DomainError);
    EXPECT_THROW(folded_abs_sum(p, 1.0), DomainError);
    EXPECT_THROW(folded_abs_sum(p, 0.5, 0.0), DomainError);
    EXPECT_THROW(folded_abs_sum(PulseSpec(PulseFamily::Xia, 0.01), 0.5, 1e-12), DivergenceError);
    EXPECT_LE(truncation_depth(PulseSpec(PulseFamily::PL, 0.01), 1e-8), kMaxTruncation);
}

TEST(RequiredBias, Examples) {
    EXPECT_EQ(required_bias(PulseSpec(PulseFamily::S2, 0.5), Constellation::ook()).mu, 0.0);
    const PulseSpec rc(PulseFamily::RC, 0.6);
    const auto s = required_bias(rc, Constellation::ook());
    EXPECT_NEAR(s.mu, 0.184, 0.002);
    EXPECT_GE(s.argmax_t, 0.0);
    EXPECT_LT(s.argmax_t, 1.0);
    EXPECT_EQ(s.grid_n, 4096u);
    EXPECT_DOUBLE_EQ(s.refine_tol, 1e-10);
    // Direct evaluation at the reported argmax, brute-force oracle.
    EXPECT_NEAR(s.mu, 0.5 * extrapolated_abs(rc, s.argmax_t, 20000) - 0.5 * brute_signed(rc, s.argmax_t, 20000), 1e-8);
    EXPECT_NEAR(required_bias(rc, Constellation::pam(4)).mu, 3 * s.mu, 1e-9);
}

TEST(RequiredBias, NonnegativePulsesNeedNone) {
    for (PulseFamily f : {PulseFamily::S2, PulseFamily::SRC, PulseFamily::SDJ}) {
        for (int m : {2, 4}) {
            for (double a : {0.2, 0.6, 1.0}) EXPECT_EQ(required_bias(PulseSpec(f, a), Constellation::pam(m)).mu, 0.0);
        }
    }
}

TEST(RequiredBias, LinearInPamOrder) {
    for (PulseFamily f : {PulseFamily::RC, PulseFamily::BTN, PulseFamily::RRC, PulseFamily::Xia}) {
        const PulseSpec p(f, 0.45);
        const double ook = required_bias(p, Constellation::ook()).mu;
        for (int m : {4, 8}) EXPECT_NEAR(required_bias(p, Constellation::pam(m)).mu, (m - 1) * ook, 1e-9) << p.label();
    }
}

TEST(RequiredBias, LowerBoundAndShift) {
    const PulseSpec p(PulseFamily::PL, 0.4);
    const auto base = Constellation::ook();
    const double mu0 = required_bias(p, base).mu;
    for (double c : {-0.5, 1.0, 3.0}) {
        const auto shifted = base.shifted(c);
        const double mu = required_bias(p, shifted).mu;
        EXPECT_GE(mu, -shifted.midpoint() * metadata(p).q_bar - 1e-12);
        EXPECT_NEAR(mu, mu0 - c, 5e-8);  // q_bar = 1
    }
}

TEST(RequiredBias, ArgmaxIsGridIndependent) {
    BiasOptions fine;
    fine.grid_n = 8192;
    for (PulseFamily f : {PulseFamily::RC, PulseFamily::Xia, PulseFamily::Poly}) {
        const PulseSpec p(f, 0.35);
        EXPECT_NEAR(required_bias(p, Constellation::ook()).mu, required_bias(p, Constellation::ook(), fine).mu, 1e-8);
    }
}

TEST(RequiredBias, OrderingSpotChecks) {
    const auto ook = Constellation::ook();
    auto mu = [&](PulseFamily f, double a) { return required_bias(PulseSpec(f, a), ook).mu; };
    EXPECT_LT(mu(PulseFamily::BTN, 0.55), mu(PulseFamily::PL, 0.55));
    EXPECT_LT(mu(PulseFamily::PL, 0.70), mu(PulseFamily::BTN, 0.70));
    EXPECT_GT(std::min(mu(PulseFamily::Poly, 0.5), mu(PulseFamily::RC, 0.5)),
              std::max(mu(PulseFamily::PL, 0.5), mu(PulseFamily::BTN, 0.5)));
    for (PulseFamily f : kAllFamilies) {
        if (f != PulseFamily::Xia) EXPECT_LT(mu(f, 0.5), mu(PulseFamily::Xia, 0.5));
    }
}

TEST(BiasCurve, NormalizedCurveIndependentOfOrder) {
    const std::vector<double> alphas{0.2, 0.6, 0.9};
    const auto c2 = bias_curve(PulseFamily::RC, alphas, Constellation::ook());
    const auto c4 = bias_curve(PulseFamily::RC, alphas, Constellation::pam(4));
    ASSERT_EQ(c2.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_DOUBLE_EQ(c2[i].alpha, alphas[i]);
        EXPECT_NEAR(c2[i].mu_over_a_hat, c4[i].mu_over_a_hat, 1e-9);
    }
    EXPECT_NEAR(c2[1].mu_over_a_hat, 0.184, 0.002);
    EXPECT_THROW(bias_curve(PulseFamily::RC, alphas, Constellation({-1.0, 0.0})), DomainError);
    const std::vector<double> bad{0.001};
    EXPECT_THROW(bias_curve(PulseFamily::RC, bad, Constellation::ook()), DomainError);
}

TEST(BiasCurve, MonotoneDecreasingForRc) {
    std::vector<double> alphas;
    for (double a = 0.1; a <= 1.0001; a += 0.1) alphas.push_back(a);
    const auto c = bias_curve(PulseFamily::RC, alphas, Constellation::ook());
    for (std::size_t i = 1; i < c.size(); ++i) EXPECT_LT(c[i].mu, c[i - 1].mu);
}
