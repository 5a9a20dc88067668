#include <gtest/gtest.h>

#include <random>

#include "vdicke/model.hpp"

using namespace vdicke;

namespace {

ModelParams unit(double g1 = 0.0, double g2 = 0.0) { return {1.0, 1.0, 1.0, 1.0, g1, g2}; }

ModelParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> freq(0.2, 3.0);
    std::uniform_real_distribution<double> coup(0.01, 3.0);
    return {freq(rng), freq(rng), freq(rng), freq(rng), coup(rng), coup(rng)};
}

} // namespace

TEST(Model, ValidateRejectsNonPositiveFrequencies) {
    ModelParams p = unit();
    p.omega_a = 0.0;
    EXPECT_THROW(p.validate(), ParameterError);
    p = unit();
    p.g2 = -0.1;
    EXPECT_THROW(p.validate(), ParameterError);
    EXPECT_NO_THROW(unit(0.3, 0.0).validate());
}

TEST(Model, CriticalCouplings) {
    EXPECT_DOUBLE_EQ(critical_g1(unit()), 0.5);
    ModelParams p = unit();
    p.omega31 = 1.7;
    EXPECT_NEAR(critical_g1(p), 0.652, 1e-3);
    p.omega_a = 2.0;
    p.omega31 = 0.5;
    EXPECT_DOUBLE_EQ(critical_g1(p), 0.5);

    ModelParams q = unit();
    q.omega_b = 2.0;
    q.omega21 = 0.5;
    EXPECT_DOUBLE_EQ(critical_g2(q), 0.5);
    q.omega21 = 1.7 / 2.0;
    EXPECT_NEAR(critical_g2(q), 0.652, 1e-3);
}

TEST(Model, MuRatios) {
    EXPECT_DOUBLE_EQ(mu_left(unit(1.0)), 0.25);
    EXPECT_DOUBLE_EQ(mu_left(unit(0.5)), 1.0);
    ModelParams p = unit(0.75);
    p.omega31 = 1.7;
    EXPECT_NEAR(mu_left(p), 0.7556, 1e-4);
    EXPECT_THROW(mu_left(unit(0.0)), ParameterError);
    EXPECT_DOUBLE_EQ(mu_right(unit(0.0, 1.0)), 0.25);
    EXPECT_THROW(mu_right(unit(1.0, 0.0)), ParameterError);
}

TEST(Model, MuAtMostOneIffAboveThreshold) {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 1000; ++k) {
        const ModelParams p = random_params(rng);
        EXPECT_GT(mu_left(p), 0.0);
        EXPECT_EQ(mu_left(p) <= 1.0, p.g1 >= critical_g1(p));
        EXPECT_EQ(mu_right(p) <= 1.0, p.g2 >= critical_g2(p));
    }
}

TEST(Model, RenormalizedCriticalG2) {
    EXPECT_NEAR(renormalized_critical_g2(unit(0.5, 0.3)), 0.5, 1e-15);
    EXPECT_NEAR(renormalized_critical_g2(unit(1.0, 0.3)), 1.0, 1e-14);
    const double big = renormalized_critical_g2(unit(100.0, 0.3));
    EXPECT_NEAR(big / 100.0, 1.0, 1e-3);
    EXPECT_THROW(renormalized_critical_g2(unit(0.49, 0.3)), DomainError);
}

TEST(Model, RenormalizedCriticalG1Mirror) {
    EXPECT_NEAR(renormalized_critical_g1(unit(0.3, 0.5)), 0.5, 1e-15);
    EXPECT_NEAR(renormalized_critical_g1(unit(0.3, 1.0)), 1.0, 1e-14);
    EXPECT_THROW(renormalized_critical_g1(unit(0.3, 0.4)), DomainError);
    // Mirror relation through the branch exchange.
    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k) {
        ModelParams p = random_params(rng);
        p.g2 = critical_g2(p) * (1.0 + p.g2);
        EXPECT_NEAR(renormalized_critical_g1(p), renormalized_critical_g2(p.exchanged()),
                    1e-13 * renormalized_critical_g1(p));
    }
}

TEST(Model, RenormalizedReducesToBareAtThreshold) {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 1000; ++k) {
        ModelParams p = random_params(rng);
        p.g1 = critical_g1(p);
        EXPECT_NEAR(renormalized_critical_g2(p), critical_g2(p), 1e-12 * critical_g2(p));
        ModelParams q = random_params(rng);
        q.g2 = critical_g2(q);
        EXPECT_NEAR(renormalized_critical_g1(q), critical_g1(q), 1e-12 * critical_g1(q));
    }
}

TEST(Model, RenormalizedMonotoneInG1) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        ModelParams p = random_params(rng);
        const double gc = critical_g1(p);
        double prev = 0.0;
        for (int i = 0; i < 1000; ++i) {
            p.g1 = gc * (1.0 + 9.0 * i / 999.0);
            const double v = renormalized_critical_g2(p);
            EXPECT_GE(v, prev);
            EXPECT_GE(v, critical_g2(p) * (1.0 - 1e-14));
            prev = v;
        }
    }
}

TEST(Model, RenormalizedAsymptote) {
    ModelParams p{1.0, 1.3, 2.0, 0.7, 0.0, 0.1};
    p.g1 = 1e4;
    EXPECT_NEAR(renormalized_critical_g2(p) / p.g1, std::sqrt(p.omega_b / p.omega_a), 1e-4);
}

TEST(Model, AlphaBeta) {
    auto ab = alpha_beta(unit(0.5, 0.5));
    EXPECT_DOUBLE_EQ(ab.alpha, 1.0);
    EXPECT_DOUBLE_EQ(ab.beta, 1.0);
    ab = alpha_beta(unit(1.0, 0.5));
    EXPECT_DOUBLE_EQ(ab.alpha, 4.0);
    EXPECT_DOUBLE_EQ(ab.beta, 1.0);
    ab = alpha_beta({1.0, 1.0, 2.0, 1.0, 1.0, 1.0});
    EXPECT_DOUBLE_EQ(ab.alpha, 2.0);
    EXPECT_DOUBLE_EQ(ab.beta, 4.0);
    EXPECT_THROW(alpha_beta(unit(0.0, 1.0)), ParameterError);
}

TEST(Model, AlphaBetaRoutesAgreeAndBalancedLine) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    for (int k = 0; k < 1000; ++k) {
        EXPECT_NO_THROW(alpha_beta(random_params(rng)));
        const double w = u(rng), wf = u(rng), g = u(rng);
        const ModelParams line{w, w, wf, wf, g, g};
        const auto ab = alpha_beta(line);
        EXPECT_EQ(ab.alpha, ab.beta);
        EXPECT_TRUE(is_balanced(line));
    }
    EXPECT_FALSE(is_balanced({1.0, 1.7, 1.0, 1.0, 1.0, 1.0}));
    EXPECT_FALSE(is_balanced(unit(1.0, 1.0 + 1e-6)));
}

TEST(Model, PhaseLabelRoundTrip) {
    for (auto p : {PhaseLabel::Normal, PhaseLabel::LeftSR, PhaseLabel::RightSR, PhaseLabel::LeftRightSR})
        EXPECT_EQ(phase_from_string(to_string(p)), p);
    EXPECT_THROW(phase_from_string("Mixed"), ParameterError);
}
