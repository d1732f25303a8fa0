#include <gtest/gtest.h>

#include "pappa/numerics.hpp"

using namespace pappa;

TEST(PhaseRing, QubitConstants) {
    auto r = make_phase_ring(2);
    EXPECT_NEAR(std::abs(r.zeta - cplx(0, 1)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(r.omega - std::polar(1.0, std::numbers::pi / 4)), 0.0, 1e-12);
}

TEST(PhaseRing, QutritConstants) {
    auto r = make_phase_ring(3);
    EXPECT_NEAR(std::abs(r.zeta - r.q * r.q), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(r.omega - cplx(0, -1)), 0.0, 1e-12);
}

TEST(PhaseRing, QuintConstants) {
    // quadratic Gauss sum with a non-residue coefficient: omega = -1, principal root i
    auto r = make_phase_ring(5);
    EXPECT_NEAR(std::abs(r.omega - cplx(-1, 0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(r.omega_sqrt - cplx(0, 1)), 0.0, 1e-12);
}

TEST(PhaseRing, InvariantsHoldForSmallDegrees) {
    for (int d = 2; d <= 8; ++d) {
        auto r = make_phase_ring(d);
        EXPECT_NEAR(std::abs(r.zeta * r.zeta - r.q), 0.0, 1e-12) << d;
        EXPECT_NEAR(std::abs(std::pow(r.zeta, d * d) - 1.0), 0.0, 1e-10) << d;
        EXPECT_NEAR(std::abs(r.omega), 1.0, 1e-12) << d;
        EXPECT_NEAR(std::abs(r.omega_sqrt * r.omega_sqrt - r.omega), 0.0, 1e-12) << d;
        EXPECT_GT(std::arg(r.omega_sqrt), -std::numbers::pi / 2 - 1e-12);
        EXPECT_LE(std::arg(r.omega_sqrt), std::numbers::pi / 2 + 1e-12);
    }
}

TEST(PhaseRing, RejectsSmallDegree) {
    EXPECT_THROW(make_phase_ring(1), Error);
    EXPECT_THROW(make_phase_ring(0), Error);
}

TEST(GaussSum, ResidualVanishes) {
    for (int d = 2; d <= 8; ++d) {
        auto r = make_phase_ring(d);
        for (int l = 0; l < d; ++l) EXPECT_LT(gauss_identity_residual(r, l), 1e-9) << d << " " << l;
    }
}

TEST(PhasePow, ReducesExponents) {
    EXPECT_NEAR(std::abs(phase_pow(make_phase_ring(2), Base::zeta, 2) - cplx(-1, 0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(phase_pow(make_phase_ring(3), Base::q, 3) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(phase_pow(make_phase_ring(4), Base::epsilon, 8) - 1.0), 0.0, 1e-12);
    auto r = make_phase_ring(5);
    EXPECT_NEAR(std::abs(phase_pow(r, Base::q, -7) - std::pow(r.q, -7)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(phase_pow(r, Base::omega, 3) - std::pow(r.omega, 3)), 0.0, 1e-12);
}
