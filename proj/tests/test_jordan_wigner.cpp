#include <gtest/gtest.h>

#include "pappa/gates.hpp"
#include "pappa/jordan_wigner.hpp"

using namespace pappa;

TEST(ChargeOp, RightStrandOfFirstQudit) {
    for (int d : {2, 3}) {
        auto r = make_phase_ring(d);
        Mat X = pauli_gate(r, Pauli::X), Z = pauli_gate(r, Pauli::Z);
        EXPECT_LT(residual(charge_op(r, 3, StringSite::of(0, Side::right), 1).matrix, kron_all({X, Z, Z})), 1e-12);
    }
}

TEST(ChargeOp, LeftStrandOfFirstQudit) {
    for (int d : {2, 3, 5}) {
        auto r = make_phase_ring(d);
        Mat Y = pauli_gate(r, Pauli::Y), Z = pauli_gate(r, Pauli::Z);
        Mat expect = kron_all({Y, Z.adjoint(), Z.adjoint()});
        EXPECT_LT(residual(charge_op(r, 3, StringSite::of(0, Side::left), -1).matrix, expect), 1e-12);
        EXPECT_LT(residual(charge_op(r, 3, StringSite::of(0, Side::left), 1).matrix, expect.adjoint()), 1e-12);
    }
}

TEST(ChargeOp, LaterQuditHasIdentityBefore) {
    auto r = make_phase_ring(3);
    Mat X = pauli_gate(r, Pauli::X), Z = pauli_gate(r, Pauli::Z), I = Mat::Identity(3, 3);
    EXPECT_LT(residual(charge_op(r, 3, StringSite::of(1, Side::right), 2).matrix, kron_all({I, X * X, Z * Z})), 1e-12);
    EXPECT_LT(residual(charge_op(r, 2, {3}, 0).matrix, Mat::Identity(9, 9)), 1e-12);
    EXPECT_THROW(charge_op(r, 2, {5}, 1), DimensionError);
}

TEST(Parafermion, Relations) {
    for (auto [d, n] : {std::pair{2, 2}, {3, 2}, {5, 1}, {2, 3}, {3, 3}, {5, 2}}) {
        auto rep = parafermion_relations_check(make_phase_ring(d), n);
        EXPECT_LT(rep.residual, 1e-9) << d << " " << n;
        EXPECT_EQ(rep.checks, 2 * n + n * (2 * n - 1));
    }
}

TEST(Braid, UnitaryAndInverse) {
    for (int d : {2, 3, 4, 5}) {
        auto r = make_phase_ring(d);
        for (int s = 1; s < 4; ++s) {
            Mat bp = braid_op(r, 2, s, BraidSign::positive).matrix;
            Mat bm = braid_op(r, 2, s, BraidSign::negative).matrix;
            EXPECT_LT(unitarity_residual(bp), 1e-10);
            EXPECT_LT(residual(bp * bm, Mat::Identity(d * d, d * d)), 1e-10);
            EXPECT_LT(residual(bp.adjoint(), bm), 1e-10);
        }
    }
}

TEST(Braid, IntraQuditIsGaussian) {
    for (int d : {2, 3, 5}) {
        auto r = make_phase_ring(d);
        Mat G = gaussian_gate(r);
        EXPECT_LT(residual(braid_op(r, 1, 1, BraidSign::negative).matrix, r.omega_half_pow(-1) * G), 1e-10);
        EXPECT_LT(residual(braid_op(r, 1, 1, BraidSign::positive).matrix, r.omega_half_pow(1) * G.adjoint()), 1e-10);
    }
}

TEST(Braid, ReidemeisterIII) {
    for (int d : {2, 3, 4, 5}) {
        auto r = make_phase_ring(d);
        for (auto sign : {BraidSign::positive, BraidSign::negative})
            for (int s = 1; s <= 2; ++s) {
                Mat a = braid_op(r, 2, s, sign).matrix, b = braid_op(r, 2, s + 1, sign).matrix;
                EXPECT_LT(residual(a * b * a, b * a * b), 1e-9) << d << " " << s;
            }
    }
}

TEST(Braid, FarCommutation) {
    auto r = make_phase_ring(3);
    Mat a = braid_op(r, 2, 1, BraidSign::positive).matrix, b = braid_op(r, 2, 3, BraidSign::negative).matrix;
    EXPECT_LT(residual(a * b, b * a), 1e-10);
}

TEST(Braid, TwoStringBraidIsSymFamily) {
    // crossing the pair of qudit 1 over the pair of qudit 2 is the two-qudit symmetry b_{-1} up to phase
    for (int d : {2, 3, 5}) {
        auto r = make_phase_ring(d);
        auto b = [&](int s, BraidSign g) { return braid_op(r, 2, s, g).matrix; };
        Mat pos = b(2, BraidSign::positive) * b(1, BraidSign::positive) * b(3, BraidSign::positive) * b(2, BraidSign::positive);
        Mat neg = b(2, BraidSign::negative) * b(1, BraidSign::negative) * b(3, BraidSign::negative) * b(2, BraidSign::negative);
        EXPECT_LT(residual_up_to_phase(pos, sym_gate(r, 2, 0, -1)), 1e-9) << d;
        EXPECT_LT(residual_up_to_phase(neg, sym_gate(r, 2, 0, 1)), 1e-9) << d;
    }
}
