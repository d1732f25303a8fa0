#include <gtest/gtest.h>

#include "pappa/gates.hpp"
#include "pappa/state.hpp"

using namespace pappa;

namespace {

Mat from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    Mat m(rows.size(), rows.begin()->size());
    int i = 0;
    for (auto& row : rows) {
        int j = 0;
        for (auto v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

}  // namespace

TEST(Pauli, QubitCaseIsSigma) {
    auto r = make_phase_ring(2);
    const cplx I(0, 1);
    EXPECT_LT(residual(pauli_gate(r, Pauli::X), from_rows({{0, 1}, {1, 0}})), 1e-12);
    EXPECT_LT(residual(pauli_gate(r, Pauli::Y), from_rows({{0, -I}, {I, 0}})), 1e-12);
    EXPECT_LT(residual(pauli_gate(r, Pauli::Z), from_rows({{1, 0}, {0, -1}})), 1e-12);
}

TEST(Pauli, QutritZ) {
    auto r = make_phase_ring(3);
    Mat z = Mat::Zero(3, 3);
    z(0, 0) = 1.0;
    z(1, 1) = std::polar(1.0, 2 * std::numbers::pi / 3);
    z(2, 2) = std::polar(1.0, 4 * std::numbers::pi / 3);
    EXPECT_LT(residual(pauli_gate(r, Pauli::Z), z), 1e-12);
}

TEST(Pauli, CommutationRelations) {
    for (int d = 2; d <= 7; ++d) {
        auto r = make_phase_ring(d);
        Mat X = pauli_gate(r, Pauli::X), Y = pauli_gate(r, Pauli::Y), Z = pauli_gate(r, Pauli::Z);
        EXPECT_LT(residual(X * Y, r.q * Y * X), 1e-10) << d;
        EXPECT_LT(residual(Y * Z, r.q * Z * Y), 1e-10) << d;
        EXPECT_LT(residual(Z * X, r.q * X * Z), 1e-10) << d;
        EXPECT_LT(residual(X * Y * Z, r.zeta * Mat::Identity(d, d)), 1e-10) << d;
        EXPECT_LT(residual(mat_pow(Y, d), Mat::Identity(d, d)), 1e-10) << d;
    }
}

TEST(Clifford1, QubitFourierIsHadamardAndGIsPhase) {
    auto r = make_phase_ring(2);
    const double h = 1 / std::sqrt(2.0);
    EXPECT_LT(residual(fourier_gate(r), from_rows({{h, h}, {h, -h}})), 1e-12);
    EXPECT_LT(residual(gaussian_gate(r), from_rows({{1, 0}, {0, cplx(0, 1)}})), 1e-12);
}

TEST(Clifford1, ConjugationRules) {
    for (int d = 2; d <= 7; ++d) {
        auto r = make_phase_ring(d);
        Mat X = pauli_gate(r, Pauli::X), Y = pauli_gate(r, Pauli::Y), Z = pauli_gate(r, Pauli::Z);
        Mat F = fourier_gate(r), G = gaussian_gate(r);
        EXPECT_LT(residual(F * X * F.adjoint(), Z), 1e-9) << d;
        EXPECT_LT(residual(G * X * G.adjoint(), Y.adjoint()), 1e-9) << d;
        EXPECT_LT(unitarity_residual(F), 1e-10);
        EXPECT_LT(unitarity_residual(G), 1e-10);
        EXPECT_LT(unitarity_residual(Y), 1e-10);
    }
}

TEST(Controlled, QubitCNOT) {
    auto r = make_phase_ring(2);
    Mat cnot = from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
    EXPECT_LT(residual(controlled_gate(r, 2, 0, 1, pauli_gate(r, Pauli::X)), cnot), 1e-12);
}

TEST(Controlled, CZIsSymmetricAndDiagonal) {
    for (int d : {2, 3, 5}) {
        auto r = make_phase_ring(d);
        Mat Z = pauli_gate(r, Pauli::Z);
        Mat a = controlled_gate(r, 2, 0, 1, Z), b = controlled_gate(r, 2, 1, 0, Z);
        EXPECT_LT(residual(a, b), 1e-12);
        EXPECT_LT(residual(a, cz_gate(r)), 1e-12);
        for (int k1 = 0; k1 < d; ++k1)
            for (int k2 = 0; k2 < d; ++k2)
                EXPECT_NEAR(std::abs(a(k1 * d + k2, k1 * d + k2) - std::pow(r.q, k1 * k2)), 0.0, 1e-10);
    }
}

TEST(Controlled, SecondControlsFlavour) {
    auto r = make_phase_ring(3);
    Mat X = pauli_gate(r, Pauli::X);
    Mat c = controlled_gate(r, 2, 1, 0, X, ControlFlavor::second_controls);
    // C_{X,1}|k1,k2> = |k1 + k2, k2>
    for (int k1 = 0; k1 < 3; ++k1)
        for (int k2 = 0; k2 < 3; ++k2) EXPECT_NEAR(std::abs(c(((k1 + k2) % 3) * 3 + k2, k1 * 3 + k2)), 1.0, 1e-12);
}

TEST(Controlled, ZeroControlIsIdentityOnTarget) {
    auto r = make_phase_ring(3);
    Mat c = controlled_gate(r, 2, 0, 1, fourier_gate(r));
    for (int t = 0; t < 3; ++t) {
        auto s = QState::basis(3, {0, t});
        EXPECT_LT((c * s.amp - s.amp).norm(), 1e-12);
    }
    EXPECT_THROW(controlled_gate(r, 2, 1, 1, fourier_gate(r)), DimensionError);
}

TEST(Sym, SwapAndSquare) {
    for (int d : {2, 3}) {
        auto r = make_phase_ring(d);
        Mat b0 = sym_gate(r, 2, 0, 0);
        for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l) EXPECT_NEAR(std::abs(b0(l * d + k, k * d + l)), 1.0, 1e-12);
        EXPECT_LT(residual(b0 * b0, Mat::Identity(d * d, d * d)), 1e-12);
        for (int m = 0; m < d; ++m) EXPECT_LT(unitarity_residual(sym_gate(r, 3, 2, m)), 1e-10);
    }
    EXPECT_THROW(sym_gate(make_phase_ring(2), 2, 1, 0), DimensionError);
}

TEST(Measure, BasisStateIsCertain) {
    auto s = QState::basis(3, {2, 0, 1});
    for (int site = 0; site < 3; ++site) {
        auto m = measure(s, site, std::uint64_t(11));
        EXPECT_EQ(m.outcome, std::vector<int>({2, 0, 1})[site]);
        EXPECT_NEAR(m.probability, 1.0, 1e-12);
    }
}

TEST(Measure, SeedDeterminism) {
    QState s{3, 1, Vec::Constant(3, 1 / std::sqrt(3.0))};
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        EXPECT_EQ(measure(s, 0, seed).outcome, measure(s, 0, seed).outcome);
}
