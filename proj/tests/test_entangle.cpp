#include <gtest/gtest.h>

#include "pappa/entangle.hpp"

using namespace pappa;

namespace {
std::vector<std::vector<int>> all_charges(int d, int n) {
    std::vector<std::vector<int>> out;
    for (std::size_t i = 0; i < ipow(d, n); ++i) out.push_back(digits_of(i, d, n));
    return out;
}
}  // namespace

TEST(Max, TwoQuditForm) {
    for (int d : {2, 3, 5}) {
        auto r = make_phase_ring(d);
        QState m = max_state(r, 2);
        for (int l = 0; l < d; ++l)
            EXPECT_NEAR(std::abs(m.amp(index_of({l, int(mod(-l, d))}, d)) - 1.0 / std::sqrt(d)), 0.0, 1e-12);
        EXPECT_NEAR(m.norm(), 1.0, 1e-12);
    }
    QState bell = max_state(make_phase_ring(2), 2);
    EXPECT_NEAR(bell.amp(0).real(), M_SQRT1_2, 1e-12);
    EXPECT_NEAR(bell.amp(3).real(), M_SQRT1_2, 1e-12);
}

TEST(Max, ThreeQutritsHaveNineTerms) {
    QState m = max_state(make_phase_ring(3), 3);
    int terms = 0;
    for (Eigen::Index i = 0; i < m.amp.size(); ++i)
        if (std::abs(m.amp(i)) > 1e-12) {
            ++terms;
            EXPECT_NEAR(m.amp(i).real(), 1.0 / 3.0, 1e-12);
        }
    EXPECT_EQ(terms, 9);
}

TEST(Max, EqualsSftOnZero) {
    for (int d : {2, 3, 5})
        for (int n : {1, 2, 3}) {
            auto r = make_phase_ring(d);
            EXPECT_LT(residual(apply(QState::zeros(d, n), sft_gate(r, n)).amp, max_state(r, n).amp), 1e-9);
        }
}

TEST(Ghz, SmallCases) {
    auto r = make_phase_ring(2);
    EXPECT_LT(residual(ghz_state(r, 2).amp, max_state(r, 2).amp), 1e-12);
    QState g = ghz_state(r, 3);
    EXPECT_NEAR(g.amp(0).real(), M_SQRT1_2, 1e-12);
    EXPECT_NEAR(g.amp(7).real(), M_SQRT1_2, 1e-12);
}

TEST(Ghz, FourierDualOfMax) {
    for (int d : {2, 3, 5})
        for (int n : {2, 3}) {
            auto r = make_phase_ring(d);
            for (int p : {1, -1})
                EXPECT_LT(residual(fourier_all(r, n, p) * max_state(r, n).amp, ghz_state(r, n).amp), 1e-9) << d << n << p;
        }
}

TEST(MaxBasis, MatchesSftColumns) {
    for (int d : {2, 3, 5})
        for (int n : {1, 2, 3}) {
            auto r = make_phase_ring(d);
            Mat S = sft_gate(r, n).matrix;
            for (auto& k : all_charges(d, n)) {
                EXPECT_LT(residual(max_basis(r, k).amp, S.col(index_of(k, d))), 1e-9) << d << n;
                EXPECT_LT(residual(ghz_basis(r, k).amp, fourier_all(r, n, -1) * max_basis(r, k).amp), 1e-9) << d << n;
            }
        }
}

TEST(MaxBasis, GeneralizedBellStates) {
    auto r = make_phase_ring(3);
    for (int k = 0; k < 3; ++k) {
        QState s = max_basis(r, {k, int(mod(-k, 3))});
        for (int l = 0; l < 3; ++l)
            EXPECT_NEAR(std::abs(s.amp(index_of({l, int(mod(-l, 3))}, 3)) - r.q_pow(k * l) / std::sqrt(3.0)), 0.0,
                        1e-9);
    }
    QState s = max_basis(r, {1, 0});
    const cplx c = r.zeta_pow(-1) / std::sqrt(3.0);
    for (int l1 = 0; l1 < 3; ++l1) {
        int l2 = int(mod(1 - l1, 3));
        EXPECT_NEAR(std::abs(s.amp(index_of({l1, l2}, 3)) - c * r.q_pow(l1 + l2)), 0.0, 1e-9);
    }
    EXPECT_THROW(max_basis(r, {3, 0}), DimensionError);
}

TEST(MaxBasis, Orthonormal) {
    for (int d : {2, 3}) {
        auto r = make_phase_ring(d);
        auto ks = all_charges(d, 2);
        for (auto& a : ks)
            for (auto& b : ks)
                EXPECT_NEAR(std::abs(max_basis(r, a).amp.dot(max_basis(r, b).amp)), a == b ? 1.0 : 0.0, 1e-9);
    }
}

TEST(PartialTrace, Basics) {
    auto r = make_phase_ring(3);
    DensityMatrix prod = DensityMatrix::of(QState::basis(3, {1, 2, 0}));
    DensityMatrix red = partial_trace(prod, {1});
    EXPECT_NEAR(red.matrix(2, 2).real(), 1.0, 1e-12);
    EXPECT_NEAR(entropy(red), 0.0, 1e-12);
    DensityMatrix m = partial_trace(DensityMatrix::of(max_state(r, 2)), {0});
    EXPECT_LT(residual(m.matrix, Mat::Identity(3, 3) / 3.0), 1e-12);
    EXPECT_NEAR(entropy(m), std::log(3.0), 1e-12);
    DensityMatrix two = partial_trace(DensityMatrix::of(ghz_state(r, 3)), {2, 0});
    EXPECT_NEAR(std::abs(two.matrix.trace() - cplx(1.0)), 0.0, 1e-12);
    EXPECT_TRUE(two.valid());
    EXPECT_THROW(partial_trace(prod, {}), DimensionError);
    EXPECT_THROW(partial_trace(prod, {3}), DimensionError);
}

TEST(PartialTrace, KeepsOrderOfSites) {
    DensityMatrix prod = DensityMatrix::of(QState::basis(3, {1, 2, 0}));
    DensityMatrix red = partial_trace(prod, {2, 0});
    EXPECT_NEAR(red.matrix(index_of({1, 0}, 3), index_of({1, 0}, 3)).real(), 1.0, 1e-12);
}

TEST(Entropy, MaximalForNeutralProducts) {
    for (int d : {2, 3, 5})
        for (int n : {2, 3}) {
            auto r = make_phase_ring(d);
            Mat S = sft_gate(r, n).matrix;
            for (auto& k : all_charges(d, n)) {
                if (mod(total_charge(k), d) != 0) continue;
                QState s{d, n, S.col(index_of(k, d))};
                for (int j = 0; j < n; ++j) EXPECT_NEAR(cut_entropy(s, {j}), std::log(double(d)), 1e-8);
            }
        }
}

TEST(Entropy, MixedIsLogD) {
    for (int d : {2, 4, 7}) EXPECT_NEAR(entropy({d, 1, Mat::Identity(d, d) / double(d)}), std::log(double(d)), 1e-12);
}
