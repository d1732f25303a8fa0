#include <gtest/gtest.h>

#include "pappa/diagram_dsl.hpp"
#include "pappa/evaluator.hpp"
#include "pappa/normalize.hpp"
#include "random_diagrams.hpp"

using namespace pappa;

namespace {

Diagram P(const std::string& s) { return parse_diagram(s); }

}  // namespace

TEST(Normalize, NeutralLoopBecomesQuantumDimension) {
    for (int d : {2, 3, 4}) {
        Diagram N = normalize(P("diagram d=" + std::to_string(d) + " in=0 out=0\ncap@0\ncup@0\n"));
        EXPECT_TRUE(N.layers.empty());
        EXPECT_FALSE(N.is_zero());
        EXPECT_NEAR(std::abs(N.scalar.value(make_phase_ring(d)) - std::sqrt(double(d))), 0.0, 1e-12);
    }
}

TEST(Normalize, ChargedLoopIsZero) {
    for (int d : {2, 3, 5})
        for (int k = 1; k < d; ++k) {
            Diagram N = normalize(P("diagram d=" + std::to_string(d) + " in=0 out=0\ncap@0\nchg@0:" + std::to_string(k) + "\ncup@0\n"));
            EXPECT_TRUE(N.is_zero());
            EXPECT_TRUE(N.layers.empty());
        }
    Diagram N = normalize(P("diagram d=3 in=0 out=0\ncap@0\nchg@0:1:0 chg@1:2:1\ncup@0\n"));
    EXPECT_FALSE(N.is_zero());
}

TEST(Normalize, ChargeOverCapMovesToTheRight) {
    for (int d : {2, 3, 4, 5}) {
        auto r = make_phase_ring(d);
        for (int k = 1; k < d; ++k) {
            Diagram N = normalize(compose(cap_diagram(d), strand_pair_with_left_charge(d, k)));
            Diagram expect = cap_diagram(d, k);
            EXPECT_EQ(N.layers, expect.layers);
            EXPECT_NEAR(std::abs(N.scalar.value(r) - r.zeta_pow(long(k) * k)), 0.0, 1e-12);
        }
    }
}

TEST(Normalize, AddChargeMergesAndReduces) {
    Diagram N = normalize(P("diagram d=3 in=2 out=2\nchg@1:2\nchg@1:2\n"));
    ASSERT_EQ(N.layers.size(), 1u);
    EXPECT_EQ(N.layers[0].slices[1].charges, (std::vector<ChargeMark>{{1, 0}}));
    EXPECT_TRUE(normalize(P("diagram d=3 in=2 out=2\nchg@1:3\n")).layers.empty());
}

TEST(Normalize, ZigzagsAndInversePairsDisappear) {
    EXPECT_TRUE(normalize(P("diagram d=3 in=2 out=2\ncap@2\ncup@1\n")).layers.empty());
    EXPECT_TRUE(normalize(P("diagram d=3 in=2 out=2\ncap@0\ncup@1\n")).layers.empty());
    EXPECT_TRUE(normalize(P("diagram d=3 in=4 out=4\nb+@1\nb-@1\n")).layers.empty());
    EXPECT_TRUE(normalize(P("diagram d=3 in=4 out=4\nsym@0:2\nsym@0:1\n")).layers.empty());
}

TEST(Normalize, PreservesEvaluationOnRandomDiagrams) {
    std::mt19937 g(1234);
    for (int d : {2, 3}) {
        auto r = make_phase_ring(d);
        for (int trial = 0; trial < 150; ++trial) {
            int in = 2 * std::uniform_int_distribution<int>(0, 2)(g);
            Diagram D = testing_support::random_diagram(g, d, in, 8);
            Diagram N = normalize(D);
            EXPECT_LT(residual(evaluate(r, N).matrix, evaluate(r, D).matrix), 1e-9) << to_text(D);
            EXPECT_EQ(normalize(N), N) << to_text(D);
        }
    }
}
