#include <gtest/gtest.h>

#include "pappa/diagram_dsl.hpp"
#include "pappa/evaluator.hpp"
#include "pappa/sft.hpp"
#include "random_diagrams.hpp"

using namespace pappa;

TEST(Diagram, ComposeChecksWidths) {
    EXPECT_THROW(compose(cap_diagram(3), cap_diagram(3)), Error);
    Diagram loop = compose(cap_diagram(3), cup_diagram(3));
    EXPECT_EQ(loop.in_points, 0);
    EXPECT_EQ(loop.out_points, 0);
    auto r = make_phase_ring(3);
    EXPECT_LT(residual(evaluate(r, compose(cap_diagram(3, 1), Diagram::identity(3, 2))).matrix,
                       evaluate(r, cap_diagram(3, 1)).matrix),
              1e-12);
}

TEST(Diagram, TensorReindexes) {
    Diagram t = tensor(cap_diagram(3, 1, 5), cap_diagram(3, 2, 4));
    t.validate();
    EXPECT_EQ(t.out_points, 4);
    auto gens = generators_of(t.layers[1]);
    ASSERT_EQ(gens.size(), 2u);
    EXPECT_EQ(gens[0].strand, 1);
    EXPECT_EQ(gens[0].tier, 5);
    EXPECT_EQ(gens[1].strand, 3);
    EXPECT_EQ(gens[1].tier, 4);
    EXPECT_EQ(tensor(Diagram::identity(2, 1), Diagram::identity(2, 1)), Diagram::identity(2, 2));
}

TEST(Diagram, TensorOfCapsIsDecreasingBasis) {
    for (int d : {2, 3}) {
        auto r = make_phase_ring(d);
        for (int k1 = 0; k1 < d; ++k1)
            for (int k2 = 0; k2 < d; ++k2) {
                Diagram t = tensor(cap_diagram(d, k1, 1), cap_diagram(d, k2, 0));
                Mat e = Mat::Zero(d * d, 1);
                e(k1 * d + k2, 0) = std::sqrt(double(d));
                EXPECT_LT(residual(evaluate(r, t).matrix, e), 1e-10);
            }
    }
}

TEST(Diagram, AdjointReflects) {
    Diagram a = adjoint(cap_diagram(3, 2));
    EXPECT_EQ(a, cup_diagram(3, -2));
    EXPECT_EQ(adjoint(braid_diagram(3, true)), braid_diagram(3, false));
}

TEST(Diagram, FuzzKeepsWellFormed) {
    std::mt19937 g(99);
    for (int trial = 0; trial < 200; ++trial) {
        Diagram A = testing_support::random_diagram(g, 3, 2, 6);
        Diagram B = testing_support::random_diagram(g, 3, A.out_points, 6);
        EXPECT_NO_THROW(compose(A, B).validate());
        EXPECT_NO_THROW(tensor(A, B).validate());
        EXPECT_NO_THROW(adjoint(A).validate());
        EXPECT_EQ(adjoint(adjoint(A)), A);
    }
}

TEST(Diagram, LayerGeneratorRoundTrip) {
    Layer L = layer_from_generators(4, {Generator::at(GenKind::cap, 2), Generator::charge_at(0, 2, 1),
                                        Generator::at(GenKind::braid_neg, 2)});
    EXPECT_EQ(L.top_width(), 4);
    EXPECT_EQ(L.bottom_width(), 6);
    EXPECT_EQ(layer_from_generators(4, generators_of(L)), L);
    EXPECT_THROW(layer_from_generators(2, {Generator::at(GenKind::braid_pos, 1)}), Error);
    EXPECT_THROW(layer_from_generators(4, {Generator::at(GenKind::braid_pos, 0), Generator::at(GenKind::cup, 1)}), Error);
}

TEST(SftRotate, StateRotationIsTheSftGate) {
    for (int d : {2, 3})
        for (int n : {1, 2, 3}) {
            auto r = make_phase_ring(d);
            Mat S = sft_gate(r, n).matrix;
            for (std::size_t i = 0; i < std::size_t(std::pow(d, n)); ++i) {
                Diagram B = basis_diagram(d, digits_of(i, d, n));
                EXPECT_LT(residual(evaluate(r, sft_rotate(B)).matrix, S * evaluate(r, B).matrix), 1e-9) << d << n << i;
            }
        }
}

TEST(SftRotate, RandomStateDiagrams) {
    std::mt19937 g(7);
    for (int trial = 0; trial < 60; ++trial) {
        auto r = make_phase_ring(3);
        Diagram D = testing_support::random_diagram(g, 3, 0, 6, 4, false);
        if (D.out_points == 0) continue;
        Mat S = sft_gate(r, D.out_points / 2).matrix;
        EXPECT_LT(residual(evaluate(r, sft_rotate(D)).matrix, S * evaluate(r, D).matrix), 1e-9) << to_text(D);
    }
}

TEST(SftRotate, CapProductBecomesMax) {
    for (int d : {2, 3, 5})
        for (int n : {2, 3}) {
            auto r = make_phase_ring(d);
            Diagram caps = basis_diagram(d, std::vector<int>(n, 0));
            Mat v = evaluate(r, sft_rotate(caps)).matrix;
            const std::size_t dim = std::size_t(std::pow(d, n));
            for (std::size_t i = 0; i < dim; ++i) {
                double expect = mod(total_charge(digits_of(i, d, n)), d) == 0 ? std::pow(d, -(n - 1) / 2.0) : 0.0;
                EXPECT_NEAR(std::abs(v(i, 0) - expect), 0.0, 1e-10);
            }
        }
}

TEST(SftRotate, FullTurnGivesChargePhase) {
    for (int d : {2, 3})
        for (int n : {1, 2}) {
            auto r = make_phase_ring(d);
            for (std::size_t i = 0; i < std::size_t(std::pow(d, n)); ++i) {
                auto k = digits_of(i, d, n);
                Diagram D = basis_diagram(d, k);
                for (int t = 0; t < 2 * n; ++t) D = sft_rotate(D);
                long K = total_charge(k);
                EXPECT_LT(residual(evaluate(r, D).matrix, r.q_pow(K * K) * evaluate(r, basis_diagram(d, k)).matrix), 1e-9);
            }
        }
}

TEST(SftRotate, RejectsEmptyOutput) {
    EXPECT_THROW(sft_rotate(Diagram::identity(3, 0)), Error);
    EXPECT_THROW(sft_rotate(cup_diagram(3)), Error);
}

TEST(SftDiagram, MatchesGate) {
    for (int d : {2, 3, 5}) {
        auto r = make_phase_ring(d);
        for (int n : {1, 2}) EXPECT_LT(residual(evaluate(r, sft_diagram(r, n)).matrix, sft_gate(r, n).matrix), 1e-9);
    }
}

TEST(Dsl, ParsesAndRoundTrips) {
    Diagram D = parse_diagram(
        "# twisted pair on a cap\n"
        "diagram d=3 in=0 out=4\n"
        "cap@0 cap@0\n"
        "chg@1:1:0 chg@3:2:0   # same tier\n"
        "b+@1\n"
        "box F@2:2\n");
    EXPECT_EQ(D.out_points, 4);
    EXPECT_EQ(D.layers.size(), 4u);
    EXPECT_EQ(parse_diagram(to_text(D)), D);
}

TEST(Dsl, ReportsLineNumbers) {
    try {
        parse_diagram("diagram d=3 in=0 out=2\ncap@0\nfoo@1\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3);
    }
    EXPECT_THROW(parse_diagram("diagram d=3 in=0 out=4\ncap@0\n"), ParseError);
    EXPECT_THROW(parse_diagram("cap@0\n"), ParseError);
    EXPECT_THROW(parse_diagram("diagram d=3 in=2 out=2\nb+@1\n"), ParseError);
    EXPECT_THROW(parse_diagram("diagram d=1 in=0 out=0\n"), ParseError);
}
