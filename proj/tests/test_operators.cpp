#include <cmath>
#include <memory>
#include <numbers>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qwalk/error.hpp"
#include "qwalk/operators.hpp"

using namespace qwalk;

TEST(Coin, FourierSmallOrders) {
    EXPECT_NEAR(std::abs(fourier_coin(1)(0, 0) - Complex(1.0)), 0.0, 1e-15);
    const ComplexMatrix f2 = fourier_coin(2);
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(f2(0, 0) - h), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(f2(1, 1) + h), 0.0, 1e-15);
    const ComplexMatrix f4 = fourier_coin(4);
    EXPECT_NEAR(std::abs(f4(1, 1) - Complex(0.0, 0.5)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(f4(1, 2) - Complex(-0.5, 0.0)), 0.0, 1e-15);
    EXPECT_LT((fourier_coin(7) - oracle::fourier(7)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Coin, GroverSmallOrders) {
    EXPECT_NEAR(std::abs(grover_coin(1)(0, 0) - Complex(1.0)), 0.0, 1e-15);
    const ComplexMatrix g2 = grover_coin(2);
    EXPECT_NEAR(std::abs(g2(0, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(g2(0, 1) - Complex(1.0)), 0.0, 1e-15);
    const ComplexMatrix g4 = grover_coin(4);
    EXPECT_NEAR(g4(0, 0).real(), -0.5, 1e-15);
    EXPECT_NEAR(g4(0, 1).real(), 0.5, 1e-15);
}

TEST(Coin, BlocksAreUnitary) {
    for (int k = 1; k <= 16; ++k) {
        for (const ComplexMatrix& b : {fourier_coin(k), grover_coin(k)}) {
            const ComplexMatrix p = b.adjoint() * b;
            EXPECT_LT((p - ComplexMatrix::Identity(k, k)).cwiseAbs().maxCoeff(), 1e-12) << "k=" << k;
            EXPECT_LT(unitarity_defect(b), 1e-12);
        }
    }
}

TEST(Coin, FourierEigenvaluesOnUnitCircle) {
    Eigen::ComplexEigenSolver<ComplexMatrix> es(fourier_coin(9));
    for (auto ev : es.eigenvalues()) EXPECT_NEAR(std::abs(ev), 1.0, 1e-12);
}

TEST(Coin, InvalidOrder) {
    EXPECT_THROW(fourier_coin(0), ArgumentError);
    EXPECT_THROW(grover_coin(0), ArgumentError);
}

TEST(Coin, SpecParsing) {
    EXPECT_EQ(CoinSpec::parse("fourier"), CoinSpec::fourier());
    EXPECT_EQ(CoinSpec::parse("grover"), CoinSpec::grover());
    EXPECT_NEAR(CoinSpec::parse("fourier:3.5").theta, 3.5, 1e-15);
    EXPECT_THROW(CoinSpec::parse("hadamard"), ArgumentError);
    EXPECT_EQ(CoinSpec::parse(CoinSpec::grover().name()), CoinSpec::grover());
}

TEST(WalkOperator, RingOfThreeBlocks) {
    auto g = std::make_shared<const Graph>(build_ring(3));
    const auto op = assemble_walk_operator(g, CoinSpec::fourier());
    EXPECT_EQ(op.dimension(), 6u);
    for (VertexId v = 0; v < 3; ++v)
        EXPECT_LT((op.block(v) - oracle::fourier(2)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(WalkOperator, NonDftAngleIsRejected) {
    auto g = std::make_shared<const Graph>(build_ring(5));
    EXPECT_THROW(assemble_walk_operator(g, CoinSpec::fourier(1.0)), NonUnitary);
}

TEST(WalkOperator, DenseGuard) {
    auto g = std::make_shared<const Graph>(build_ring(40));
    const auto op = assemble_walk_operator(g, CoinSpec::fourier());
    EXPECT_THROW(dense_unitary(op, 64), SizeGuard);
    EXPECT_NO_THROW(dense_unitary(op, 80));
}

TEST(WalkOperator, DenseMatchesOracle) {
    ScaleFreeParams p;
    p.n = 14;
    p.seed = 2;
    for (auto g : {std::make_shared<const Graph>(build_ring(7)), std::make_shared<const Graph>(build_scale_free(p))}) {
        for (bool grover : {false, true}) {
            const auto op = assemble_walk_operator(g, grover ? CoinSpec::grover() : CoinSpec::fourier());
            const ComplexMatrix u = dense_unitary(op);
            EXPECT_LT((u - oracle::walk(*g, grover)).cwiseAbs().maxCoeff(), 1e-13);
            EXPECT_LT(unitarity_defect(u), 1e-12);
        }
    }
}

TEST(WalkOperator, ShiftIsArcReversal) {
    const Graph g = build_ring(6);
    const ComplexMatrix s = dense_shift(g);
    EXPECT_LT((s * s - ComplexMatrix::Identity(12, 12)).cwiseAbs().maxCoeff(), 1e-15);
}

// The printed 6x6 shift for the 3-ring moves the walker (swap of the two local
// arcs followed by reversal) rather than only reversing arcs.
TEST(WalkOperator, PrintedMovingShiftRelation) {
    const Graph g = build_ring(3);
    const int printed_col[6] = {4, 3, 0, 5, 2, 1};
    ComplexMatrix printed = ComplexMatrix::Zero(6, 6);
    for (int r = 0; r < 6; ++r) printed(r, printed_col[r]) = 1.0;
    ComplexMatrix local_swap = ComplexMatrix::Zero(6, 6);
    for (int v = 0; v < 3; ++v) {
        local_swap(2 * v, 2 * v + 1) = 1.0;
        local_swap(2 * v + 1, 2 * v) = 1.0;
    }
    EXPECT_LT((printed - dense_shift(g) * local_swap).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_GT((printed * printed - ComplexMatrix::Identity(6, 6)).cwiseAbs().maxCoeff(), 0.5);
}
