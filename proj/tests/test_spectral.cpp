#include <cmath>
#include <memory>
#include <numbers>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qwalk/error.hpp"
#include "qwalk/spectral.hpp"

using namespace qwalk;

namespace {

SpectralData spectrum(const std::shared_ptr<const Graph>& g, const CoinSpec& coin) {
    return eigendecompose(dense_unitary(assemble_walk_operator(g, coin)));
}

std::shared_ptr<const Graph> small_sf(std::size_t n, Seed seed) {
    ScaleFreeParams p;
    p.n = n;
    p.seed = seed;
    return std::make_shared<const Graph>(build_scale_free(p));
}

}  // namespace

TEST(Spectral, RingOfThreeClasses) {
    auto g = std::make_shared<const Graph>(build_ring(3));
    const auto sd = spectrum(g, CoinSpec::fourier());
    EXPECT_EQ(sd.order(), 6u);
    EXPECT_EQ(sd.classes.size(), 4u);
    EXPECT_FALSE(sd.non_degenerate());
    for (std::size_t r = 0; r < sd.order(); ++r) {
        const auto v = sd.eigenvectors.col(long(r));
        const oracle::Mat u = oracle::walk(*g, false);
        EXPECT_LT((u * v - std::polar(1.0, sd.eigenphases[r]) * v).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(Spectral, IdentityIsOneClass) {
    const auto sd = eigendecompose(ComplexMatrix::Identity(5, 5));
    EXPECT_EQ(sd.classes.size(), 1u);
    EXPECT_LT((sd.projector(0) - ComplexMatrix::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Spectral, TwoPhaseClasses) {
    ComplexMatrix d = ComplexMatrix::Zero(4, 4);
    d(0, 0) = 1.0;
    d(1, 1) = -1.0;
    d(2, 2) = 1.0;
    d(3, 3) = -1.0;
    const auto sd = eigendecompose(d);
    ASSERT_EQ(sd.classes.size(), 2u);
    EXPECT_NEAR(sd.eigenphases.front(), 0.0, 1e-12);
    EXPECT_NEAR(sd.eigenphases.back(), std::numbers::pi, 1e-12);
    EXPECT_EQ(offdiagonal_signal(sd, 0), std::complex<double>(12.0, 0.0));
    const auto h = eigenphase_spacing_density(sd, 8);
    // Same-phase pairs at 0, opposite-phase pairs at pi.
    EXPECT_EQ(h.counts[0], 4.0);
    EXPECT_EQ(h.counts[4], 8.0);
}

TEST(Spectral, GroverHasDegeneratePhases) {
    auto g = small_sf(20, 1);
    const auto sd = spectrum(g, CoinSpec::grover());
    EXPECT_LT(sd.classes.size(), sd.order());
    std::size_t at_zero = 0, at_pi = 0;
    for (const auto& cls : sd.classes) {
        const double th = sd.eigenphases[cls.front()];
        if (circular_distance(th, 0.0) < 1e-8) at_zero = cls.size();
        if (circular_distance(th, std::numbers::pi) < 1e-8) at_pi = cls.size();
    }
    EXPECT_GE(at_zero + at_pi, 2u);
}

TEST(Spectral, ProjectorAlgebra) {
    auto g = std::make_shared<const Graph>(build_ring(5));
    const auto sd = spectrum(g, CoinSpec::fourier());
    const long m = long(sd.order());
    ComplexMatrix sum = ComplexMatrix::Zero(m, m);
    ComplexMatrix recon = ComplexMatrix::Zero(m, m);
    for (std::size_t c = 0; c < sd.classes.size(); ++c) {
        const ComplexMatrix f = sd.projector(c);
        EXPECT_LT((f * f - f).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_LT((f.adjoint() - f).cwiseAbs().maxCoeff(), 1e-10);
        for (std::size_t d = c + 1; d < sd.classes.size(); ++d)
            EXPECT_LT((f * sd.projector(d)).cwiseAbs().maxCoeff(), 1e-10);
        sum += f;
        recon += std::polar(1.0, sd.eigenphases[sd.classes[c].front()]) * f;
    }
    EXPECT_LT((sum - ComplexMatrix::Identity(m, m)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((recon - oracle::walk(*g, false)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Spectral, LimitingDistribution) {
    auto g = small_sf(20, 1);
    const auto sd = spectrum(g, CoinSpec::fourier());
    const auto lim = limiting_distribution(sd, localized_state(*g, 0), *g);
    double total = 0.0;
    for (double z : lim) total += z;
    EXPECT_NEAR(total, 1.0, 1e-10);
    EXPECT_NEAR(lim[3], idempotent_quadratic_form(sd, localized_state(*g, 0), 3, *g), 1e-14);

    // The uniform arc state is invariant under the Grover walk, so its limit
    // is k / 2E.
    const auto sg = spectrum(g, CoinSpec::grover());
    const auto lu = limiting_distribution(sg, uniform_state(*g), *g);
    for (VertexId v = 0; v < VertexId(g->vertex_count()); ++v)
        EXPECT_NEAR(lu[std::size_t(v)], g->degree(v) / double(g->arc_count()), 1e-10);
}

TEST(Spectral, PredictedMoments) {
    const Graph g = build_ring(10);
    const auto [mean, sigma] = predicted_mean_sigma(g, 2);
    EXPECT_NEAR(mean, 0.1, 1e-15);
    EXPECT_NEAR(sigma * std::sqrt(20.0), std::sqrt(mean), 1e-15);
}

TEST(Spectral, SpacingHistogramMatchesPairCounting) {
    auto g = small_sf(20, 2);
    const auto sd = spectrum(g, CoinSpec::fourier());
    const std::size_t bins = 37;
    const auto h = eigenphase_spacing_density(sd, bins);
    std::vector<double> brute(bins, 0.0);
    const double two_pi = 2.0 * std::numbers::pi;
    const std::size_t m = sd.order();
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = 0; s < m; ++s) {
            if (r == s) continue;
            double w = std::fmod(sd.eigenphases[s] - sd.eigenphases[r], two_pi);
            if (w < 0) w += two_pi;
            std::size_t b = std::size_t(w / two_pi * double(bins));
            if (b >= bins) b = bins - 1;
            brute[b] += 1.0;
        }
    EXPECT_EQ(h.counts, brute);
    double mass = 0.0;
    for (double d : h.density) mass += d * h.width();
    EXPECT_NEAR(mass, 1.0, 1e-12);
}

TEST(Spectral, OffdiagonalSignal) {
    auto g = small_sf(20, 2);
    const auto sd = spectrum(g, CoinSpec::fourier());
    const double m = double(sd.order());
    EXPECT_EQ(offdiagonal_signal(sd, 0), std::complex<double>(m * m - m, 0.0));
    for (long long t = 0; t <= 100; ++t) EXPECT_LE(std::abs(offdiagonal_signal(sd, t).imag()), 1e-9);
    std::complex<double> direct = 0.0;
    for (std::size_t r = 0; r < sd.order(); ++r)
        for (std::size_t q = 0; q < sd.order(); ++q)
            if (r != q) direct += std::polar(1.0, 7.0 * (sd.eigenphases[q] - sd.eigenphases[r]));
    EXPECT_NEAR(std::abs(offdiagonal_signal(sd, 7) - direct), 0.0, 1e-9);
}

TEST(Spectral, SignalApproximationAtZero) {
    auto g = small_sf(20, 2);
    const auto sd = spectrum(g, CoinSpec::fourier());
    const auto cmp = compare_offdiagonal_signal(sd, eigenphase_spacing_density(sd, 64), 0);
    EXPECT_NEAR(cmp.relative_deviation, 0.0, 1e-9);
}

TEST(Spectral, WeightSpreadMean) {
    auto g = small_sf(20, 1);
    const auto sd = spectrum(g, CoinSpec::fourier());
    const auto w = degree_class_weight_spread(sd, *g, 2);
    std::size_t count = 0;
    for (int k : g->degrees()) count += (k == 2);
    EXPECT_NEAR(w.mean, 2.0 * double(count) / double(sd.order()), 1e-10);
    EXPECT_LE(w.min, w.mean);
    EXPECT_GE(w.max, w.mean);
}

TEST(Spectral, RejectsNonUnitary) {
    ComplexMatrix m = ComplexMatrix::Identity(3, 3);
    m(0, 1) = 0.5;
    EXPECT_THROW(eigendecompose(m), ValidationError);
    EXPECT_THROW(eigendecompose(ComplexMatrix::Identity(3, 4)), ValidationError);
}

TEST(Spectral, CircularDistance) {
    EXPECT_NEAR(circular_distance(-std::numbers::pi + 1e-3, std::numbers::pi - 1e-3), 2e-3, 1e-12);
    EXPECT_NEAR(circular_distance(0.0, std::numbers::pi), std::numbers::pi, 1e-15);
}
