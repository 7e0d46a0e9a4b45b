#include <algorithm>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "qwalk/error.hpp"
#include "qwalk/graph.hpp"

using namespace qwalk;

namespace {

void expect_invariants(const Graph& g) {
    std::size_t degree_sum = 0;
    for (VertexId v = 0; v < VertexId(g.vertex_count()); ++v) {
        degree_sum += std::size_t(g.degree(v));
        std::set<VertexId> heads;
        for (ArcId a = g.arc_offset(v); a < g.arc_offset(v) + g.degree(v); ++a) {
            EXPECT_EQ(g.arc(a).tail, v);
            EXPECT_NE(g.arc(a).head, v);
            heads.insert(g.arc(a).head);
        }
        EXPECT_EQ(heads.size(), std::size_t(g.degree(v)));
    }
    EXPECT_EQ(degree_sum, g.arc_count());
    for (ArcId a = 0; a < ArcId(g.arc_count()); ++a) {
        const ArcId r = g.reversal(a);
        EXPECT_EQ(g.reversal(r), a);
        EXPECT_EQ(g.arc(r).tail, g.arc(a).head);
        EXPECT_EQ(g.arc(r).head, g.arc(a).tail);
    }
}

}  // namespace

TEST(Graph, RingOfThree) {
    const Graph g = build_ring(3);
    EXPECT_EQ(g.vertex_count(), 3u);
    EXPECT_EQ(g.arc_count(), 6u);
    for (VertexId v = 0; v < 3; ++v) EXPECT_EQ(g.degree(v), 2);
    EXPECT_EQ(g.neighbors(0), (std::vector<VertexId>{2, 1}));
    expect_invariants(g);
}

TEST(Graph, RingRejectsTiny) {
    EXPECT_THROW(build_ring(2), InvalidSize);
}

TEST(Graph, LatticeShapes) {
    const std::size_t s1[] = {729}, s2[] = {27, 27}, s3[] = {9, 9, 9};
    const Graph g1 = build_periodic_lattice(s1);
    const Graph g2 = build_periodic_lattice(s2);
    const Graph g3 = build_periodic_lattice(s3);
    EXPECT_EQ(g1.vertex_count(), 729u);
    EXPECT_EQ(g2.vertex_count(), 729u);
    EXPECT_EQ(g3.vertex_count(), 729u);
    EXPECT_EQ(g1.arc_count(), 2u * 729);
    EXPECT_EQ(g2.arc_count(), 4u * 729);
    EXPECT_EQ(g3.arc_count(), 6u * 729);
    expect_invariants(g2);
    expect_invariants(g3);
    // Row-major, last coordinate fastest; directions (-x0, +x0, -x1, +x1).
    EXPECT_EQ(g2.neighbors(0), (std::vector<VertexId>{26 * 27, 27, 26, 1}));
}

TEST(Graph, LatticeRejectsShortSide) {
    const std::size_t bad[] = {2, 5};
    EXPECT_THROW(build_periodic_lattice(bad), InvalidSize);
}

TEST(Graph, ScaleFreeDegreeLaw) {
    ScaleFreeParams p;
    p.n = 1000;
    p.seed = 1;
    const Graph g = build_scale_free(p);
    EXPECT_EQ(g.vertex_count(), 1000u);
    EXPECT_TRUE(is_connected(g));
    expect_invariants(g);

    const auto hist = degree_histogram(g);
    const auto most = std::max_element(hist.begin(), hist.end(),
                                       [](auto& a, auto& b) { return a.second < b.second; });
    EXPECT_EQ(most->first, 2);
    EXPECT_GE(hist.begin()->first, 2);
    EXPECT_LE(hist.rbegin()->first, 31);

    const double gamma = fit_degree_exponent(g.degrees(), 2, 31);
    EXPECT_GE(gamma, 2.0);
    EXPECT_LE(gamma, 2.6);

    // Hub first.
    for (VertexId v = 1; v < VertexId(g.vertex_count()); ++v) EXPECT_LE(g.degree(v), g.degree(v - 1));
}

TEST(Graph, ScaleFreeDeterministic) {
    ScaleFreeParams p;
    p.n = 300;
    p.seed = 7;
    EXPECT_EQ(build_scale_free(p).fingerprint(), build_scale_free(p).fingerprint());
    ScaleFreeParams q = p;
    q.seed = 8;
    EXPECT_NE(build_scale_free(p).fingerprint(), build_scale_free(q).fingerprint());
}

TEST(Graph, ScaleFreeSmall) {
    ScaleFreeParams p;
    p.n = 50;
    p.seed = 3;
    const Graph g = build_scale_free(p);
    EXPECT_EQ(g.vertex_count(), 50u);
    EXPECT_TRUE(is_connected(g));
    expect_invariants(g);
}

TEST(Graph, ScaleFreeArgumentErrors) {
    ScaleFreeParams p;
    p.n = 5;
    EXPECT_THROW(build_scale_free(p), InvalidSize);
    p.n = 100;
    p.exponent = 1.9;
    EXPECT_THROW(build_scale_free(p), ArgumentError);
    p.exponent = 2.3;
    p.min_degree = 1;
    EXPECT_THROW(build_scale_free(p), ArgumentError);
}

TEST(Graph, EdgeListRoundTrip) {
    ScaleFreeParams p;
    p.n = 120;
    const Graph g = build_scale_free(p);
    std::stringstream s;
    write_edge_list(g, s);
    const Graph h = read_edge_list(s);
    EXPECT_EQ(h.vertex_count(), g.vertex_count());
    EXPECT_EQ(h.edge_list(), g.edge_list());
}

TEST(Graph, EdgeListRejectsBadInput) {
    std::istringstream self_loop("# n=3\n0 1\n1 1\n");
    EXPECT_THROW(read_edge_list(self_loop), InvalidGraph);
    std::istringstream range("# n=3\n0 5\n");
    EXPECT_THROW(read_edge_list(range), InvalidGraph);
    std::istringstream dup("# n=3\n0 1\n1 0\n1 2\n");
    EXPECT_THROW(read_edge_list(dup), InvalidGraph);
    std::istringstream junk("# n=3\n0 x\n");
    EXPECT_THROW(read_edge_list(junk), InvalidGraph);
}

TEST(Graph, BfsOnRing) {
    const Graph g = build_ring(10);
    const auto d = bfs_distances(g, 0);
    EXPECT_EQ(d[5], 5);
    EXPECT_EQ(d[9], 1);
    EXPECT_EQ(d[3], 3);
}

TEST(Graph, DegreeExponentFitRecoversPowerLaw) {
    // Expected counts of an exact truncated power law with exponent 2.5.
    std::vector<int> degrees;
    for (int k = 2; k <= 40; ++k) {
        const int count = int(std::lround(200000.0 * std::pow(k, -2.5)));
        degrees.insert(degrees.end(), std::size_t(count), k);
    }
    EXPECT_NEAR(fit_degree_exponent(degrees, 2, 40), 2.5, 0.01);
}
