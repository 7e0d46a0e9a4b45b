#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "qwalk/rng.hpp"

namespace qwalk {

using VertexId = std::int32_t;
using ArcId = std::int64_t;

struct Arc {
    VertexId tail;
    VertexId head;
};

// Undirected simple graph stored as 2E directed arcs. The outgoing arcs of a
// vertex occupy one contiguous index range; `reversal(a)` is the arc with
// tail and head swapped. Immutable once built.
class Graph {
public:
    // Outgoing arcs of vertex v are created in the order listed in
    // adjacency[v]. Validates every structural invariant.
    static Graph from_adjacency(const std::vector<std::vector<VertexId>>& adjacency);

    // Outgoing arcs sorted by head index.
    static Graph from_edges(std::size_t n, std::span<const std::pair<VertexId, VertexId>> edges);

    std::size_t vertex_count() const { return degrees_.size(); }
    std::size_t arc_count() const { return arcs_.size(); }
    std::size_t edge_count() const { return arcs_.size() / 2; }

    int degree(VertexId v) const { return degrees_[static_cast<std::size_t>(v)]; }
    std::span<const int> degrees() const { return degrees_; }

    // First outgoing arc of v; the range is [arc_offset(v), arc_offset(v) + degree(v)).
    ArcId arc_offset(VertexId v) const { return offsets_[static_cast<std::size_t>(v)]; }
    std::span<const ArcId> arc_offsets() const { return offsets_; }

    const Arc& arc(ArcId a) const { return arcs_[static_cast<std::size_t>(a)]; }
    std::span<const Arc> arcs() const { return arcs_; }

    ArcId reversal(ArcId a) const { return reversal_[static_cast<std::size_t>(a)]; }
    std::span<const ArcId> reversals() const { return reversal_; }

    // Heads of the outgoing arcs of v, in arc order.
    std::vector<VertexId> neighbors(VertexId v) const;

    // Undirected edges (u < v) in arc order of their lower endpoint.
    std::vector<std::pair<VertexId, VertexId>> edge_list() const;

    // FNV-1a over vertex count and the arc table. Identifies a graph in run
    // metadata.
    std::uint64_t fingerprint() const;

private:
    Graph() = default;
    void validate() const;

    std::vector<int> degrees_;
    std::vector<ArcId> offsets_;
    std::vector<Arc> arcs_;
    std::vector<ArcId> reversal_;
};

Graph build_ring(std::size_t n);

// Periodic lattice (torus) with row-major vertex order. Outgoing arcs of each
// vertex are ordered by direction: (-x0, +x0, -x1, +x1, ...).
Graph build_periodic_lattice(std::span<const std::size_t> sides);

struct ScaleFreeParams {
    std::size_t n = 1000;
    double exponent = 2.3;
    int min_degree = 2;
    // 0 selects floor(sqrt(n)).
    int max_degree = 0;
    Seed seed = 1;
    int max_attempts = 64;
};

// Configuration model with a truncated discrete power-law degree sequence.
// Self-loops and multi-edges are removed by degree-preserving swaps and
// stray components are spliced into the giant one the same way, so the
// result has exactly n vertices and the sampled degree sequence. Vertices are
// relabelled by descending degree, so vertex 0 is a hub.
Graph build_scale_free(const ScaleFreeParams& params);

std::map<int, std::size_t> degree_histogram(const Graph& g);

// 0 .. n-1.
std::vector<VertexId> all_vertices(const Graph& g);

// Hop distances from `source`; unreachable vertices get -1.
std::vector<int> bfs_distances(const Graph& g, VertexId source);

bool is_connected(const Graph& g);

// Maximum-likelihood exponent of a discrete power law truncated to
// [k_min, k_max] fitted to the degrees in that range.
double fit_degree_exponent(std::span<const int> degrees, int k_min, int k_max);

// Plain-text edge list: a header line "# n=<n>" then one "u v" pair per line.
void write_edge_list(const Graph& g, std::ostream& out);
Graph read_edge_list(std::istream& in);

}  // namespace qwalk
