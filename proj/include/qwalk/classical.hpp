#pragma once

#include <cstddef>
#include <vector>

#include "qwalk/graph.hpp"
#include "qwalk/rng.hpp"
#include "qwalk/series.hpp"

namespace qwalk {

// W non-interacting walkers that all hop to a uniformly chosen neighbour at
// every step.
class ClassicalEnsemble {
public:
    ClassicalEnsemble(const Graph& g, std::size_t walkers, VertexId start, Seed seed);

    void advance();
    const std::vector<VertexId>& positions() const { return positions_; }
    // Walker count per vertex, written into `counts` (size n).
    void occupation(std::vector<int>& counts) const;

private:
    const Graph* graph_;
    std::vector<VertexId> positions_;
    Rng rng_;
};

struct CrwOptions {
    std::size_t walkers = 1;
    std::size_t horizon = 100000;
    std::size_t transient = 2000;
    VertexId start_vertex = 0;
    Seed seed = 1;
    // Must be non-empty.
    std::vector<VertexId> vertices;
};

// Per-vertex walker counts w_i(t) for t = 0 .. horizon-1 (kind ClassicalCount).
VertexSeries simulate_crw(const Graph& g, const CrwOptions& options);

// W k_i / 2E.
std::vector<double> stationary_mean(const Graph& g, std::size_t walkers);

// P(w > q) for w ~ Binomial(W, p).
double binomial_exceedance(std::size_t walkers, double p, double q);

}  // namespace qwalk
