#include "qwalk/classical.hpp"

#include <cmath>
#include <string>

#include <boost/math/distributions/binomial.hpp>

#include "qwalk/error.hpp"

namespace qwalk {

ClassicalEnsemble::ClassicalEnsemble(const Graph& g, std::size_t walkers, VertexId start, Seed seed)
    : graph_(&g), positions_(walkers, start), rng_(seed) {
    if (walkers == 0) throw ArgumentError("need at least one walker");
    if (start < 0 || static_cast<std::size_t>(start) >= g.vertex_count())
        throw IndexError("start vertex " + std::to_string(start) + " out of range");
}

void ClassicalEnsemble::advance() {
    for (VertexId& v : positions_) {
        const auto k = static_cast<std::uint64_t>(graph_->degree(v));
        v = graph_->arc(graph_->arc_offset(v) + static_cast<ArcId>(rng_.below(k))).head;
    }
}

void ClassicalEnsemble::occupation(std::vector<int>& counts) const {
    counts.assign(graph_->vertex_count(), 0);
    for (VertexId v : positions_) ++counts[static_cast<std::size_t>(v)];
}

VertexSeries simulate_crw(const Graph& g, const CrwOptions& options) {
    if (options.vertices.empty()) throw ArgumentError("no vertices to record");
    if (options.horizon <= options.transient) throw ArgumentError("horizon must exceed transient");
    for (VertexId v : options.vertices)
        if (v < 0 || static_cast<std::size_t>(v) >= g.vertex_count())
            throw IndexError("recorded vertex " + std::to_string(v) + " out of range");

    ClassicalEnsemble ensemble(g, options.walkers, options.start_vertex, options.seed);
    VertexSeries s;
    s.kind = SeriesKind::ClassicalCount;
    s.vertices = options.vertices;
    for (VertexId v : s.vertices) s.degrees.push_back(g.degree(v));
    s.transient = options.transient;
    s.times.resize(options.horizon);
    s.values.resize(options.horizon * s.vertices.size());

    std::vector<int> counts;
    const std::size_t cols = s.vertices.size();
    for (std::size_t t = 0; t < options.horizon; ++t) {
        if (t > 0) ensemble.advance();
        ensemble.occupation(counts);
        s.times[t] = static_cast<std::int64_t>(t);
        for (std::size_t c = 0; c < cols; ++c)
            s.values[t * cols + c] = counts[static_cast<std::size_t>(s.vertices[c])];
    }
    return s;
}

std::vector<double> stationary_mean(const Graph& g, std::size_t walkers) {
    std::vector<double> out(g.vertex_count());
    const double two_e = static_cast<double>(g.arc_count());
    for (std::size_t v = 0; v < out.size(); ++v)
        out[v] = static_cast<double>(walkers) * g.degree(static_cast<VertexId>(v)) / two_e;
    return out;
}

double binomial_exceedance(std::size_t walkers, double p, double q) {
    if (walkers == 0) throw ArgumentError("need at least one walker");
    if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("probability must lie in [0, 1]");
    if (std::isnan(q)) throw ArgumentError("threshold is NaN");
    if (q < 0.0) return 1.0;
    const double w = static_cast<double>(walkers);
    if (q >= w) return 0.0;
    // Strict exceedance on the integer support: w > q  <=>  w >= floor(q) + 1.
    const boost::math::binomial_distribution<double> dist(w, p);
    return boost::math::cdf(boost::math::complement(dist, std::floor(q)));
}

}  // namespace qwalk
