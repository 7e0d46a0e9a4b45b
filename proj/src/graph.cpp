#include "qwalk/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <string>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv_mix(std::uint64_t& h, std::uint64_t value) {
    for (int byte = 0; byte < 8; ++byte) {
        h ^= (value >> (8 * byte)) & 0xffU;
        h *= kFnvPrime;
    }
}

using Edge = std::pair<VertexId, VertexId>;

Edge ordered(VertexId a, VertexId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

}  // namespace

Graph Graph::from_adjacency(const std::vector<std::vector<VertexId>>& adjacency) {
    Graph g;
    const std::size_t n = adjacency.size();
    if (n == 0) throw InvalidGraph("graph has no vertices");

    g.degrees_.resize(n);
    g.offsets_.resize(n);
    ArcId offset = 0;
    for (std::size_t v = 0; v < n; ++v) {
        g.offsets_[v] = offset;
        g.degrees_[v] = static_cast<int>(adjacency[v].size());
        for (VertexId h : adjacency[v]) {
            if (h < 0 || static_cast<std::size_t>(h) >= n)
                throw InvalidGraph("arc head out of range at vertex " + std::to_string(v));
            g.arcs_.push_back({static_cast<VertexId>(v), h});
        }
        offset += static_cast<ArcId>(adjacency[v].size());
    }

    g.reversal_.assign(g.arcs_.size(), -1);
    for (std::size_t a = 0; a < g.arcs_.size(); ++a) {
        const auto [tail, head] = g.arcs_[a];
        const auto& back = adjacency[static_cast<std::size_t>(head)];
        const auto it = std::find(back.begin(), back.end(), tail);
        if (it == back.end())
            throw InvalidGraph("arc " + std::to_string(tail) + "->" + std::to_string(head) +
                               " has no reverse");
        g.reversal_[a] = g.offsets_[static_cast<std::size_t>(head)] + (it - back.begin());
    }
    g.validate();
    return g;
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
    std::vector<std::vector<VertexId>> adjacency(n);
    for (const auto& [u, v] : edges) {
        if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
            throw InvalidGraph("edge endpoint out of range");
        if (u == v) throw InvalidGraph("self-loop at vertex " + std::to_string(u));
        adjacency[static_cast<std::size_t>(u)].push_back(v);
        adjacency[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& list : adjacency) std::sort(list.begin(), list.end());
    return from_adjacency(adjacency);
}

void Graph::validate() const {
    const std::size_t n = vertex_count();
    std::size_t degree_sum = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (degrees_[v] < 1) throw InvalidGraph("vertex " + std::to_string(v) + " is isolated");
        degree_sum += static_cast<std::size_t>(degrees_[v]);
        std::set<VertexId> seen;
        for (int i = 0; i < degrees_[v]; ++i) {
            const Arc& a = arcs_[static_cast<std::size_t>(offsets_[v] + i)];
            if (a.tail != static_cast<VertexId>(v)) throw InvalidGraph("arc outside its tail range");
            if (a.head == a.tail) throw InvalidGraph("self-loop at vertex " + std::to_string(v));
            if (!seen.insert(a.head).second)
                throw InvalidGraph("multi-edge at vertex " + std::to_string(v));
        }
    }
    if (degree_sum != arcs_.size()) throw InvalidGraph("degree sum differs from arc count");
    for (std::size_t a = 0; a < arcs_.size(); ++a) {
        const auto r = static_cast<std::size_t>(reversal_[a]);
        if (r == a || static_cast<std::size_t>(reversal_[r]) != a ||
            arcs_[r].tail != arcs_[a].head || arcs_[r].head != arcs_[a].tail)
            throw InvalidGraph("reversal is not a fixed-point-free involution");
    }
    if (!is_connected(*this)) throw InvalidGraph("graph is not connected");
}

std::vector<VertexId> Graph::neighbors(VertexId v) const {
    std::vector<VertexId> out;
    out.reserve(static_cast<std::size_t>(degree(v)));
    for (int i = 0; i < degree(v); ++i) out.push_back(arc(arc_offset(v) + i).head);
    return out;
}

std::vector<Edge> Graph::edge_list() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (const Arc& a : arcs_)
        if (a.tail < a.head) out.emplace_back(a.tail, a.head);
    return out;
}

std::uint64_t Graph::fingerprint() const {
    std::uint64_t h = kFnvOffset;
    fnv_mix(h, vertex_count());
    for (const Arc& a : arcs_) {
        fnv_mix(h, static_cast<std::uint64_t>(a.tail));
        fnv_mix(h, static_cast<std::uint64_t>(a.head));
    }
    return h;
}

Graph build_ring(std::size_t n) {
    const std::size_t sides[] = {n};
    if (n < 3) throw InvalidSize("ring needs at least 3 vertices, got " + std::to_string(n));
    return build_periodic_lattice(sides);
}

Graph build_periodic_lattice(std::span<const std::size_t> sides) {
    if (sides.empty() || sides.size() > 3)
        throw InvalidSize("lattice dimension must be 1, 2 or 3");
    std::size_t n = 1;
    for (std::size_t s : sides) {
        if (s < 3) throw InvalidSize("lattice side must be at least 3, got " + std::to_string(s));
        n *= s;
    }

    const std::size_t d = sides.size();
    // Row-major strides: the last coordinate varies fastest.
    std::vector<std::size_t> stride(d, 1);
    for (std::size_t i = d - 1; i-- > 0;) stride[i] = stride[i + 1] * sides[i + 1];

    std::vector<std::vector<VertexId>> adjacency(n);
    for (std::size_t v = 0; v < n; ++v) {
        auto& list = adjacency[v];
        list.reserve(2 * d);
        for (std::size_t axis = 0; axis < d; ++axis) {
            const std::size_t c = (v / stride[axis]) % sides[axis];
            const std::size_t base = v - c * stride[axis];
            const std::size_t down = (c + sides[axis] - 1) % sides[axis];
            const std::size_t up = (c + 1) % sides[axis];
            list.push_back(static_cast<VertexId>(base + down * stride[axis]));
            list.push_back(static_cast<VertexId>(base + up * stride[axis]));
        }
    }
    return Graph::from_adjacency(adjacency);
}

namespace {

std::vector<int> sample_degrees(const ScaleFreeParams& p, int k_max, Rng& rng) {
    std::vector<double> cumulative;
    double total = 0.0;
    for (int k = p.min_degree; k <= k_max; ++k) {
        total += std::pow(static_cast<double>(k), -p.exponent);
        cumulative.push_back(total);
    }
    auto draw = [&] {
        const double u = rng.uniform() * total;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const auto idx = std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                                  static_cast<std::ptrdiff_t>(cumulative.size()) - 1);
        return p.min_degree + static_cast<int>(idx);
    };

    std::vector<int> degrees(p.n);
    long long sum = 0;
    for (auto& k : degrees) {
        k = draw();
        sum += k;
    }
    // Redraw one vertex until the stub count is even.
    while (sum % 2 != 0) {
        const auto v = rng.below(p.n);
        sum -= degrees[v];
        degrees[v] = draw();
        sum += degrees[v];
    }
    return degrees;
}

// Removes self-loops and multi-edges by random double-edge swaps.
bool make_simple(std::vector<Edge>& edges, Rng& rng) {
    std::multiset<Edge> present(edges.begin(), edges.end());
    auto is_bad = [&](const Edge& e) { return e.first == e.second || present.count(e) > 1; };

    const std::size_t budget = 200 * edges.size() + 1000;
    for (std::size_t iter = 0; iter < budget; ++iter) {
        std::size_t bad = edges.size();
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (is_bad(edges[i])) {
                bad = i;
                break;
            }
        if (bad == edges.size()) return true;

        // Several swap proposals per scan keep this near-linear overall.
        for (int tries = 0; tries < 64; ++tries) {
            const auto other = static_cast<std::size_t>(rng.below(edges.size()));
            if (other == bad) continue;
            const auto [a, b] = edges[bad];
            const auto [c, e] = edges[other];
            const bool cross = rng.below(2) == 0;
            const Edge x = cross ? ordered(a, c) : ordered(a, e);
            const Edge y = cross ? ordered(b, e) : ordered(b, c);
            if (x.first == x.second || y.first == y.second || x == y) continue;
            if (present.count(x) > 0 || present.count(y) > 0) continue;
            present.erase(present.find(edges[bad]));
            present.erase(present.find(edges[other]));
            edges[bad] = x;
            edges[other] = y;
            present.insert(x);
            present.insert(y);
            break;
        }
    }
    return false;
}

std::vector<int> component_labels(std::size_t n, const std::vector<Edge>& edges, int& count) {
    std::vector<std::vector<VertexId>> adj(n);
    for (const auto& [u, v] : edges) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    std::vector<int> label(n, -1);
    count = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (label[s] >= 0) continue;
        std::queue<std::size_t> q;
        q.push(s);
        label[s] = count;
        while (!q.empty()) {
            const auto u = q.front();
            q.pop();
            for (VertexId w : adj[u])
                if (label[static_cast<std::size_t>(w)] < 0) {
                    label[static_cast<std::size_t>(w)] = count;
                    q.push(static_cast<std::size_t>(w));
                }
        }
        ++count;
    }
    return label;
}

// Splices every non-giant component into the giant one by swapping one of its
// edges (u,v) with a giant edge (x,y) into (u,x),(v,y). Degrees are unchanged.
bool connect_components(std::size_t n, std::vector<Edge>& edges, Rng& rng) {
    for (int round = 0; round < 4096; ++round) {
        int count = 0;
        const auto label = component_labels(n, edges, count);
        if (count == 1) return true;

        std::vector<std::size_t> size(static_cast<std::size_t>(count), 0);
        for (int l : label) ++size[static_cast<std::size_t>(l)];
        const int giant = static_cast<int>(std::max_element(size.begin(), size.end()) - size.begin());

        std::vector<std::size_t> inside, outside;
        for (std::size_t i = 0; i < edges.size(); ++i)
            (label[static_cast<std::size_t>(edges[i].first)] == giant ? inside : outside).push_back(i);
        if (inside.empty() || outside.empty()) return false;

        const auto i = outside[rng.below(outside.size())];
        const auto j = inside[rng.below(inside.size())];
        const Edge old_i = edges[i];
        const Edge old_j = edges[j];
        edges[i] = ordered(old_i.first, old_j.first);
        edges[j] = ordered(old_i.second, old_j.second);

        int after = 0;
        component_labels(n, edges, after);
        if (after >= count) {
            edges[i] = old_i;
            edges[j] = old_j;
        }
    }
    return false;
}

}  // namespace

Graph build_scale_free(const ScaleFreeParams& params) {
    if (params.n < 10) throw InvalidSize("scale-free graph needs at least 10 vertices");
    if (!(params.exponent > 2.0)) throw ArgumentError("scale-free exponent must exceed 2");
    if (params.min_degree < 2) throw ArgumentError("scale-free min_degree must be at least 2");
    const int k_max = params.max_degree > 0
                          ? params.max_degree
                          : static_cast<int>(std::floor(std::sqrt(static_cast<double>(params.n))));
    if (k_max < params.min_degree) throw ArgumentError("max_degree below min_degree");
    if (static_cast<std::size_t>(k_max) >= params.n) throw ArgumentError("max_degree must be below n");

    Rng rng(params.seed);
    for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
        const auto degrees = sample_degrees(params, k_max, rng);

        std::vector<VertexId> stubs;
        for (std::size_t v = 0; v < degrees.size(); ++v)
            stubs.insert(stubs.end(), static_cast<std::size_t>(degrees[v]), static_cast<VertexId>(v));
        for (std::size_t i = stubs.size(); i > 1; --i)
            std::swap(stubs[i - 1], stubs[rng.below(i)]);

        std::vector<Edge> edges;
        edges.reserve(stubs.size() / 2);
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) edges.push_back(ordered(stubs[i], stubs[i + 1]));

        if (!make_simple(edges, rng)) continue;
        if (!connect_components(params.n, edges, rng)) continue;

        std::vector<VertexId> order(params.n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
            return degrees[static_cast<std::size_t>(a)] > degrees[static_cast<std::size_t>(b)];
        });
        std::vector<VertexId> relabel(params.n);
        for (std::size_t i = 0; i < order.size(); ++i)
            relabel[static_cast<std::size_t>(order[i])] = static_cast<VertexId>(i);
        for (auto& [u, v] : edges) {
            u = relabel[static_cast<std::size_t>(u)];
            v = relabel[static_cast<std::size_t>(v)];
        }
        return Graph::from_edges(params.n, edges);
    }
    throw GenerationFailure("could not realize a connected simple scale-free graph after " +
                            std::to_string(params.max_attempts) + " attempts");
}

std::map<int, std::size_t> degree_histogram(const Graph& g) {
    std::map<int, std::size_t> hist;
    for (int k : g.degrees()) ++hist[k];
    return hist;
}

std::vector<VertexId> all_vertices(const Graph& g) {
    std::vector<VertexId> out(g.vertex_count());
    std::iota(out.begin(), out.end(), 0);
    return out;
}

std::vector<int> bfs_distances(const Graph& g, VertexId source) {
    if (source < 0 || static_cast<std::size_t>(source) >= g.vertex_count())
        throw IndexError("bfs source out of range");
    std::vector<int> dist(g.vertex_count(), -1);
    std::queue<VertexId> q;
    dist[static_cast<std::size_t>(source)] = 0;
    q.push(source);
    while (!q.empty()) {
        const VertexId u = q.front();
        q.pop();
        for (int i = 0; i < g.degree(u); ++i) {
            const VertexId w = g.arc(g.arc_offset(u) + i).head;
            if (dist[static_cast<std::size_t>(w)] < 0) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                q.push(w);
            }
        }
    }
    return dist;
}

bool is_connected(const Graph& g) {
    const auto dist = bfs_distances(g, 0);
    return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

double fit_degree_exponent(std::span<const int> degrees, int k_min, int k_max) {
    if (k_min < 1 || k_max <= k_min) throw ArgumentError("invalid power-law support");
    double log_sum = 0.0;
    std::size_t count = 0;
    for (int k : degrees)
        if (k >= k_min && k <= k_max) {
            log_sum += std::log(static_cast<double>(k));
            ++count;
        }
    if (count < 2) throw FitError("too few degrees in the fit range");

    auto log_likelihood = [&](double gamma) {
        double z = 0.0;
        for (int k = k_min; k <= k_max; ++k) z += std::pow(static_cast<double>(k), -gamma);
        return -gamma * log_sum - static_cast<double>(count) * std::log(z);
    };
    // The log-likelihood is concave in gamma; golden-section search.
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.01, hi = 8.0;
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = log_likelihood(x1), f2 = log_likelihood(x2);
    while (hi - lo > 1e-9) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = log_likelihood(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = log_likelihood(x1);
        }
    }
    return 0.5 * (lo + hi);
}

void write_edge_list(const Graph& g, std::ostream& out) {
    out << "# n=" << g.vertex_count() << '\n';
    for (const auto& [u, v] : g.edge_list()) out << u << ' ' << v << '\n';
    if (!out) throw IoError("failed writing edge list");
}

Graph read_edge_list(std::istream& in) {
    std::string line;
    std::size_t n = 0;
    bool have_header = false;
    std::vector<Edge> edges;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto pos = line.find("n=");
            if (!have_header && pos != std::string::npos) {
                try {
                    n = std::stoul(line.substr(pos + 2));
                } catch (const std::exception&) {
                    throw InvalidGraph("malformed header on line " + std::to_string(line_no));
                }
                have_header = true;
            }
            continue;
        }
        std::istringstream fields(line);
        long long u = 0, v = 0;
        if (!(fields >> u >> v)) throw InvalidGraph("malformed edge on line " + std::to_string(line_no));
        edges.push_back(ordered(static_cast<VertexId>(u), static_cast<VertexId>(v)));
    }
    if (!have_header) throw InvalidGraph("edge list lacks the '# n=<n>' header");
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw InvalidGraph("duplicate edge in edge list");
    return Graph::from_edges(n, edges);
}

}  // namespace qwalk
