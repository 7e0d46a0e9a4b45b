#include "qwalk/quantum.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qwalk/error.hpp"

namespace qwalk {

ArcState localized_state(const Graph& g, VertexId v) {
    if (v < 0 || static_cast<std::size_t>(v) >= g.vertex_count())
        throw IndexError("vertex " + std::to_string(v) + " out of range");
    ArcState s{ComplexVector::Zero(static_cast<Eigen::Index>(g.arc_count()))};
    const double amp = 1.0 / std::sqrt(static_cast<double>(g.degree(v)));
    for (int i = 0; i < g.degree(v); ++i) s.amplitudes[g.arc_offset(v) + i] = amp;
    return s;
}

ArcState uniform_state(const Graph& g) {
    const auto m = static_cast<Eigen::Index>(g.arc_count());
    return {ComplexVector::Constant(m, Complex(1.0 / std::sqrt(static_cast<double>(m)), 0.0))};
}

void step_in_place(const WalkOperator& op, ComplexVector& psi, ComplexVector& scratch, Rng* phase_noise) {
    const Graph& g = op.graph();
    if (static_cast<std::size_t>(psi.size()) != g.arc_count())
        throw ShapeError("state has " + std::to_string(psi.size()) + " amplitudes, operator acts on " +
                         std::to_string(g.arc_count()));
    scratch.resize(psi.size());
    const ArcId* rev = g.reversals().data();
    const Complex* in = psi.data();
    Complex* out = scratch.data();

    // Coin block times the vertex's slice, written straight to the shifted
    // positions: (S C psi)[rev(a)] = (C psi)[a]. Real arithmetic avoids the
    // inf/nan handling of std::complex multiplication.
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        const auto vid = static_cast<VertexId>(v);
        const int k = g.degree(vid);
        const ArcId off = g.arc_offset(vid);
        const Complex* x = in + off;
        const Complex* b = op.block(vid).data();  // column-major
        for (int r = 0; r < k; ++r) {
            double re = 0.0, im = 0.0;
            for (int c = 0; c < k; ++c) {
                const Complex w = b[c * k + r];
                re += w.real() * x[c].real() - w.imag() * x[c].imag();
                im += w.real() * x[c].imag() + w.imag() * x[c].real();
            }
            out[rev[off + r]] = Complex(re, im);
        }
    }
    if (phase_noise != nullptr) {
        for (Eigen::Index a = 0; a < scratch.size(); ++a)
            scratch[a] *= std::polar(1.0, 2.0 * std::numbers::pi * phase_noise->uniform());
    }
    psi.swap(scratch);
}

ArcState step(const WalkOperator& op, const ArcState& state, Rng* phase_noise) {
    if (state.size() != op.dimension())
        throw ShapeError("state has " + std::to_string(state.size()) + " amplitudes, operator acts on " +
                         std::to_string(op.dimension()));
    if (std::abs(state.norm_squared() - 1.0) > 1e-8) throw ArgumentError("state is not normalized");
    ArcState next = state;
    ComplexVector scratch;
    step_in_place(op, next.amplitudes, scratch, phase_noise);
    return next;
}

void vertex_probabilities(const Graph& g, const ComplexVector& psi, std::span<double> out) {
    if (static_cast<std::size_t>(psi.size()) != g.arc_count() || out.size() != g.vertex_count())
        throw ShapeError("vertex_probabilities: size mismatch");
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        const auto vid = static_cast<VertexId>(v);
        double z = 0.0;
        for (int i = 0; i < g.degree(vid); ++i) z += std::norm(psi[g.arc_offset(vid) + i]);
        out[v] = z;
    }
}

std::vector<double> vertex_probabilities(const Graph& g, const ArcState& state) {
    std::vector<double> z(g.vertex_count());
    vertex_probabilities(g, state.amplitudes, z);
    return z;
}

namespace {

double vertex_probability(const Graph& g, const ComplexVector& psi, VertexId v) {
    double z = 0.0;
    for (int i = 0; i < g.degree(v); ++i) z += std::norm(psi[g.arc_offset(v) + i]);
    return z;
}

// arg of the arc-amplitude sum mapped to (-pi, pi]; nullopt for an exact zero.
std::optional<double> vertex_phase(const Graph& g, const ComplexVector& psi, VertexId v) {
    Complex sum = 0.0;
    for (int i = 0; i < g.degree(v); ++i) sum += psi[g.arc_offset(v) + i];
    if (sum == Complex(0.0, 0.0)) return std::nullopt;
    const double theta = std::arg(sum);
    return theta <= -std::numbers::pi ? std::numbers::pi : theta;
}

}  // namespace

VertexPhases vertex_phases(const Graph& g, const ArcState& state) {
    if (state.size() != g.arc_count()) throw ShapeError("vertex_phases: size mismatch");
    VertexPhases out;
    out.theta.resize(g.vertex_count());
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        const auto theta = vertex_phase(g, state.amplitudes, static_cast<VertexId>(v));
        out.theta[v] = theta.value_or(0.0);
        if (!theta) out.undefined.push_back(static_cast<VertexId>(v));
    }
    return out;
}

QuantumRecord evolve_record(const WalkOperator& op, const ArcState& initial, const RecordOptions& options) {
    const Graph& g = op.graph();
    if (options.vertices.empty()) throw ArgumentError("no vertices to record");
    if (options.horizon <= options.transient) throw ArgumentError("horizon must exceed transient");
    for (VertexId v : options.vertices)
        if (v < 0 || static_cast<std::size_t>(v) >= g.vertex_count())
            throw IndexError("recorded vertex " + std::to_string(v) + " out of range");
    if (initial.size() != op.dimension()) throw ShapeError("initial state does not match operator");
    if (std::abs(initial.norm_squared() - 1.0) > 1e-8) throw ArgumentError("initial state is not normalized");

    auto make_series = [&](SeriesKind kind) {
        VertexSeries s;
        s.kind = kind;
        s.vertices = options.vertices;
        for (VertexId v : s.vertices) s.degrees.push_back(g.degree(v));
        s.transient = options.transient;
        s.times.resize(options.horizon);
        s.values.resize(options.horizon * s.vertices.size());
        return s;
    };

    QuantumRecord rec{make_series(SeriesKind::QuantumProbability), std::nullopt, initial};
    if (options.record_phase) rec.phase = make_series(SeriesKind::QuantumPhase);

    std::optional<Rng> noise;
    if (options.phase_noise_seed) noise.emplace(*options.phase_noise_seed);

    ComplexVector& psi = rec.final_state.amplitudes;
    ComplexVector scratch(psi.size());
    const std::size_t cols = options.vertices.size();
    for (std::size_t t = 0; t < options.horizon; ++t) {
        if (t > 0) step_in_place(op, psi, scratch, noise ? &*noise : nullptr);
        rec.probability.times[t] = static_cast<std::int64_t>(t);
        double* zrow = rec.probability.values.data() + t * cols;
        for (std::size_t c = 0; c < cols; ++c) zrow[c] = vertex_probability(g, psi, options.vertices[c]);
        if (rec.phase) {
            rec.phase->times[t] = static_cast<std::int64_t>(t);
            double* prow = rec.phase->values.data() + t * cols;
            for (std::size_t c = 0; c < cols; ++c)
                prow[c] = vertex_phase(g, psi, options.vertices[c]).value_or(0.0);
        }
    }
    return rec;
}

}  // namespace qwalk
