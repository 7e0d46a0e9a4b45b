#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qwalk/operators.hpp"
#include "qwalk/rng.hpp"
#include "qwalk/series.hpp"

namespace qwalk {

// Complex amplitudes over the 2E arcs of a graph.
struct ArcState {
    ComplexVector amplitudes;

    std::size_t size() const { return static_cast<std::size_t>(amplitudes.size()); }
    double norm_squared() const { return amplitudes.squaredNorm(); }
};

// Equal real amplitude 1/sqrt(k_v) on each outgoing arc of v.
ArcState localized_state(const Graph& g, VertexId v);

// 1/sqrt(2E) on every arc.
ArcState uniform_state(const Graph& g);

// psi <- S C psi, then, if `phase_noise` is given, every amplitude picks up an
// independent phase exp(i phi), phi uniform on [0, 2 pi). `scratch` must not
// alias `psi` and is resized as needed.
void step_in_place(const WalkOperator& op, ComplexVector& psi, ComplexVector& scratch,
                   Rng* phase_noise = nullptr);

// Allocating form of one step. Throws ShapeError on a dimension mismatch and
// ArgumentError if the input is not normalized to 1e-8.
ArcState step(const WalkOperator& op, const ArcState& state, Rng* phase_noise = nullptr);

// z_v = sum over outgoing arcs of v of |psi_a|^2.
std::vector<double> vertex_probabilities(const Graph& g, const ArcState& state);
void vertex_probabilities(const Graph& g, const ComplexVector& psi, std::span<double> out);

struct VertexPhases {
    std::vector<double> theta;
    // Vertices whose arc-amplitude sum is exactly zero; their phase is 0.
    std::vector<VertexId> undefined;
};

// theta_v = arg(sum over outgoing arcs of psi_a), in (-pi, pi].
VertexPhases vertex_phases(const Graph& g, const ArcState& state);

struct RecordOptions {
    std::size_t horizon = 100000;
    std::size_t transient = 2000;
    // Must be non-empty; see all_vertices().
    std::vector<VertexId> vertices;
    bool record_phase = false;
    std::optional<Seed> phase_noise_seed;
};

struct QuantumRecord {
    VertexSeries probability;
    std::optional<VertexSeries> phase;
    ArcState final_state;
};

// Records z (and optionally theta) at t = 0 .. horizon-1; row t is the state
// after t steps.
QuantumRecord evolve_record(const WalkOperator& op, const ArcState& initial, const RecordOptions& options);

}  // namespace qwalk
