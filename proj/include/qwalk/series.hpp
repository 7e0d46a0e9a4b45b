#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qwalk/graph.hpp"

namespace qwalk {

enum class SeriesKind { QuantumProbability, QuantumPhase, ClassicalCount };

std::string to_string(SeriesKind kind);
SeriesKind parse_series_kind(const std::string& text);

// Per-vertex observable over time, stored row-major (time x recorded vertex).
// Rows before `transient` are kept; statistics skip them.
struct VertexSeries {
    SeriesKind kind = SeriesKind::QuantumProbability;
    std::vector<std::int64_t> times;
    std::vector<VertexId> vertices;
    // Degree of each recorded vertex, parallel to `vertices`.
    std::vector<int> degrees;
    std::size_t transient = 0;
    std::vector<double> values;

    std::size_t rows() const { return times.size(); }
    std::size_t cols() const { return vertices.size(); }
    std::size_t samples() const { return rows() > transient ? rows() - transient : 0; }

    double at(std::size_t row, std::size_t col) const { return values[row * cols() + col]; }
    std::span<const double> row(std::size_t r) const { return {values.data() + r * cols(), cols()}; }

    // Column index of graph vertex v; throws IndexError if v is not recorded.
    std::size_t column_of(VertexId v) const;

    // Post-transient samples of one column.
    std::vector<double> column(std::size_t col) const;
};

// Run metadata written next to an exported series.
struct SeriesMetadata {
    std::uint64_t graph_fingerprint = 0;
    std::string coin;
    std::uint64_t seed = 0;
    std::size_t transient = 0;
    std::string kind;
    std::vector<VertexId> vertices;
    std::vector<int> degrees;
};

// CSV with header "t,v<i>,v<j>,...", one row per step. Values use 17
// significant digits so a round trip is exact.
void write_series_csv(const VertexSeries& s, std::ostream& out);

// Reads the CSV body; kind, transient and degrees come from the metadata.
VertexSeries read_series_csv(std::istream& in, const SeriesMetadata& meta);

void write_series_metadata(const SeriesMetadata& meta, std::ostream& out);
SeriesMetadata read_series_metadata(std::istream& in);

}  // namespace qwalk
