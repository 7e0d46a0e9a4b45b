#include "qwalk/series.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "qwalk/error.hpp"

namespace qwalk {

std::string to_string(SeriesKind kind) {
    switch (kind) {
        case SeriesKind::QuantumProbability: return "quantum_probability";
        case SeriesKind::QuantumPhase: return "quantum_phase";
        case SeriesKind::ClassicalCount: return "classical_count";
    }
    return "unknown";
}

SeriesKind parse_series_kind(const std::string& text) {
    if (text == "quantum_probability") return SeriesKind::QuantumProbability;
    if (text == "quantum_phase") return SeriesKind::QuantumPhase;
    if (text == "classical_count") return SeriesKind::ClassicalCount;
    throw ValidationError("unknown series kind '" + text + "'");
}

std::size_t VertexSeries::column_of(VertexId v) const {
    const auto it = std::find(vertices.begin(), vertices.end(), v);
    if (it == vertices.end()) throw IndexError("vertex " + std::to_string(v) + " is not recorded");
    return static_cast<std::size_t>(it - vertices.begin());
}

std::vector<double> VertexSeries::column(std::size_t col) const {
    if (col >= cols()) throw IndexError("series column out of range");
    std::vector<double> out;
    out.reserve(samples());
    for (std::size_t r = transient; r < rows(); ++r) out.push_back(at(r, col));
    return out;
}

namespace {

void append_double(std::string& line, double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    line.append(buf, res.ptr);
}

}  // namespace

void write_series_csv(const VertexSeries& s, std::ostream& out) {
    std::string line = "t";
    for (VertexId v : s.vertices) line += ",v" + std::to_string(v);
    out << line << '\n';
    for (std::size_t r = 0; r < s.rows(); ++r) {
        line = std::to_string(s.times[r]);
        for (double x : s.row(r)) {
            line += ',';
            append_double(line, x);
        }
        out << line << '\n';
    }
    if (!out) throw IoError("failed writing series CSV");
}

VertexSeries read_series_csv(std::istream& in, const SeriesMetadata& meta) {
    VertexSeries s;
    s.kind = parse_series_kind(meta.kind);
    s.transient = meta.transient;

    std::string line;
    if (!std::getline(in, line)) throw ValidationError("series CSV is empty");
    {
        std::istringstream header(line);
        std::string field;
        std::getline(header, field, ',');
        if (field != "t") throw ValidationError("series CSV header must start with 't'");
        while (std::getline(header, field, ',')) {
            if (field.size() < 2 || field[0] != 'v') throw ValidationError("bad series column '" + field + "'");
            s.vertices.push_back(static_cast<VertexId>(std::stol(field.substr(1))));
        }
    }
    if (s.vertices.empty()) throw ValidationError("series CSV has no vertex columns");
    if (meta.vertices.empty()) {
        s.degrees.assign(s.vertices.size(), 0);
    } else {
        if (meta.vertices != s.vertices) throw ValidationError("series columns disagree with metadata");
        s.degrees = meta.degrees;
    }

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const char* p = line.data();
        const char* end = p + line.size();
        std::int64_t t = 0;
        auto res = std::from_chars(p, end, t);
        if (res.ec != std::errc{}) throw ValidationError("bad time stamp on line " + std::to_string(line_no));
        s.times.push_back(t);
        p = res.ptr;
        for (std::size_t c = 0; c < s.vertices.size(); ++c) {
            if (p == end || *p != ',') throw ValidationError("short row on line " + std::to_string(line_no));
            double x = 0.0;
            res = std::from_chars(p + 1, end, x);
            if (res.ec != std::errc{}) throw ValidationError("bad value on line " + std::to_string(line_no));
            s.values.push_back(x);
            p = res.ptr;
        }
        if (p != end) throw ValidationError("extra fields on line " + std::to_string(line_no));
    }
    return s;
}

void write_series_metadata(const SeriesMetadata& meta, std::ostream& out) {
    nlohmann::ordered_json j;
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(meta.graph_fingerprint));
    j["graph_hash"] = hash;
    j["coin"] = meta.coin;
    j["seed"] = meta.seed;
    j["transient"] = meta.transient;
    j["kind"] = meta.kind;
    j["vertices"] = meta.vertices;
    j["degrees"] = meta.degrees;
    out << j.dump(2) << '\n';
    if (!out) throw IoError("failed writing series metadata");
}

SeriesMetadata read_series_metadata(std::istream& in) {
    SeriesMetadata meta;
    try {
        const auto j = nlohmann::json::parse(in);
        meta.graph_fingerprint = std::stoull(j.at("graph_hash").get<std::string>(), nullptr, 16);
        meta.coin = j.value("coin", "");
        meta.seed = j.value("seed", std::uint64_t{0});
        meta.transient = j.at("transient").get<std::size_t>();
        meta.kind = j.at("kind").get<std::string>();
        meta.vertices = j.value("vertices", std::vector<VertexId>{});
        meta.degrees = j.value("degrees", std::vector<int>{});
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("bad series metadata: ") + e.what());
    }
    if (meta.degrees.size() != meta.vertices.size())
        throw ValidationError("metadata degrees and vertices differ in length");
    return meta;
}

}  // namespace qwalk
