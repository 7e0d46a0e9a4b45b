#include "qwalk/runner.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include "qwalk/classical.hpp"
#include "qwalk/error.hpp"
#include "qwalk/quantum.hpp"
#include "qwalk/series.hpp"
#include "qwalk/stats.hpp"
#include "run_internal.hpp"

#ifndef QWALK_VERSION
#define QWALK_VERSION "unknown"
#endif

namespace qwalk {

namespace pt = boost::property_tree;
namespace fs = std::filesystem;

namespace {

std::string num(double x) {
    if (std::isnan(x)) return "NA";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return {buf, res.ptr};
}

template <class T>
std::string join(const std::vector<T>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        if constexpr (std::is_floating_point_v<T>)
            out += num(xs[i]);
        else
            out += std::to_string(xs[i]);
    }
    return out;
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

template <class T>
bool parse_number(const std::string& text, T& out) {
    const std::string t = trim(text);
    const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
    return res.ec == std::errc() && res.ptr == t.data() + t.size() && !t.empty();
}

bool parse_bool(const std::string& text, bool& out) {
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes") return out = true, true;
    if (t == "false" || t == "0" || t == "no") return out = false, true;
    return false;
}

// Collects field errors during parsing so one ValidationError lists them all.
struct FieldErrors {
    std::vector<std::string> items;

    void add(const std::string& field, const std::string& why) { items.push_back(field + ": " + why); }
    void raise() const {
        if (items.empty()) return;
        std::string msg = "invalid config";
        for (const auto& e : items) msg += "; " + e;
        throw ValidationError(msg);
    }
};

template <class T>
void read_number(const std::string& field, const std::string& text, T& out, FieldErrors& errors) {
    if (!parse_number(text, out)) errors.add(field, "not a number: '" + trim(text) + "'");
}

template <class T>
void read_list(const std::string& field, const std::string& text, std::vector<T>& out, FieldErrors& errors) {
    out.clear();
    for (const auto& item : split_list(text)) {
        T x{};
        if (!parse_number(item, x)) {
            errors.add(field, "not a number: '" + item + "'");
            return;
        }
        out.push_back(x);
    }
}

std::string m_label(double m) {
    std::string s = num(m);
    std::replace(s.begin(), s.end(), '.', 'p');
    return "m" + s;
}

double now_seconds() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

}  // namespace

void write_config(const ExperimentConfig& c, std::ostream& out) {
    pt::ptree tree;
    tree.put("run.name", c.name);
    tree.put("run.horizon", c.horizon);
    tree.put("run.transient", c.transient);
    tree.put("run.m", join(c.m_values));
    tree.put("run.vertices", c.vertices.empty() ? std::string("all") : join(c.vertices));
    tree.put("run.output_dir", c.output_dir);
    tree.put("run.master_seed", c.master_seed);
    tree.put("run.save_series", c.save_series ? "true" : "false");
    tree.put("graph.family", c.graph.family);
    tree.put("graph.n", c.graph.n);
    tree.put("graph.sides", join(c.graph.sides));
    tree.put("graph.exponent", num(c.graph.exponent));
    tree.put("graph.min_degree", c.graph.min_degree);
    tree.put("graph.max_degree", c.graph.max_degree);
    tree.put("graph.seed", c.graph.seed);
    tree.put("graph.path", c.graph.path);
    tree.put("walk.kind", c.walk.kind);
    tree.put("walk.coin", c.walk.coin);
    tree.put("walk.phase_noise", c.walk.phase_noise ? "true" : "false");
    tree.put("walk.record_phase", c.walk.record_phase ? "true" : "false");
    tree.put("walk.walkers", c.walk.walkers);
    tree.put("walk.start_vertex", c.walk.start_vertex);
    pt::write_ini(out, tree);
}

std::string config_text(const ExperimentConfig& config) {
    std::ostringstream out;
    write_config(config, out);
    return out.str();
}

ExperimentConfig read_config(std::istream& in) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ValidationError(std::string("config syntax: ") + e.what());
    }
    ExperimentConfig c;
    FieldErrors errors;
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty()) {
            errors.add(section, "key outside a section");
            continue;
        }
        for (const auto& [key, node] : body) {
            const std::string field = section + "." + key;
            const std::string v = node.data();
            if (section == "run") {
                if (key == "name") c.name = trim(v);
                else if (key == "horizon") read_number(field, v, c.horizon, errors);
                else if (key == "transient") read_number(field, v, c.transient, errors);
                else if (key == "m") read_list(field, v, c.m_values, errors);
                else if (key == "vertices") {
                    if (trim(v) == "all") c.vertices.clear();
                    else read_list(field, v, c.vertices, errors);
                } else if (key == "output_dir") c.output_dir = trim(v);
                else if (key == "master_seed") read_number(field, v, c.master_seed, errors);
                else if (key == "save_series") {
                    if (!parse_bool(v, c.save_series)) errors.add(field, "expected true or false");
                } else errors.add(field, "unknown key");
            } else if (section == "graph") {
                if (key == "family") c.graph.family = trim(v);
                else if (key == "n") read_number(field, v, c.graph.n, errors);
                else if (key == "sides") read_list(field, v, c.graph.sides, errors);
                else if (key == "exponent") read_number(field, v, c.graph.exponent, errors);
                else if (key == "min_degree") read_number(field, v, c.graph.min_degree, errors);
                else if (key == "max_degree") read_number(field, v, c.graph.max_degree, errors);
                else if (key == "seed") read_number(field, v, c.graph.seed, errors);
                else if (key == "path") c.graph.path = trim(v);
                else errors.add(field, "unknown key");
            } else if (section == "walk") {
                if (key == "kind") c.walk.kind = trim(v);
                else if (key == "coin") c.walk.coin = trim(v);
                else if (key == "phase_noise") {
                    if (!parse_bool(v, c.walk.phase_noise)) errors.add(field, "expected true or false");
                } else if (key == "record_phase") {
                    if (!parse_bool(v, c.walk.record_phase)) errors.add(field, "expected true or false");
                } else if (key == "walkers") read_number(field, v, c.walk.walkers, errors);
                else if (key == "start_vertex") read_number(field, v, c.walk.start_vertex, errors);
                else errors.add(field, "unknown key");
            } else {
                errors.add(section, "unknown section");
            }
        }
    }
    errors.raise();
    validate_config(c);
    return c;
}

ExperimentConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path.string());
    return read_config(in);
}

void validate_config(const ExperimentConfig& c) {
    FieldErrors errors;
    if (c.name.empty() || c.name.find_first_of("/\\ ") != std::string::npos)
        errors.add("run.name", "must be non-empty without spaces or slashes");
    if (c.horizon <= c.transient) errors.add("run.horizon", "must exceed run.transient");
    if (c.horizon - std::min(c.horizon, c.transient) < 2) errors.add("run.horizon", "leaves fewer than two samples");
    if (c.m_values.empty()) errors.add("run.m", "needs at least one value");
    for (double m : c.m_values)
        if (!(m >= 0.0) || !std::isfinite(m)) errors.add("run.m", "values must be finite and >= 0");
    for (VertexId v : c.vertices)
        if (v < 0) errors.add("run.vertices", "negative vertex index");

    const auto& g = c.graph;
    if (g.family == "ring") {
        if (g.n < 3) errors.add("graph.n", "ring needs n >= 3");
    } else if (g.family == "lattice") {
        if (g.sides.empty() || g.sides.size() > 3) errors.add("graph.sides", "needs 1 to 3 sides");
        for (auto s : g.sides)
            if (s < 3) errors.add("graph.sides", "each side must be >= 3");
    } else if (g.family == "scale_free") {
        if (g.n < 10) errors.add("graph.n", "scale-free graph needs n >= 10");
        if (!(g.exponent > 2.0)) errors.add("graph.exponent", "must exceed 2");
        if (g.min_degree < 2) errors.add("graph.min_degree", "must be >= 2");
        if (g.max_degree != 0 && g.max_degree < g.min_degree) errors.add("graph.max_degree", "below min_degree");
    } else if (g.family == "edge_list") {
        if (g.path.empty()) errors.add("graph.path", "required for edge_list");
    } else {
        errors.add("graph.family", "expected ring, lattice, scale_free or edge_list");
    }

    const auto& w = c.walk;
    if (w.kind == "quantum") {
        try {
            (void)CoinSpec::parse(w.coin);
        } catch (const Error&) {
            errors.add("walk.coin", "expected fourier, fourier:<theta> or grover");
        }
    } else if (w.kind == "classical") {
        if (w.walkers < 1) errors.add("walk.walkers", "must be >= 1");
        if (w.phase_noise) errors.add("walk.phase_noise", "only applies to quantum walks");
        if (w.record_phase) errors.add("walk.record_phase", "only applies to quantum walks");
    } else {
        errors.add("walk.kind", "expected quantum or classical");
    }
    if (w.start_vertex < 0) errors.add("walk.start_vertex", "negative vertex index");
    errors.raise();
}

Graph build_graph(const ExperimentConfig& c) {
    const auto& g = c.graph;
    if (g.family == "ring") return build_ring(g.n);
    if (g.family == "lattice") return build_periodic_lattice(g.sides);
    if (g.family == "scale_free") {
        ScaleFreeParams p;
        p.n = g.n;
        p.exponent = g.exponent;
        p.min_degree = g.min_degree;
        p.max_degree = g.max_degree;
        p.seed = g.seed != 0 ? g.seed : derive_seed(c.master_seed, kGraphStream);
        return build_scale_free(p);
    }
    if (g.family == "edge_list") {
        std::ifstream in(g.path);
        if (!in) throw IoError("cannot open edge list " + g.path);
        return read_edge_list(in);
    }
    throw ValidationError("graph.family: unknown family " + g.family);
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t hash) {
    for (unsigned char ch : bytes) {
        hash ^= ch;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

std::string code_version() { return QWALK_VERSION; }

fs::path resolve_output_dir(const std::string& configured) {
    if (!configured.empty()) return configured;
    if (const char* env = std::getenv("QWALK_OUT_DIR"); env && *env) return env;
    return "out";
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) throw IoError("failed writing " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot rename into " + path.string());
    }
}

Manifest::Manifest(fs::path dir) : dir_(std::move(dir)), started_(now_seconds()) {}

fs::path Manifest::add(const std::string& name, const std::string& contents) {
    const fs::path path = dir_ / name;
    write_file_atomic(path, contents);
    files_[name] = hex64(fnv1a(contents));
    return path;
}

void Manifest::set_config(const ExperimentConfig& config) {
    ExperimentConfig c = config;
    c.output_dir.clear();
    configs_.push_back(config_text(c));
    seed_ = config.master_seed;
}

void Manifest::note_substitution(const std::string& text) {
    if (std::find(substitutions_.begin(), substitutions_.end(), text) == substitutions_.end())
        substitutions_.push_back(text);
}

void Manifest::set_summary(const std::string& key, double value) { summary_[key] = num(value); }
void Manifest::set_summary(const std::string& key, const std::string& value) { summary_[key] = value; }

fs::path Manifest::write(const std::string& name) const {
    nlohmann::ordered_json j;
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& c : configs_) h = fnv1a(c, h);
    j["config_hash"] = hex64(h);
    j["code_version"] = code_version();
    j["master_seed"] = seed_;
    j["wall_time_seconds"] = now_seconds() - started_;
    j["files"] = nlohmann::ordered_json::object();
    for (const auto& [file, hash] : files_) j["files"][file] = hash;
    j["substitutions"] = substitutions_;
    j["summary"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : summary_) {
        double x = 0.0;
        if (parse_number(v, x))
            j["summary"][k] = x;
        else
            j["summary"][k] = v;
    }
    j["configs"] = configs_;
    const fs::path path = dir_ / name;
    write_file_atomic(path, j.dump(2) + "\n");
    return path;
}

Recorded record(const ExperimentConfig& c) {
    validate_config(c);
    Recorded r;
    r.graph = std::make_shared<const Graph>(build_graph(c));
    const Graph& g = *r.graph;
    std::vector<VertexId> vertices = c.vertices.empty() ? all_vertices(g) : c.vertices;
    for (VertexId v : vertices)
        if (static_cast<std::size_t>(v) >= g.vertex_count()) throw IndexError("run.vertices: vertex out of range");
    if (static_cast<std::size_t>(c.walk.start_vertex) >= g.vertex_count())
        throw IndexError("walk.start_vertex: vertex out of range");

    if (c.walk.kind == "quantum") {
        const auto op = assemble_walk_operator(r.graph, CoinSpec::parse(c.walk.coin));
        RecordOptions ro;
        ro.horizon = c.horizon;
        ro.transient = c.transient;
        ro.vertices = std::move(vertices);
        ro.record_phase = c.walk.record_phase;
        if (c.walk.phase_noise) ro.phase_noise_seed = derive_seed(c.master_seed, kPhaseNoiseStream);
        auto rec = evolve_record(op, localized_state(g, c.walk.start_vertex), ro);
        r.series = std::move(rec.probability);
        r.phase = std::move(rec.phase);
    } else {
        CrwOptions co;
        co.walkers = c.walk.walkers;
        co.horizon = c.horizon;
        co.transient = c.transient;
        co.start_vertex = c.walk.start_vertex;
        co.seed = derive_seed(c.master_seed, kWalkerStream);
        co.vertices = std::move(vertices);
        r.series = simulate_crw(g, co);
    }
    return r;
}

namespace {

template <class Writer, class Value>
std::string to_csv(Writer writer, const Value& value) {
    std::ostringstream out;
    writer(value, out);
    return out.str();
}

SeriesMetadata metadata_for(const ExperimentConfig& c, const Graph& g, const VertexSeries& s) {
    SeriesMetadata meta;
    meta.graph_fingerprint = g.fingerprint();
    meta.coin = c.walk.kind == "quantum" ? CoinSpec::parse(c.walk.coin).name() : "none";
    meta.seed = c.master_seed;
    meta.transient = s.transient;
    meta.kind = to_string(s.kind);
    meta.vertices = s.vertices;
    meta.degrees = s.degrees;
    return meta;
}

}  // namespace

void run_experiment_into(const ExperimentConfig& config, Manifest& manifest, const std::string& prefix) {
    const Recorded rec = record(config);
    const Graph& g = *rec.graph;
    manifest.set_config(config);

    manifest.add(prefix + "graph.txt", to_csv([](const Graph& x, std::ostream& o) { write_edge_list(x, o); }, g));
    const MomentTable mt = series_moments(rec.series);
    manifest.add(prefix + "moments.csv", to_csv(write_moments_csv, mt));
    manifest.set_summary(prefix + "two_e", static_cast<double>(g.arc_count()));

    std::vector<DegreeProfile> profiles;
    for (double m : config.m_values) {
        const EEReport rep = ee_detect(rec.series, mt, m);
        manifest.add(prefix + "ee_" + m_label(m) + ".csv", to_csv(write_ee_csv, rep));
        double mean_f = 0.0;
        for (double f : rep.probability) mean_f += f;
        manifest.set_summary(prefix + "F_mean_" + m_label(m), mean_f / static_cast<double>(rep.probability.size()));
        try {
            profiles.push_back(degree_profile(rep));
            manifest.set_summary(prefix + "gamma_" + m_label(m), profiles.back().gamma);
        } catch (const FitError&) {
        }
        const RecurrenceReport rr = recurrence_statistics(rep, rec.series);
        manifest.add(prefix + "recurrence_" + m_label(m) + ".csv", to_csv(write_recurrence_csv, rr));
    }
    if (!profiles.empty())
        manifest.add(prefix + "profiles.csv",
                     to_csv([](const std::vector<DegreeProfile>& p, std::ostream& o) { write_profiles_csv(p, o); },
                            profiles));

    if (config.save_series) {
        manifest.add(prefix + "series.csv", to_csv(write_series_csv, rec.series));
        manifest.add(prefix + "series.json",
                     to_csv(write_series_metadata, metadata_for(config, g, rec.series)));
        if (rec.phase) {
            manifest.add(prefix + "phase.csv", to_csv(write_series_csv, *rec.phase));
            manifest.add(prefix + "phase.json", to_csv(write_series_metadata, metadata_for(config, g, *rec.phase)));
        }
    }
}

RunResult run_experiment(const ExperimentConfig& config) {
    validate_config(config);
    Manifest manifest(resolve_output_dir(config.output_dir));
    run_experiment_into(config, manifest, config.name + "_");
    RunResult out;
    out.output_dir = manifest.dir();
    for (const auto& [name, hash] : manifest.file_hashes()) out.files.push_back(manifest.dir() / name);
    out.manifest = manifest.write(config.name + "_manifest.json");
    return out;
}

}  // namespace qwalk
