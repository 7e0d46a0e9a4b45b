#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qwalk/graph.hpp"
#include "qwalk/operators.hpp"
#include "qwalk/rng.hpp"

namespace qwalk {

struct GraphConfig {
    // ring | lattice | scale_free | edge_list
    std::string family = "ring";
    std::size_t n = 729;
    std::vector<std::size_t> sides;
    double exponent = 2.3;
    int min_degree = 2;
    int max_degree = 0;
    // 0 derives the generator seed from the master seed.
    Seed seed = 0;
    std::string path;

    bool operator==(const GraphConfig&) const = default;
};

struct WalkConfig {
    // quantum | classical
    std::string kind = "quantum";
    std::string coin = "fourier";
    bool phase_noise = false;
    bool record_phase = false;
    std::size_t walkers = 1;
    VertexId start_vertex = 0;

    bool operator==(const WalkConfig&) const = default;
};

struct ExperimentConfig {
    std::string name = "run";
    GraphConfig graph;
    WalkConfig walk;
    std::size_t horizon = 100000;
    std::size_t transient = 2000;
    std::vector<double> m_values{3.0};
    // Empty records every vertex.
    std::vector<VertexId> vertices;
    std::string output_dir;
    Seed master_seed = 1;
    bool save_series = false;

    bool operator==(const ExperimentConfig&) const = default;
};

// Sectioned key = value text ([run], [graph], [walk]).
void write_config(const ExperimentConfig& config, std::ostream& out);
ExperimentConfig read_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_text(const ExperimentConfig& config);

// Throws ValidationError naming every offending field.
void validate_config(const ExperimentConfig& config);

// Builds the configured graph; scale-free graphs use the configured seed or,
// when it is 0, stream 0 of the master seed.
Graph build_graph(const ExperimentConfig& config);

// Stream assignment under the master seed.
inline constexpr std::uint64_t kGraphStream = 0;
inline constexpr std::uint64_t kWalkerStream = 1;
inline constexpr std::uint64_t kPhaseNoiseStream = 2;

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t hash = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t value);
std::string code_version();

// Output directory: the configured one, else $QWALK_OUT_DIR, else "out".
std::filesystem::path resolve_output_dir(const std::string& configured);

// Writes `contents` to a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

// Collects artifacts of one run or preset and writes manifest.json.
class Manifest {
public:
    explicit Manifest(std::filesystem::path dir);

    // Writes the file atomically and records its hash.
    std::filesystem::path add(const std::string& name, const std::string& contents);
    // Records the config; the output directory is left out of the hash.
    void set_config(const ExperimentConfig& config);
    void note_substitution(const std::string& text);
    void set_summary(const std::string& key, double value);
    void set_summary(const std::string& key, const std::string& value);

    // Writes manifest.json (or `name`) with the elapsed wall time.
    std::filesystem::path write(const std::string& name = "manifest.json") const;

    const std::filesystem::path& dir() const { return dir_; }
    const std::map<std::string, std::string>& file_hashes() const { return files_; }

private:
    std::filesystem::path dir_;
    std::map<std::string, std::string> files_;
    std::vector<std::string> configs_;
    std::vector<std::string> substitutions_;
    std::map<std::string, std::string> summary_;
    Seed seed_ = 0;
    double started_ = 0.0;
};

struct RunResult {
    std::filesystem::path output_dir;
    std::vector<std::filesystem::path> files;
    std::filesystem::path manifest;
};

// Evolves the configured walk and writes moments, EE, degree profile and
// recurrence CSVs (plus the series itself when save_series is set). Outputs
// other than the manifest's wall time are a function of the config alone.
RunResult run_experiment(const ExperimentConfig& config);

// Same pipeline, but artifacts go into an existing manifest with `prefix`
// prepended to every file name.
void run_experiment_into(const ExperimentConfig& config, Manifest& manifest, const std::string& prefix);

struct PresetOptions {
    std::filesystem::path output_dir;
    Seed master_seed = 1;
    // Shorter horizons and smaller graphs for smoke runs.
    bool quick = false;
};

std::vector<std::string> preset_names();

// table1, table2, fig2, fig3, fig45 or si-recurrence. Throws ArgumentError
// for an unknown name.
RunResult run_preset(const std::string& name, const PresetOptions& options);

}  // namespace qwalk
