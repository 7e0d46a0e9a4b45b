#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qwalk/error.hpp"
#include "qwalk/quantum.hpp"
#include "qwalk/runner.hpp"
#include "qwalk/series.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/stats.hpp"

namespace fs = std::filesystem;
using namespace qwalk;

namespace {

struct Common {
    std::string config;
    std::optional<Seed> seed;
    std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "Experiment config file (INI)");
    cmd->add_option("--seed", c.seed, "Master seed, overrides the config");
    cmd->add_option("--out", c.out, "Output directory, overrides the config");
}

ExperimentConfig resolve(const Common& c) {
    ExperimentConfig cfg = c.config.empty() ? ExperimentConfig{} : load_config(c.config);
    if (c.seed) cfg.master_seed = *c.seed;
    if (!c.out.empty()) cfg.output_dir = c.out;
    return cfg;
}

void print_run(const RunResult& r) {
    for (const auto& f : r.files) std::cout << f.string() << '\n';
    std::cout << r.manifest.string() << '\n';
}

int cmd_run(const Common& c, const std::string& kind) {
    ExperimentConfig cfg = resolve(c);
    cfg.walk.kind = kind;
    print_run(run_experiment(cfg));
    return 0;
}

int cmd_graph(const Common& c) {
    const ExperimentConfig cfg = resolve(c);
    validate_config(cfg);
    const Graph g = build_graph(cfg);
    const fs::path dir = resolve_output_dir(cfg.output_dir);
    std::ostringstream body;
    write_edge_list(g, body);
    const fs::path path = dir / (cfg.name + "_graph.txt");
    write_file_atomic(path, body.str());
    std::cout << "n=" << g.vertex_count() << " edges=" << g.edge_count() << " fingerprint=" << hex64(g.fingerprint())
              << '\n'
              << path.string() << '\n';
    return 0;
}

int cmd_analyze(const std::string& series_path, std::string meta_path, const std::vector<double>& m_values,
                std::size_t transient, const std::string& out) {
    if (meta_path.empty()) {
        fs::path p(series_path);
        p.replace_extension(".json");
        if (fs::exists(p)) meta_path = p.string();
    }
    SeriesMetadata meta;
    if (!meta_path.empty()) {
        std::ifstream in(meta_path);
        if (!in) throw IoError("cannot open metadata " + meta_path);
        meta = read_series_metadata(in);
    } else {
        meta.kind = to_string(SeriesKind::QuantumProbability);
        meta.transient = transient;
    }
    std::ifstream in(series_path);
    if (!in) throw IoError("cannot open series " + series_path);
    const VertexSeries s = read_series_csv(in, meta);
    const MomentTable mt = series_moments(s);

    std::ostringstream body;
    for (std::size_t i = 0; i < m_values.size(); ++i) {
        std::ostringstream part;
        write_ee_csv(ee_detect(s, mt, m_values[i]), part);
        std::string text = part.str();
        // One header for all m values.
        if (i > 0) text.erase(0, text.find('\n') + 1);
        body << text;
    }
    if (out.empty()) {
        std::cout << body.str();
    } else {
        write_file_atomic(out, body.str());
        std::cout << out << '\n';
    }
    return 0;
}

int cmd_spectral(const Common& c, std::size_t bins) {
    const ExperimentConfig cfg = resolve(c);
    validate_config(cfg);
    if (cfg.walk.kind != "quantum") throw ValidationError("walk.kind: spectral analysis needs a quantum walk");
    auto g = std::make_shared<const Graph>(build_graph(cfg));
    const auto op = assemble_walk_operator(g, CoinSpec::parse(cfg.walk.coin));
    const SpectralData sd = eigendecompose(dense_unitary(op));
    Manifest manifest(resolve_output_dir(cfg.output_dir));
    manifest.set_config(cfg);

    std::ostringstream phases;
    write_eigenphases_csv(sd, phases);
    manifest.add(cfg.name + "_eigenphases.csv", phases.str());

    const auto limit = limiting_distribution(sd, localized_state(*g, cfg.walk.start_vertex), *g);
    std::ostringstream lim;
    lim.precision(17);
    lim << "v,k,z_limit\n";
    for (std::size_t v = 0; v < limit.size(); ++v) lim << v << ',' << g->degree(static_cast<VertexId>(v)) << ',' << limit[v] << '\n';
    manifest.add(cfg.name + "_limiting.csv", lim.str());

    const Histogram h = eigenphase_spacing_density(sd, bins);
    std::ostringstream sp;
    sp.precision(17);
    sp << "omega,density\n";
    for (std::size_t b = 0; b < h.density.size(); ++b) sp << h.center(b) << ',' << h.density[b] << '\n';
    manifest.add(cfg.name + "_spacing.csv", sp.str());

    manifest.set_summary("degeneracy_classes", static_cast<double>(sd.classes.size()));
    manifest.set_summary("order", static_cast<double>(sd.order()));
    for (const auto& [name, hash] : manifest.file_hashes()) std::cout << (manifest.dir() / name).string() << '\n';
    std::cout << manifest.write(cfg.name + "_manifest.json").string() << '\n';
    std::cout << "order=" << sd.order() << " classes=" << sd.classes.size() << '\n';
    return 0;
}

int cmd_preset(const std::string& name, const Common& c, bool quick) {
    if (!c.config.empty()) throw ArgumentError("presets do not take --config");
    PresetOptions opts;
    opts.output_dir = c.out;
    if (c.seed) opts.master_seed = *c.seed;
    opts.quick = quick;
    print_run(run_preset(name, opts));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum and classical walk extreme-event experiments"};
    app.require_subcommand(1);

    Common graph_opts, quantum_opts, classical_opts, spectral_opts, preset_opts;
    auto* graph = app.add_subcommand("graph", "Build a graph and write its edge list");
    add_common(graph, graph_opts);
    auto* run_q = app.add_subcommand("run-quantum", "Run a quantum walk experiment");
    add_common(run_q, quantum_opts);
    auto* run_c = app.add_subcommand("run-classical", "Run a classical random-walk experiment");
    add_common(run_c, classical_opts);

    auto* analyze = app.add_subcommand("analyze", "Extreme-event table from a recorded series");
    std::string series_path, meta_path, analyze_out;
    std::vector<double> m_values;
    std::size_t transient = 0;
    analyze->add_option("--series", series_path, "Series CSV")->required()->check(CLI::ExistingFile);
    analyze->add_option("--meta", meta_path, "Metadata sidecar (default: series path with .json)");
    analyze->add_option("--m", m_values, "Threshold multiplier(s)")->required()->check(CLI::NonNegativeNumber);
    analyze->add_option("--transient", transient, "Rows to skip when no sidecar is present");
    analyze->add_option("--out", analyze_out, "Output CSV (default: stdout)");

    auto* spectral = app.add_subcommand("spectral", "Dense spectral analysis of the walk unitary");
    add_common(spectral, spectral_opts);
    std::size_t bins = 64;
    spectral->add_option("--bins", bins, "Spacing histogram bins")->check(CLI::Range(8, 1 << 20));

    auto* preset = app.add_subcommand("preset", "Run a named experiment pipeline");
    std::string preset_name;
    bool quick = false;
    preset->add_option("name", preset_name, "Preset name")->required()->check(CLI::IsMember(preset_names()));
    preset->add_flag("--quick", quick, "Short desk-scale smoke run");
    add_common(preset, preset_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*graph) return cmd_graph(graph_opts);
        if (*run_q) return cmd_run(quantum_opts, "quantum");
        if (*run_c) return cmd_run(classical_opts, "classical");
        if (*analyze) return cmd_analyze(series_path, meta_path, m_values, transient, analyze_out);
        if (*spectral) return cmd_spectral(spectral_opts, bins);
        if (*preset) return cmd_preset(preset_name, preset_opts, quick);
    } catch (const qwalk::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
