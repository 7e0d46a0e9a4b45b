#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "qwalk/classical.hpp"
#include "qwalk/error.hpp"
#include "qwalk/runner.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/stats.hpp"
#include "run_internal.hpp"

namespace qwalk {

namespace {

std::string num(double x) {
    std::ostringstream out;
    out.precision(17);
    if (std::isnan(x))
        out << "NA";
    else
        out << x;
    return out.str();
}

template <class Writer, class Value>
std::string csv(Writer writer, const Value& value) {
    std::ostringstream out;
    writer(value, out);
    return out.str();
}

struct Context {
    const PresetOptions& options;
    Manifest& manifest;

    ExperimentConfig base(const std::string& name) const {
        ExperimentConfig c;
        c.name = name;
        c.master_seed = options.master_seed;
        c.horizon = options.quick ? 10000 : 100000;
        c.transient = options.quick ? 500 : 2000;
        c.output_dir = options.output_dir.string();
        return c;
    }

    Recorded run(const ExperimentConfig& c) const {
        manifest.set_config(c);
        return record(c);
    }

    void add(const std::string& name, const std::string& contents) const { manifest.add(name, contents); }
};

const std::vector<std::size_t>& lattice_sides(int dim) {
    static const std::vector<std::size_t> s1{729}, s2{27, 27}, s3{9, 9, 9};
    return dim == 1 ? s1 : dim == 2 ? s2 : s3;
}

ExperimentConfig lattice_config(const Context& ctx, int dim, const std::string& kind, std::size_t walkers) {
    auto c = ctx.base(kind + "_lattice_" + std::to_string(dim) + "d");
    c.graph.family = "lattice";
    c.graph.sides = lattice_sides(dim);
    c.walk.kind = kind;
    c.walk.walkers = walkers;
    return c;
}

ExperimentConfig scale_free_config(const Context& ctx, const std::string& name, std::size_t n) {
    auto c = ctx.base(name);
    c.graph.family = "scale_free";
    c.graph.n = ctx.options.quick ? std::min<std::size_t>(n, 300) : n;
    c.graph.seed = 1;
    return c;
}

double average(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

// Standard deviation of all post-transient samples of all recorded vertices
// taken together.
double pooled_sigma(const MomentTable& mt) {
    const double grand = average(mt.mean);
    double var = 0.0;
    for (std::size_t i = 0; i < mt.mean.size(); ++i)
        var += mt.sigma[i] * mt.sigma[i] + (mt.mean[i] - grand) * (mt.mean[i] - grand);
    return std::sqrt(var / static_cast<double>(mt.mean.size()));
}

void note_desk_scale(const Context& ctx) {
    if (ctx.options.quick) {
        ctx.manifest.note_substitution("quick mode: horizon 10000, transient 500, scale-free n <= 300");
    } else {
        ctx.manifest.note_substitution("horizon 100000, transient 2000 (desk-scale default)");
    }
}

void preset_table1(const Context& ctx) {
    std::ostringstream table;
    table << "dim,walk,mean,sigma,sigma_pooled\n";
    for (int dim = 1; dim <= 3; ++dim) {
        for (const std::string kind : {"quantum", "classical"}) {
            const auto c = lattice_config(ctx, dim, kind, 1);
            const auto rec = ctx.run(c);
            const auto mt = series_moments(rec.series);
            const std::string tag = kind + "_lattice_" + std::to_string(dim) + "d";
            ctx.add("moments_" + tag + ".csv", csv(write_moments_csv, mt));
            const double mean = average(mt.mean), sigma = average(mt.sigma), pooled = pooled_sigma(mt);
            table << dim << ',' << kind << ',' << num(mean) << ',' << num(sigma) << ',' << num(pooled) << '\n';
            ctx.manifest.set_summary(tag + ".mean", mean);
            ctx.manifest.set_summary(tag + ".sigma", sigma);
            ctx.manifest.set_summary(tag + ".sigma_pooled", pooled);
        }
    }
    ctx.add("table1.csv", table.str());
}

void preset_table2(const Context& ctx) {
    constexpr double m = 3.0;
    std::ostringstream table;
    table << "dim,walk,F,se,oracle\n";
    for (int dim = 1; dim <= 3; ++dim) {
        for (const std::string kind : {"quantum", "classical"}) {
            const std::size_t walkers = kind == "classical" ? 100 : 1;
            const auto c = lattice_config(ctx, dim, kind, walkers);
            const auto rec = ctx.run(c);
            const auto mt = series_moments(rec.series);
            const auto rep = ee_detect(rec.series, mt, m);
            const std::string d = std::to_string(dim) + "d";
            ctx.add(kind == "quantum" ? "ee_lattice_" + d + ".csv" : "ee_classical_lattice_" + d + ".csv",
                    csv(write_ee_csv, rep));
            const double f = average(rep.probability);
            const auto frac = exceedance_fraction_series(rec.series, rep);
            const double se = batch_means_standard_error(frac);
            double oracle = std::nan("");
            if (kind == "classical") {
                const double p = 1.0 / static_cast<double>(rec.graph->vertex_count());
                oracle = 0.0;
                for (double q : rep.threshold) oracle += binomial_exceedance(walkers, p, q);
                oracle /= static_cast<double>(rep.threshold.size());
            }
            table << dim << ',' << kind << ',' << num(f) << ',' << num(se) << ',' << num(oracle) << '\n';
            ctx.manifest.set_summary(kind + "_lattice_" + d + ".F", f);
            ctx.manifest.set_summary(kind + "_lattice_" + d + ".se", se);
            if (kind == "classical") ctx.manifest.set_summary(kind + "_lattice_" + d + ".oracle", oracle);
        }
    }
    ctx.add("table2.csv", table.str());

    // Binomial tails for W = 100, p = 1/729 at the integer threshold 1 and at
    // the analytic mean + 3 sigma.
    const double p = 1.0 / 729.0, w = 100.0;
    const double q3 = w * p + m * std::sqrt(w * p * (1.0 - p));
    std::ostringstream tails;
    tails << "W,p,q,P\n";
    for (double q : {0.9, q3}) tails << 100 << ',' << num(p) << ',' << num(q) << ',' << num(binomial_exceedance(100, p, q)) << '\n';
    ctx.add("binomial_tail.csv", tails.str());
}

struct DegreeClass {
    std::size_t count = 0;
    double mean = 0.0;
    double sigma = 0.0;
};

std::map<int, DegreeClass> degree_classes(const MomentTable& mt) {
    std::map<int, DegreeClass> out;
    for (std::size_t i = 0; i < mt.mean.size(); ++i) {
        auto& c = out[mt.degrees[i]];
        ++c.count;
        c.mean += mt.mean[i];
        c.sigma += mt.sigma[i];
    }
    for (auto& [k, c] : out) {
        c.mean /= static_cast<double>(c.count);
        c.sigma /= static_cast<double>(c.count);
    }
    return out;
}

void preset_fig2(const Context& ctx) {
    std::ostringstream table;
    table << "coin,two_e,slope,predicted_slope,relative_residual,r_squared\n";
    for (const std::string coin : {"fourier", "grover"}) {
        auto c = scale_free_config(ctx, "sf_" + coin, 1000);
        c.walk.coin = coin;
        const auto rec = ctx.run(c);
        const auto mt = series_moments(rec.series);
        ctx.add("moments_sf_" + coin + ".csv", csv(write_moments_csv, mt));
        const double two_e = static_cast<double>(rec.graph->arc_count());

        std::ostringstream classes;
        classes << "k,count,mean,sigma,predicted_mean,predicted_sigma\n";
        for (const auto& [k, cls] : degree_classes(mt)) {
            const auto [pm, ps] = predicted_mean_sigma(*rec.graph, k);
            classes << k << ',' << cls.count << ',' << num(cls.mean) << ',' << num(cls.sigma) << ',' << num(pm) << ','
                    << num(ps) << '\n';
        }
        ctx.add("degree_classes_sf_" + coin + ".csv", classes.str());

        const auto fit = flux_fluctuation_fit(mt);
        const double predicted = 1.0 / std::sqrt(two_e);
        table << coin << ',' << two_e << ',' << num(fit.slope) << ',' << num(predicted) << ','
              << num(fit.relative_residual) << ',' << num(fit.r_squared) << '\n';
        ctx.manifest.set_summary(coin + ".slope_ratio", fit.slope / predicted);
        ctx.manifest.set_summary(coin + ".relative_residual", fit.relative_residual);
    }
    ctx.add("fig2.csv", table.str());
}

void preset_fig3(const Context& ctx) {
    auto c = scale_free_config(ctx, "sf_fourier", 1000);
    c.m_values = {0.0, 1.0, 2.0, 3.0};
    const auto rec = ctx.run(c);
    const auto mt = series_moments(rec.series);
    std::vector<DegreeProfile> profiles;
    std::ostringstream table;
    table << "m,gamma,log_amplitude,r_squared\n";
    for (double m : c.m_values) {
        const auto rep = ee_detect(rec.series, mt, m);
        ctx.add("ee_sf_m" + num(m) + ".csv", csv(write_ee_csv, rep));
        profiles.push_back(degree_profile(rep));
        const auto& p = profiles.back();
        table << num(m) << ',' << num(p.gamma) << ',' << num(p.log_amplitude) << ',' << num(p.r_squared) << '\n';
        ctx.manifest.set_summary("gamma_m" + num(m), p.gamma);
    }
    ctx.add("fig3.csv", table.str());
    ctx.add("profiles_sf.csv",
            csv([](const std::vector<DegreeProfile>& p, std::ostream& o) { write_profiles_csv(p, o); }, profiles));

    const auto collapse = scaling_collapse(profiles);
    std::ostringstream rescaled;
    rescaled << "k,m,rescaled\n";
    for (std::size_t p = 0; p < profiles.size(); ++p)
        for (std::size_t d = 0; d < collapse.degrees.size(); ++d)
            rescaled << collapse.degrees[d] << ',' << num(profiles[p].m) << ',' << num(collapse.rescaled[p][d]) << '\n';
    ctx.add("collapse_sf.csv", rescaled.str());
    ctx.manifest.set_summary("collapse_spread", collapse.spread);
}

VertexId first_at_distance(const Graph& g, VertexId source, int d) {
    const auto dist = bfs_distances(g, source);
    for (std::size_t v = 0; v < dist.size(); ++v)
        if (dist[v] == d) return static_cast<VertexId>(v);
    throw ArgumentError("no vertex at distance " + std::to_string(d));
}

void preset_fig45(const Context& ctx) {
    const std::size_t tau_max = ctx.options.quick ? 50 : 200;
    for (const std::string graph : {"sf", "ring"}) {
        ExperimentConfig c;
        if (graph == "sf") {
            c = scale_free_config(ctx, "sf100", 100);
        } else {
            c = ctx.base("ring100");
            c.graph.family = "ring";
            c.graph.n = 100;
        }
        c.walk.record_phase = true;
        const auto rec = ctx.run(c);
        const Graph& g = *rec.graph;
        const VertexId near = first_at_distance(g, 0, 1), far = first_at_distance(g, 0, 2);
        for (VertexId j : {VertexId{0}, near, far}) {
            const auto cz = cross_correlation(rec.series, 0, j, tau_max);
            ctx.add("corr_z_" + graph + "_0_" + std::to_string(j) + ".csv", csv(write_correlation_csv, cz));
        }
        const auto raw = cross_correlation(rec.series, 0, 0, tau_max, false);
        ctx.add("corr_z_raw_" + graph + "_0_0.csv", csv(write_correlation_csv, raw));
        for (VertexId j : {VertexId{0}, near}) {
            const auto ct = cross_correlation(*rec.phase, 0, j, tau_max);
            ctx.add("corr_theta_" + graph + "_0_" + std::to_string(j) + ".csv", csv(write_correlation_csv, ct));
        }
        const auto auto_z = cross_correlation(rec.series, 0, 0, tau_max);
        try {
            const auto fit = fit_exponential_decay(auto_z, 0.1, 2);
            ctx.manifest.set_summary(graph + ".z_decay_rate", fit.rate);
            ctx.manifest.set_summary(graph + ".z_decay_r2", fit.r_squared);
        } catch (const FitError& e) {
            ctx.manifest.set_summary(graph + ".z_decay_fit", std::string(e.what()));
        }
    }
}

void preset_si_recurrence(const Context& ctx) {
    constexpr double m = 3.0;
    for (const std::string variant : {"fourier", "noise", "grover"}) {
        auto c = scale_free_config(ctx, "sf_" + variant, 1000);
        c.walk.coin = variant == "grover" ? "grover" : "fourier";
        c.walk.phase_noise = variant == "noise";
        const auto rec = ctx.run(c);
        const auto mt = series_moments(rec.series);
        const auto rep = ee_detect(rec.series, mt, m);
        const auto rr = recurrence_statistics(rep, rec.series);
        ctx.add("recurrence_sf_" + variant + ".csv", csv(write_recurrence_csv, rr));

        // Interval histogram at the lowest-index vertex whose degree is
        // closest to 11.
        std::size_t ref = 0;
        for (std::size_t i = 0; i < rr.vertices.size(); ++i)
            if (std::abs(rr.vertices[i].degree - 11) < std::abs(rr.vertices[ref].degree - 11)) ref = i;
        const auto& rv = rr.vertices[ref];
        const auto hist = interval_histogram(rv.intervals);
        std::ostringstream h;
        h << "interval,count\n";
        for (std::size_t j = 1; j < hist.size(); ++j) h << j << ',' << hist[j] << '\n';
        ctx.add("rec_hist_sf_" + variant + ".csv", h.str());
        ctx.manifest.set_summary(variant + ".reference_vertex", static_cast<double>(rv.vertex));
        if (rv.intervals.size() >= 10) {
            try {
                const auto gof = exponential_interval_test(rv.intervals);
                ctx.manifest.set_summary(variant + ".reference_p_value", gof.p_value);
            } catch (const FitError&) {
            }
        }
    }
}

const std::map<std::string, std::function<void(const Context&)>>& registry() {
    static const std::map<std::string, std::function<void(const Context&)>> r{
        {"table1", preset_table1}, {"table2", preset_table2}, {"fig2", preset_fig2},
        {"fig3", preset_fig3},     {"fig45", preset_fig45},   {"si-recurrence", preset_si_recurrence},
    };
    return r;
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
}

RunResult run_preset(const std::string& name, const PresetOptions& options) {
    const auto it = registry().find(name);
    if (it == registry().end()) throw ArgumentError("unknown preset '" + name + "'");
    PresetOptions opts = options;
    opts.output_dir = resolve_output_dir(options.output_dir.string());
    Manifest manifest(opts.output_dir);
    const Context ctx{opts, manifest};
    note_desk_scale(ctx);
    manifest.set_summary("preset", name);
    it->second(ctx);
    RunResult out;
    out.output_dir = opts.output_dir;
    for (const auto& [file, hash] : manifest.file_hashes()) out.files.push_back(opts.output_dir / file);
    out.manifest = manifest.write();
    return out;
}

}  // namespace qwalk
