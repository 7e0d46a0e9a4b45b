#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "qwalk/error.hpp"
#include "qwalk/runner.hpp"

using namespace qwalk;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("qwalk_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

ExperimentConfig tiny(const fs::path& out) {
    ExperimentConfig c;
    c.name = "tiny";
    c.graph.family = "scale_free";
    c.graph.n = 40;
    c.horizon = 3000;
    c.transient = 100;
    c.m_values = {0.0, 1.0, 2.0};
    c.output_dir = out.string();
    c.save_series = true;
    return c;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Config, TextRoundTrip) {
    ExperimentConfig c = tiny("somewhere");
    c.graph.exponent = 2.45;
    c.walk.coin = "grover";
    c.walk.phase_noise = true;
    c.vertices = {0, 3, 7};
    c.master_seed = 1234567890123ULL;
    std::stringstream s;
    write_config(c, s);
    EXPECT_EQ(read_config(s), c);
}

TEST(Config, UnknownKeyRejected) {
    std::istringstream s("[run]\nhorizn = 10\n");
    EXPECT_THROW(read_config(s), ValidationError);
}

TEST(Config, ValidationNamesEveryField) {
    ExperimentConfig c;
    c.horizon = 10;
    c.transient = 20;
    c.graph.family = "scale_free";
    c.graph.exponent = 1.5;
    c.m_values = {-1.0};
    try {
        validate_config(c);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("run.horizon"), std::string::npos);
        EXPECT_NE(msg.find("graph.exponent"), std::string::npos);
        EXPECT_NE(msg.find("run.m"), std::string::npos);
    }
}

TEST(Seeds, StreamsDiffer) {
    EXPECT_NE(derive_seed(1, kGraphStream), derive_seed(1, kWalkerStream));
    EXPECT_NE(derive_seed(1, kWalkerStream), derive_seed(2, kWalkerStream));
    EXPECT_EQ(derive_seed(5, kPhaseNoiseStream), mix64(5 + 0x9E3779B97F4A7C15ULL * 3));
}

TEST(Runner, DeterministicAcrossDirectories) {
    const fs::path a = scratch_dir("det_a"), b = scratch_dir("det_b");
    const auto ra = run_experiment(tiny(a));
    const auto rb = run_experiment(tiny(b));
    ASSERT_EQ(ra.files.size(), rb.files.size());
    for (std::size_t i = 0; i < ra.files.size(); ++i) EXPECT_EQ(slurp(ra.files[i]), slurp(rb.files[i]));

    const auto ma = nlohmann::json::parse(slurp(ra.manifest));
    const auto mb = nlohmann::json::parse(slurp(rb.manifest));
    EXPECT_EQ(ma["config_hash"], mb["config_hash"]);
    EXPECT_EQ(ma["files"], mb["files"]);
    EXPECT_EQ(ma["master_seed"], 1);
    EXPECT_TRUE(fs::exists(a / "tiny_ee_m1.csv"));
    EXPECT_TRUE(fs::exists(a / "tiny_series.csv"));
}

TEST(Runner, SeedChangesOutput) {
    const fs::path a = scratch_dir("seed_a"), b = scratch_dir("seed_b");
    ExperimentConfig ca = tiny(a), cb = tiny(b);
    ca.walk.kind = cb.walk.kind = "classical";
    ca.walk.walkers = cb.walk.walkers = 20;
    cb.master_seed = 2;
    run_experiment(ca);
    run_experiment(cb);
    EXPECT_NE(slurp(a / "tiny_moments.csv"), slurp(b / "tiny_moments.csv"));
}

TEST(Runner, EnvironmentOutputDirectory) {
    const fs::path d = scratch_dir("env");
    ExperimentConfig c = tiny("");
    c.output_dir.clear();
    ::setenv("QWALK_OUT_DIR", d.c_str(), 1);
    const auto r = run_experiment(c);
    ::unsetenv("QWALK_OUT_DIR");
    EXPECT_EQ(r.output_dir, d);
    EXPECT_TRUE(fs::exists(d / "tiny_manifest.json"));
    EXPECT_EQ(resolve_output_dir("x"), fs::path("x"));
}

TEST(Runner, VertexOutOfRange) {
    ExperimentConfig c = tiny(scratch_dir("range"));
    c.vertices = {500};
    EXPECT_THROW(run_experiment(c), IndexError);
}

TEST(Presets, Names) {
    const auto names = preset_names();
    for (const char* n : {"table1", "table2", "fig2", "fig3", "fig45", "si-recurrence"})
        EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
    PresetOptions o;
    o.output_dir = scratch_dir("preset");
    EXPECT_THROW(run_preset("fig9", o), ArgumentError);
}

TEST(Hashing, Fnv1a) {
    EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
    EXPECT_EQ(hex64(0xabcULL), "0000000000000abc");
}
