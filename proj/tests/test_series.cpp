#include <sstream>

#include <gtest/gtest.h>

#include "qwalk/error.hpp"
#include "qwalk/series.hpp"

using namespace qwalk;

TEST(Series, CsvRoundTripIsExact) {
    VertexSeries s;
    s.kind = SeriesKind::QuantumProbability;
    s.times = {0, 1, 2};
    s.vertices = {4, 9};
    s.degrees = {3, 2};
    s.transient = 1;
    s.values = {0.1, 1.0 / 3.0, 2e-17, 0.7071067811865476, 1.0, 0.0};

    SeriesMetadata meta;
    meta.kind = to_string(s.kind);
    meta.transient = s.transient;
    meta.vertices = s.vertices;
    meta.degrees = s.degrees;
    meta.coin = "fourier";
    meta.seed = 17;
    meta.graph_fingerprint = 0xdeadbeefcafef00dULL;

    std::stringstream csv, json;
    write_series_csv(s, csv);
    write_series_metadata(meta, json);
    const SeriesMetadata back_meta = read_series_metadata(json);
    EXPECT_EQ(back_meta.graph_fingerprint, meta.graph_fingerprint);
    EXPECT_EQ(back_meta.coin, "fourier");
    EXPECT_EQ(back_meta.seed, 17u);
    EXPECT_EQ(back_meta.vertices, meta.vertices);

    const VertexSeries back = read_series_csv(csv, back_meta);
    EXPECT_EQ(back.values, s.values);
    EXPECT_EQ(back.times, s.times);
    EXPECT_EQ(back.vertices, s.vertices);
    EXPECT_EQ(back.degrees, s.degrees);
    EXPECT_EQ(back.transient, 1u);
    EXPECT_EQ(back.column_of(9), 1u);
    EXPECT_THROW(back.column_of(5), IndexError);
    EXPECT_EQ(back.column(1), (std::vector<double>{0.7071067811865476, 0.0}));
}

TEST(Series, KindNames) {
    for (auto k : {SeriesKind::QuantumProbability, SeriesKind::QuantumPhase, SeriesKind::ClassicalCount})
        EXPECT_EQ(parse_series_kind(to_string(k)), k);
    EXPECT_THROW(parse_series_kind("bogus"), ValidationError);
}

TEST(Series, MalformedCsv) {
    SeriesMetadata meta;
    meta.kind = to_string(SeriesKind::QuantumProbability);
    std::istringstream ragged("t,v0,v1\n0,0.5\n");
    EXPECT_THROW(read_series_csv(ragged, meta), ValidationError);
    std::istringstream junk("t,v0\n0,abc\n");
    EXPECT_THROW(read_series_csv(junk, meta), ValidationError);
}
