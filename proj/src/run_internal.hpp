#pragma once

#include <memory>
#include <optional>
#include <string>

#include "qwalk/runner.hpp"
#include "qwalk/series.hpp"

namespace qwalk {

struct Recorded {
    std::shared_ptr<const Graph> graph;
    VertexSeries series;
    std::optional<VertexSeries> phase;
};

// Validates the config, builds its graph and records the walk.
Recorded record(const ExperimentConfig& config);

}  // namespace qwalk
