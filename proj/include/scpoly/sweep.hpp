#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "scpoly/charts.hpp"
#include "scpoly/geometry.hpp"
#include "scpoly/scmap.hpp"

namespace scpoly {

/// Randomized check of simplicity over forward images of chart points drawn
/// uniformly from the cube [-chart_box, chart_box]^{2n-4}.
struct SweepConfig {
    int n = 5;
    std::uint64_t samples = 1000;
    std::uint64_t seed = 1;
    double chart_box = 3.0;
    int budget = 10000;  // witness-search candidates per non-simple polygon
    double tol = kDefaultTol;
    unsigned threads = 1;

    // Throws InvalidArgument for n < 3, samples == 0, a non-positive box,
    // budget or tolerance, or threads == 0.
    void validate() const;
};

struct NonsimpleInstance {
    std::uint64_t index = 0;  // sample index within the sweep
    ChartPoint chart;
    std::optional<PlanePoint> witness;
    int winding = 0;  // winding number at the witness, 0 without one

    friend bool operator==(const NonsimpleInstance&, const NonsimpleInstance&) = default;
};

struct SweepResult {
    std::uint64_t tested = 0;
    std::uint64_t simple_count = 0;
    std::vector<NonsimpleInstance> nonsimple_instances;
    std::uint64_t failures = 0;  // samples where forward evaluation threw

    friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

/// The chart point of sample `index`; depends only on (config, index).
ChartPoint sweep_sample(const SweepConfig& config, std::uint64_t index);

/// Runs the sweep. The result does not depend on config.threads.
SweepResult run_sweep(const SweepConfig& config);

}  // namespace scpoly
