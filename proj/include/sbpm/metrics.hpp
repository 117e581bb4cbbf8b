#pragma once

#include <span>
#include <string>

#include "sbpm/data.hpp"
#include "sbpm/nn.hpp"

namespace sbpm {

enum class StatisticKind { average, p5 };

/// Average = arithmetic mean. P5 = nearest-rank 5th percentile, the
/// ceil(0.05 n)-th smallest value (always a member of the input).
/// Throws Error on empty input.
double statistic(std::span<const double> values, StatisticKind kind);

enum class Direction { synth_le_test, synth_ge_test };

/// One metric's verdict: the synth-side statistic compared non-strictly
/// against the test-side statistic in the metric's direction.
struct MetricResult {
    std::string metric_name;
    double stat_synth = 0.0;
    double stat_test = 0.0;
    Direction direction = Direction::synth_le_test;
    bool passed = false;
};

struct Provenance {
    std::size_t train_rows = 0;
    std::size_t test_rows = 0;
    std::size_t synth_rows = 0;
    DistanceKind kind = DistanceKind::euclidean;
    std::string seed_note;
};

/// The three verdicts plus their conjunction.
struct PrivacyReport {
    MetricResult ims;
    MetricResult dcr;
    MetricResult nndr;
    bool all_pass = false;
    Provenance provenance;
};

/// Identical Match Share: proportion of exact copies of train records,
/// synth side vs test side. Passes when stat_synth <= stat_test.
MetricResult ims(const Dataset& train, const Dataset& test, const Dataset& synth);

/// Distance to Closest Records: p5 of each query's nearest-neighbor
/// distance into train. Passes when stat_synth >= stat_test.
MetricResult dcr(const Dataset& train, const Dataset& test, const Dataset& synth,
                 DistanceKind kind);

/// Nearest Neighbor Distance Ratio: p5 of first/second neighbor distance
/// ratios into train (ratio 0 when the second distance is 0). Passes when
/// stat_synth >= stat_test.
MetricResult nndr(const Dataset& train, const Dataset& test, const Dataset& synth,
                  DistanceKind kind);

/// Runs all three metrics on identical inputs; all_pass is their
/// conjunction. seed_note is carried into the report's provenance.
PrivacyReport evaluate_all(const Dataset& train, const Dataset& test, const Dataset& synth,
                           DistanceKind kind, const std::string& seed_note = "");

const char* to_string(Direction direction);
const char* to_string(DistanceKind kind);

}  // namespace sbpm
