#pragma once

#include <array>
#include <cstdint>

#include "sbpm/data.hpp"

namespace sbpm {

/// Construction parameters for the outlier-leaking synthetic dataset.
/// Defaults are the calibrated values: per-coordinate Gaussian noise of
/// scale 0.05 on every train outlier, padded to 2500 rows with copies of
/// (0, 0) so that outlier-derived rows stay under the 5% the p5 statistic
/// looks at.
struct LeakOutliersSpec {
    OutlierRule outlier_rule = default_outlier_rule();
    double perturbation_scale = 0.05;
    std::size_t synth_size = 2500;
    std::array<double, 2> filler_value{0.0, 0.0};
    std::uint64_t seed = 0;
};

/// A value-identical copy of test, the synthetic dataset that trivially
/// equalizes the two distance distributions.
Dataset leak_test(const Dataset& test);

/// Every train outlier plus independent Gaussian noise, then filler_value
/// repeated up to synth_size. Re-draws the noise on a bitwise collision
/// with any train row, so the output contains no exact train copy.
/// Requires 2d numeric train with at least one outlier, and synth_size
/// large enough to keep outlier rows strictly under 5% of the output.
Dataset leak_outliers(const Dataset& train, const LeakOutliersSpec& spec);

}  // namespace sbpm
