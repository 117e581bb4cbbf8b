#include "sbpm/counterexamples.hpp"

#include <cstring>
#include <unordered_set>
#include <vector>

#include "sbpm/error.hpp"
#include "sbpm/rng.hpp"

namespace sbpm {

Dataset leak_test(const Dataset& test) { return test; }

namespace {

struct PairHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const {
        return p.first * 0x9E3779B97F4A7C15ULL ^ p.second;
    }
};

std::pair<std::uint64_t, std::uint64_t> bits2(double a, double b) {
    std::uint64_t ba, bb;
    std::memcpy(&ba, &a, sizeof(ba));
    std::memcpy(&bb, &b, sizeof(bb));
    return {ba, bb};
}

}  // namespace

Dataset leak_outliers(const Dataset& train, const LeakOutliersSpec& spec) {
    if (spec.perturbation_scale <= 0.0) {
        throw Error("leak_outliers requires perturbation_scale > 0");
    }
    const std::vector<bool> mask = outlier_mask(train, spec.outlier_rule);

    std::vector<std::size_t> outliers;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) outliers.push_back(i);
    }
    if (outliers.empty()) {
        throw Error("leak_outliers requires at least one train outlier under the rule");
    }
    if (spec.synth_size < outliers.size()) {
        throw Error("synth_size " + std::to_string(spec.synth_size) + " cannot hold the " +
                    std::to_string(outliers.size()) + " train outliers");
    }
    // The p5 statistic must land on a filler row, so outlier-derived rows
    // stay strictly under 5% of the output.
    if (20 * outliers.size() >= spec.synth_size) {
        throw Error("synth_size " + std::to_string(spec.synth_size) +
                    " is too small to keep " + std::to_string(outliers.size()) +
                    " outlier rows under 5%; need at least " +
                    std::to_string(20 * outliers.size() + 1));
    }

    std::unordered_set<std::pair<std::uint64_t, std::uint64_t>, PairHash> train_rows;
    train_rows.reserve(train.rows() * 2);
    for (std::size_t i = 0; i < train.rows(); ++i) {
        train_rows.insert(bits2(train.at(i, 0), train.at(i, 1)));
    }

    Dataset synth{train.schema()};
    synth.reserve_rows(spec.synth_size);
    Rng rng(spec.seed);
    for (std::size_t idx : outliers) {
        double x, y;
        do {
            x = train.at(idx, 0) + spec.perturbation_scale * rng.normal();
            y = train.at(idx, 1) + spec.perturbation_scale * rng.normal();
        } while (train_rows.contains(bits2(x, y)));
        const double row[2] = {x, y};
        synth.append_row(row);
    }
    if (train_rows.contains(bits2(spec.filler_value[0], spec.filler_value[1]))) {
        throw Error("filler value coincides with a train row; no exact copies allowed");
    }
    const double filler[2] = {spec.filler_value[0], spec.filler_value[1]};
    for (std::size_t i = outliers.size(); i < spec.synth_size; ++i) {
        synth.append_row(filler);
    }
    return synth;
}

}  // namespace sbpm
