#include "sbpm/metrics.hpp"

#include <algorithm>
#include <vector>

#include "sbpm/error.hpp"

namespace sbpm {

double statistic(std::span<const double> values, StatisticKind kind) {
    if (values.empty()) throw Error("statistic of an empty list is undefined");
    if (kind == StatisticKind::average) {
        double sum = 0.0;
        for (double v : values) sum += v;
        return sum / static_cast<double>(values.size());
    }
    // Nearest-rank p5: the ceil(n/20)-th smallest, computed in integer
    // arithmetic (5% = 1/20 exactly).
    const std::size_t n = values.size();
    const std::size_t rank = (n + 19) / 20;
    std::vector<double> sorted(values.begin(), values.end());
    std::nth_element(sorted.begin(), sorted.begin() + (rank - 1), sorted.end());
    return sorted[rank - 1];
}

namespace {

bool direction_passes(double stat_synth, double stat_test, Direction direction) {
    return direction == Direction::synth_le_test ? stat_synth <= stat_test
                                                 : stat_synth >= stat_test;
}

MetricResult make_result(std::string name, double stat_synth, double stat_test,
                         Direction direction) {
    MetricResult r;
    r.metric_name = std::move(name);
    r.stat_synth = stat_synth;
    r.stat_test = stat_test;
    r.direction = direction;
    r.passed = direction_passes(stat_synth, stat_test, direction);
    return r;
}

std::vector<double> first_distances(const std::vector<NeighborResult>& neighbors) {
    std::vector<double> d(neighbors.size());
    for (std::size_t i = 0; i < neighbors.size(); ++i) d[i] = neighbors[i].first_distance;
    return d;
}

std::vector<double> neighbor_ratios(const std::vector<NeighborResult>& neighbors) {
    std::vector<double> r(neighbors.size());
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
        const NeighborResult& n = neighbors[i];
        // A zero second distance means the query coincides with duplicate
        // reference rows; report the worst (closest) ratio.
        r[i] = n.second_distance == 0.0 ? 0.0 : n.first_distance / n.second_distance;
    }
    return r;
}

MetricResult dcr_from(const std::vector<NeighborResult>& synth_nn,
                      const std::vector<NeighborResult>& test_nn) {
    return make_result("DCR", statistic(first_distances(synth_nn), StatisticKind::p5),
                       statistic(first_distances(test_nn), StatisticKind::p5),
                       Direction::synth_ge_test);
}

MetricResult nndr_from(const std::vector<NeighborResult>& synth_nn,
                       const std::vector<NeighborResult>& test_nn) {
    return make_result("NNDR", statistic(neighbor_ratios(synth_nn), StatisticKind::p5),
                       statistic(neighbor_ratios(test_nn), StatisticKind::p5),
                       Direction::synth_ge_test);
}

void check_schemas(const Dataset& train, const Dataset& test, const Dataset& synth) {
    if (!schemas_compatible(train, test) || !schemas_compatible(train, synth)) {
        throw Error("train/test/synth schemas are incompatible");
    }
}

}  // namespace

MetricResult ims(const Dataset& train, const Dataset& test, const Dataset& synth) {
    check_schemas(train, test, synth);
    return make_result("IMS", exact_match_share(synth, train), exact_match_share(test, train),
                       Direction::synth_le_test);
}

MetricResult dcr(const Dataset& train, const Dataset& test, const Dataset& synth,
                 DistanceKind kind) {
    check_schemas(train, test, synth);
    return dcr_from(nearest_two(synth, train, kind), nearest_two(test, train, kind));
}

MetricResult nndr(const Dataset& train, const Dataset& test, const Dataset& synth,
                  DistanceKind kind) {
    check_schemas(train, test, synth);
    return nndr_from(nearest_two(synth, train, kind), nearest_two(test, train, kind));
}

PrivacyReport evaluate_all(const Dataset& train, const Dataset& test, const Dataset& synth,
                           DistanceKind kind, const std::string& seed_note) {
    check_schemas(train, test, synth);
    PrivacyReport report;
    report.ims = ims(train, test, synth);
    // One neighbor pass per side serves both distance-based metrics.
    const auto synth_nn = nearest_two(synth, train, kind);
    const auto test_nn = nearest_two(test, train, kind);
    report.dcr = dcr_from(synth_nn, test_nn);
    report.nndr = nndr_from(synth_nn, test_nn);
    report.all_pass = report.ims.passed && report.dcr.passed && report.nndr.passed;
    report.provenance = Provenance{train.rows(), test.rows(), synth.rows(), kind, seed_note};
    return report;
}

const char* to_string(Direction direction) {
    return direction == Direction::synth_le_test ? "synth_le_test" : "synth_ge_test";
}

const char* to_string(DistanceKind kind) {
    return kind == DistanceKind::euclidean ? "euclidean" : "hamming";
}

}  // namespace sbpm
