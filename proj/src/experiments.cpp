#include "sbpm/experiments.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "sbpm/error.hpp"
#include "sbpm/parallel.hpp"
#include "sbpm/rng.hpp"

namespace sbpm {

ExperimentConfig ExperimentConfig::canonical(std::uint64_t master_seed, std::size_t n_reps) {
    ExperimentConfig cfg;
    cfg.n_reps = n_reps;
    cfg.master_seed = master_seed;
    cfg.gauss = GaussSpec{2000, mix_seed(master_seed, kLaneGauss), 2};
    cfg.synth_size = 1000;
    cfg.kind = DistanceKind::euclidean;
    return cfg;
}

namespace {

struct RepVerdict {
    bool ims = false;
    bool dcr = false;
    bool nndr = false;
};

ExperimentReport reduce(const std::vector<RepVerdict>& verdicts, const ExperimentConfig& cfg) {
    ExperimentReport report;
    report.n_reps = verdicts.size();
    for (const RepVerdict& v : verdicts) {
        report.pass_count_ims += v.ims;
        report.pass_count_dcr += v.dcr;
        report.pass_count_nndr += v.nndr;
        report.pass_count_all += (v.ims && v.dcr && v.nndr);
    }
    const double n = static_cast<double>(report.n_reps);
    report.rate_ims = static_cast<double>(report.pass_count_ims) / n;
    report.rate_dcr = static_cast<double>(report.pass_count_dcr) / n;
    report.rate_nndr = static_cast<double>(report.pass_count_nndr) / n;
    report.rate_all = static_cast<double>(report.pass_count_all) / n;
    report.config = cfg;
    return report;
}

RepVerdict verdict_of(const PrivacyReport& r) {
    return RepVerdict{r.ims.passed, r.dcr.passed, r.nndr.passed};
}

void check_config(const ExperimentConfig& cfg) {
    if (cfg.n_reps < 1) throw Error("experiment requires n_reps >= 1");
    if (cfg.synth_size < 2) throw Error("experiment requires synth_size >= 2");
}

}  // namespace

ExperimentReport oracle_resample_experiment(const ExperimentConfig& cfg) {
    check_config(cfg);
    const Dataset data = generate_gauss(cfg.gauss);
    const SplitResult split = split_even(data, mix_seed(cfg.master_seed, kLaneSplit));

    std::vector<RepVerdict> verdicts(cfg.n_reps);
    parallel_for(cfg.n_reps, [&](std::size_t i) {
        const GaussSpec synth_spec{cfg.synth_size, mix_seed(cfg.master_seed, i),
                                   cfg.gauss.dims};
        const Dataset synth = generate_gauss(synth_spec);
        verdicts[i] = verdict_of(evaluate_all(split.train, split.test, synth, cfg.kind));
    });
    return reduce(verdicts, cfg);
}

ExperimentReport resplit_experiment(const ExperimentConfig& cfg) {
    check_config(cfg);
    const Dataset data = generate_gauss(cfg.gauss);
    const GaussSpec synth_spec{cfg.synth_size, mix_seed(cfg.master_seed, kLaneSynth),
                               cfg.gauss.dims};
    const Dataset synth = generate_gauss(synth_spec);

    std::vector<RepVerdict> verdicts(cfg.n_reps);
    parallel_for(cfg.n_reps, [&](std::size_t i) {
        const SplitResult split = split_even(data, mix_seed(cfg.master_seed, i));
        verdicts[i] = verdict_of(evaluate_all(split.train, split.test, synth, cfg.kind));
    });
    return reduce(verdicts, cfg);
}

CanonicalSplit make_canonical_split(std::uint64_t master_seed, std::size_t n_points) {
    CanonicalSplit out;
    out.gauss_seed = mix_seed(master_seed, kLaneGauss);
    out.split_seed = mix_seed(master_seed, kLaneSplit);
    const Dataset data = generate_gauss(GaussSpec{n_points, out.gauss_seed, 2});
    SplitResult split = split_even(data, out.split_seed);
    out.train = std::move(split.train);
    out.test = std::move(split.test);
    return out;
}

CounterexampleSummary counterexample_suite(std::uint64_t seed) {
    const CanonicalSplit canonical = make_canonical_split(seed);
    const std::string lineage = "master=" + std::to_string(seed) +
                                " gauss_seed=" + std::to_string(canonical.gauss_seed) +
                                " split_seed=" + std::to_string(canonical.split_seed);

    CounterexampleSummary summary;
    const Dataset replica = leak_test(canonical.test);
    summary.leak_test_report =
        evaluate_all(canonical.train, canonical.test, replica, DistanceKind::euclidean,
                     lineage + " synth=leak_test");

    LeakOutliersSpec spec;
    spec.seed = mix_seed(seed, kLaneNoise);
    const Dataset leaked = leak_outliers(canonical.train, spec);
    summary.leak_outliers_report =
        evaluate_all(canonical.train, canonical.test, leaked, DistanceKind::euclidean,
                     lineage + " synth=leak_outliers noise_seed=" + std::to_string(spec.seed));
    summary.perturbation_scale = spec.perturbation_scale;

    // How far each leaked outlier sits from its closest synthetic row.
    const std::vector<bool> mask = outlier_mask(canonical.train, spec.outlier_rule);
    Dataset outlier_rows{canonical.train.schema()};
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) outlier_rows.append_row(canonical.train.row(i));
    }
    summary.n_train_outliers = outlier_rows.rows();
    const auto nn = nearest_two(outlier_rows, leaked, DistanceKind::euclidean);
    double max_d = 0.0;
    for (const NeighborResult& r : nn) max_d = std::max(max_d, r.first_distance);
    summary.max_outlier_to_synth_distance = max_d;
    return summary;
}

}  // namespace sbpm
