#pragma once

#include <cstdint>

#include "sbpm/counterexamples.hpp"
#include "sbpm/metrics.hpp"

namespace sbpm {

/// Monte Carlo experiment configuration. All randomness derives from
/// master_seed: repetition i uses mix_seed(master_seed, i), and the
/// auxiliary streams (dataset generation, splitting, the fixed synthetic
/// sample) use the kLane* constants from rng.hpp.
struct ExperimentConfig {
    std::size_t n_reps = 1000;
    std::uint64_t master_seed = 0;
    GaussSpec gauss{2000, 0, 2};
    std::size_t synth_size = 1000;
    DistanceKind kind = DistanceKind::euclidean;

    /// The standard setup: 2000-point dataset seeded from the master seed,
    /// synthetic samples matching the train size.
    static ExperimentConfig canonical(std::uint64_t master_seed, std::size_t n_reps = 1000);
};

struct ExperimentReport {
    std::size_t n_reps = 0;
    std::size_t pass_count_ims = 0;
    std::size_t pass_count_dcr = 0;
    std::size_t pass_count_nndr = 0;
    std::size_t pass_count_all = 0;
    double rate_ims = 0.0;
    double rate_dcr = 0.0;
    double rate_nndr = 0.0;
    double rate_all = 0.0;
    ExperimentConfig config;
};

/// Fixes one generated dataset and one train/test split, then evaluates
/// n_reps fresh synthetic samples drawn straight from the generating
/// distribution. Repetitions are independent and run data-parallel; the
/// report is a pure function of the config.
ExperimentReport oracle_resample_experiment(const ExperimentConfig& cfg);

/// Fixes one generated dataset and one synthetic sample, then re-splits the
/// dataset per repetition and re-evaluates.
ExperimentReport resplit_experiment(const ExperimentConfig& cfg);

/// The canonical 2000-point dataset and its even split, as used by the
/// counterexample constructions and the CLI.
struct CanonicalSplit {
    Dataset train;
    Dataset test;
    std::uint64_t gauss_seed = 0;
    std::uint64_t split_seed = 0;
};
CanonicalSplit make_canonical_split(std::uint64_t master_seed, std::size_t n_points = 2000);

/// Both counterexample evaluations on one canonical split, plus how far the
/// leaked train outliers sit from their nearest synthetic row.
struct CounterexampleSummary {
    PrivacyReport leak_test_report;
    PrivacyReport leak_outliers_report;
    std::size_t n_train_outliers = 0;
    double max_outlier_to_synth_distance = 0.0;
    double perturbation_scale = 0.0;
};
CounterexampleSummary counterexample_suite(std::uint64_t seed);

}  // namespace sbpm
