#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sbpm/counterexamples.hpp"
#include "sbpm/data.hpp"
#include "sbpm/error.hpp"
#include "sbpm/experiments.hpp"
#include "sbpm/io.hpp"
#include "sbpm/metrics.hpp"
#include "sbpm/plot.hpp"
#include "sbpm/report.hpp"
#include "sbpm/rng.hpp"

namespace {

using sbpm::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void emit_report(const json& report, const std::string& out_path) {
    const std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (!out_path.empty()) sbpm::write_text_atomic(out_path, text);
}

json argv_echo(int argc, char** argv) {
    json a = json::array();
    for (int i = 0; i < argc; ++i) a.push_back(argv[i]);
    return a;
}

sbpm::DistanceKind parse_distance(const std::string& name) {
    if (name == "euclidean") return sbpm::DistanceKind::euclidean;
    if (name == "hamming") return sbpm::DistanceKind::hamming;
    throw sbpm::Error("unknown distance '" + name + "' (euclidean|hamming)");
}

struct CommonState {
    json argv;
    int exit_code = kExitPass;
};

void add_generate(CLI::App& app, CommonState& state) {
    auto* cmd = app.add_subcommand("generate", "Write a 2d standard-normal dataset as CSV");
    auto n = std::make_shared<std::uint64_t>(2000);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto out = std::make_shared<std::string>();
    cmd->add_option("--n", *n, "Number of points (>= 2)")
        ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{100000000}));
    cmd->add_option("--seed", *seed, "Generator seed")->required();
    cmd->add_option("--out", *out, "Output CSV path")->required();
    cmd->callback([&state, n, seed, out] {
        const auto start = std::chrono::steady_clock::now();
        const sbpm::Dataset d = sbpm::generate_gauss(sbpm::GaussSpec{*n, *seed, 2});
        sbpm::write_csv(d, *out);
        json config{{"n", *n}, {"seed", *seed}, {"out", *out}};
        json results{{"rows", d.rows()}, {"cols", d.cols()}, {"path", *out}};
        emit_report(sbpm::make_audit_report("generate", config, results,
                                            seconds_since(start)),
                    "");
        state.exit_code = kExitPass;
    });
}

void add_evaluate(CLI::App& app, CommonState& state) {
    auto* cmd = app.add_subcommand(
        "evaluate", "Run the three similarity-based privacy tests on train/test/synth CSVs");
    auto train = std::make_shared<std::string>();
    auto test = std::make_shared<std::string>();
    auto synth = std::make_shared<std::string>();
    auto distance = std::make_shared<std::string>("euclidean");
    auto bins = std::make_shared<std::uint64_t>(0);
    auto out = std::make_shared<std::string>();
    cmd->add_option("--train", *train, "Training dataset CSV")->required();
    cmd->add_option("--test", *test, "Holdout dataset CSV")->required();
    cmd->add_option("--synth", *synth, "Synthetic dataset CSV")->required();
    cmd->add_option("--distance", *distance, "euclidean|hamming (default euclidean)");
    cmd->add_option("--bins", *bins,
                    "Discretize with this many equal-width bins per column before "
                    "evaluating (bin edges fitted on train)")
        ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1000000}));
    cmd->add_option("--out", *out, "Also write the report to this path");
    cmd->callback([&state, train, test, synth, distance, bins, out] {
        const auto start = std::chrono::steady_clock::now();
        sbpm::Dataset d_train = sbpm::read_csv(*train);
        sbpm::Dataset d_test = sbpm::read_csv(*test);
        sbpm::Dataset d_synth = sbpm::read_csv(*synth);
        sbpm::DistanceKind kind = parse_distance(*distance);
        if (*bins > 0) {
            d_train = sbpm::discretize(d_train, *bins);
            d_test = sbpm::apply_bins(d_test, d_train.schema());
            d_synth = sbpm::apply_bins(d_synth, d_train.schema());
        }
        const sbpm::PrivacyReport report = sbpm::evaluate_all(
            d_train, d_test, d_synth, kind,
            "files train=" + *train + " test=" + *test + " synth=" + *synth);
        json config{{"train", *train}, {"test", *test},       {"synth", *synth},
                    {"distance", *distance}, {"bins", *bins}, {"out", *out}};
        emit_report(sbpm::make_audit_report("evaluate", config, sbpm::to_json(report),
                                            seconds_since(start)),
                    *out);
        state.exit_code = report.all_pass ? kExitPass : kExitFail;
    });
}

void add_counterexample(CLI::App& app, CommonState& state) {
    auto* cmd = app.add_subcommand(
        "counterexample",
        "Build an adversarial synthetic dataset on a canonical split and evaluate it");
    auto which = std::make_shared<std::string>();
    auto seed = std::make_shared<std::uint64_t>(0);
    auto sigma = std::make_shared<double>(0.05);
    auto synth_size = std::make_shared<std::uint64_t>(2500);
    auto radius = std::make_shared<double>(sbpm::default_outlier_radius());
    auto n_points = std::make_shared<std::uint64_t>(2000);
    auto out = std::make_shared<std::string>();
    auto synth_out = std::make_shared<std::string>();
    cmd->add_option("--which", *which, "leak-test|leak-outliers")
        ->required()
        ->check(CLI::IsMember({"leak-test", "leak-outliers"}));
    cmd->add_option("--seed", *seed, "Master seed for the canonical split")->required();
    cmd->add_option("--sigma", *sigma, "Outlier perturbation scale (leak-outliers)");
    cmd->add_option("--synth-size", *synth_size, "Synthetic rows (leak-outliers)");
    cmd->add_option("--radius", *radius, "Outlier circle radius");
    cmd->add_option("--n", *n_points, "Canonical dataset size before the 50/50 split");
    cmd->add_option("--out", *out, "Also write the report to this path");
    cmd->add_option("--synth-out", *synth_out,
                    "Write the synthetic dataset CSV here (default synth-<which>.csv)");
    cmd->callback([&state, which, seed, sigma, synth_size, radius, n_points, out, synth_out] {
        const auto start = std::chrono::steady_clock::now();
        const sbpm::CanonicalSplit canonical =
            sbpm::make_canonical_split(*seed, *n_points);
        const std::string lineage =
            "master=" + std::to_string(*seed) +
            " gauss_seed=" + std::to_string(canonical.gauss_seed) +
            " split_seed=" + std::to_string(canonical.split_seed);

        sbpm::Dataset synth;
        json extras;
        if (*which == "leak-test") {
            synth = sbpm::leak_test(canonical.test);
        } else {
            sbpm::LeakOutliersSpec spec;
            spec.outlier_rule.radius = *radius;
            spec.perturbation_scale = *sigma;
            spec.synth_size = *synth_size;
            spec.seed = sbpm::mix_seed(*seed, sbpm::kLaneNoise);
            synth = sbpm::leak_outliers(canonical.train, spec);

            const auto mask = sbpm::outlier_mask(canonical.train, spec.outlier_rule);
            sbpm::Dataset outlier_rows{canonical.train.schema()};
            for (std::size_t i = 0; i < mask.size(); ++i) {
                if (mask[i]) outlier_rows.append_row(canonical.train.row(i));
            }
            const auto nn =
                sbpm::nearest_two(outlier_rows, synth, sbpm::DistanceKind::euclidean);
            double max_d = 0.0;
            for (const auto& r : nn) max_d = std::max(max_d, r.first_distance);
            extras = json{{"n_train_outliers", outlier_rows.rows()},
                          {"max_outlier_to_synth_distance", max_d},
                          {"perturbation_scale", *sigma}};
        }

        const sbpm::PrivacyReport report =
            sbpm::evaluate_all(canonical.train, canonical.test, synth,
                               sbpm::DistanceKind::euclidean, lineage + " synth=" + *which);

        const std::string synth_path =
            synth_out->empty() ? "synth-" + *which + ".csv" : *synth_out;
        sbpm::write_csv(synth, synth_path);

        json config{{"which", *which},       {"seed", *seed},
                    {"sigma", *sigma},       {"synth_size", *synth_size},
                    {"radius", *radius},     {"n", *n_points},
                    {"out", *out},           {"synth_out", synth_path}};
        json results = sbpm::to_json(report);
        if (!extras.is_null()) results["leakage"] = extras;
        emit_report(sbpm::make_audit_report("counterexample", config, results,
                                            seconds_since(start)),
                    *out);
        state.exit_code = report.all_pass ? kExitPass : kExitFail;
    });
}

void add_experiment(CLI::App& app, CommonState& state) {
    auto* cmd = app.add_subcommand(
        "experiment", "Monte Carlo pass-rate experiment over repeated evaluations");
    auto mode = std::make_shared<std::string>();
    auto reps = std::make_shared<std::uint64_t>(1000);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto synth_size = std::make_shared<std::uint64_t>(1000);
    auto n_points = std::make_shared<std::uint64_t>(2000);
    auto distance = std::make_shared<std::string>("euclidean");
    auto out = std::make_shared<std::string>();
    cmd->add_option("--mode", *mode, "oracle-resample|resplit")
        ->required()
        ->check(CLI::IsMember({"oracle-resample", "resplit"}));
    cmd->add_option("--reps", *reps, "Number of repetitions")
        ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{10000000}));
    cmd->add_option("--seed", *seed, "Master seed")->required();
    cmd->add_option("--synth-size", *synth_size, "Synthetic sample size per repetition");
    cmd->add_option("--n", *n_points, "Dataset size before the 50/50 split");
    cmd->add_option("--distance", *distance, "euclidean|hamming (default euclidean)");
    cmd->add_option("--out", *out, "Also write the report to this path");
    cmd->callback([&state, mode, reps, seed, synth_size, n_points, distance, out] {
        const auto start = std::chrono::steady_clock::now();
        sbpm::ExperimentConfig cfg = sbpm::ExperimentConfig::canonical(*seed, *reps);
        cfg.gauss.n_points = *n_points;
        cfg.synth_size = *synth_size;
        cfg.kind = parse_distance(*distance);
        const sbpm::ExperimentReport report = *mode == "oracle-resample"
                                                  ? sbpm::oracle_resample_experiment(cfg)
                                                  : sbpm::resplit_experiment(cfg);
        json config{{"mode", *mode}, {"experiment", sbpm::to_json(cfg)}, {"out", *out}};
        emit_report(sbpm::make_audit_report("experiment", config, sbpm::to_json(report),
                                            seconds_since(start)),
                    *out);
        state.exit_code = kExitPass;
    });
}

void add_plot(CLI::App& app, CommonState& state) {
    auto* cmd = app.add_subcommand(
        "plot", "Render 2d datasets as a static SVG scatter with the outlier circle");
    auto data = std::make_shared<std::vector<std::string>>();
    auto roles = std::make_shared<std::vector<std::string>>();
    auto radius = std::make_shared<double>(sbpm::default_outlier_radius());
    auto out = std::make_shared<std::string>();
    cmd->add_option("--data", *data, "Dataset CSV (repeatable)")->required();
    cmd->add_option("--role", *roles, "Role label per dataset (repeatable)");
    cmd->add_option("--radius", *radius, "Outlier circle radius (0 disables)");
    cmd->add_option("--out", *out, "Output SVG path")->required();
    cmd->callback([&state, data, roles, radius, out] {
        const auto start = std::chrono::steady_clock::now();
        if (!roles->empty() && roles->size() != data->size()) {
            throw sbpm::Error("--role count must match --data count");
        }
        std::vector<sbpm::Dataset> datasets;
        datasets.reserve(data->size());
        for (const std::string& path : *data) datasets.push_back(sbpm::read_csv(path));
        std::vector<sbpm::PlotLayer> layers;
        for (std::size_t i = 0; i < datasets.size(); ++i) {
            const std::string role =
                i < roles->size() ? (*roles)[i] : "layer" + std::to_string(i);
            layers.push_back(sbpm::PlotLayer{role, &datasets[i]});
        }
        const std::string svg = sbpm::render_scatter_svg(layers, *radius);
        sbpm::write_text_atomic(*out, svg);
        json config{{"data", *data}, {"roles", *roles}, {"radius", *radius}, {"out", *out}};
        json results{{"path", *out}, {"bytes", svg.size()}, {"layers", layers.size()}};
        emit_report(sbpm::make_audit_report("plot", config, results, seconds_since(start)),
                    "");
        state.exit_code = kExitPass;
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Similarity-based privacy metric audit toolkit"};
    app.require_subcommand(1);
    CommonState state;
    state.argv = argv_echo(argc, argv);

    add_generate(app, state);
    add_evaluate(app, state);
    add_counterexample(app, state);
    add_experiment(app, state);
    add_plot(app, state);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    } catch (const sbpm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return state.exit_code;
}
