#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "sbpm/experiments.hpp"
#include "sbpm/io.hpp"
#include "sbpm/metrics.hpp"
#include "sbpm/report.hpp"

namespace {

sbpm::PrivacyReport sample_privacy_report() {
    const auto train = sbpm::generate_gauss(sbpm::GaussSpec{50, 1, 2});
    const auto test = sbpm::generate_gauss(sbpm::GaussSpec{50, 2, 2});
    const auto synth = sbpm::generate_gauss(sbpm::GaussSpec{40, 3, 2});
    return sbpm::evaluate_all(train, test, synth, sbpm::DistanceKind::euclidean, "unit");
}

}  // namespace

TEST_CASE("metric results serialize every field") {
    const sbpm::PrivacyReport r = sample_privacy_report();
    const sbpm::json j = sbpm::to_json(r.dcr);
    CHECK(j["metric"] == "DCR");
    CHECK(j["stat_synth"].get<double>() == r.dcr.stat_synth);
    CHECK(j["stat_test"].get<double>() == r.dcr.stat_test);
    CHECK(j["direction"] == "synth_ge_test");
    CHECK(j["passed"].get<bool>() == r.dcr.passed);
}

TEST_CASE("privacy reports carry provenance and the conjunction") {
    const sbpm::PrivacyReport r = sample_privacy_report();
    const sbpm::json j = sbpm::to_json(r);
    CHECK(j.contains("ims"));
    CHECK(j.contains("dcr"));
    CHECK(j.contains("nndr"));
    CHECK(j["all_pass"].get<bool>() == r.all_pass);
    CHECK(j["provenance"]["train_rows"] == 50);
    CHECK(j["provenance"]["synth_rows"] == 40);
    CHECK(j["provenance"]["distance"] == "euclidean");
    CHECK(j["provenance"]["seed_lineage"] == "unit");
}

TEST_CASE("experiment reports embed their full config") {
    const sbpm::ExperimentConfig cfg = sbpm::ExperimentConfig::canonical(5, 20);
    const sbpm::ExperimentReport r = sbpm::oracle_resample_experiment(cfg);
    const sbpm::json j = sbpm::to_json(r);
    CHECK(j["n_reps"] == 20);
    CHECK(j["pass_counts"]["ims"].get<std::size_t>() == r.pass_count_ims);
    CHECK(j["pass_rates"]["all"].get<double>() == r.rate_all);
    CHECK(j["config"]["master_seed"] == 5);
    CHECK(j["config"]["gauss"]["seed"].get<std::uint64_t>() == cfg.gauss.seed);
    CHECK(j["config"]["gauss"]["n_points"] == 2000);
    CHECK(j["config"]["synth_size"] == 1000);
    CHECK(j["config"]["distance"] == "euclidean");
}

TEST_CASE("the envelope is versioned and keeps timing out of results") {
    const sbpm::json report = sbpm::make_audit_report(
        "evaluate", sbpm::json{{"train", "a.csv"}}, sbpm::json{{"ok", true}}, 1.25);
    CHECK(report["format_version"] == sbpm::kReportFormatVersion);
    CHECK(report["command"] == "evaluate");
    CHECK(report["config"]["train"] == "a.csv");
    CHECK(report["results"]["ok"] == true);
    CHECK(report["timing_seconds"].get<double>() == 1.25);
    CHECK_FALSE(report["results"].contains("timing_seconds"));

    // Envelope key order is stable for byte-reproducible serialization.
    std::vector<std::string> keys;
    for (auto it = report.begin(); it != report.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"format_version", "command", "config", "results",
                                           "timing_seconds"});
}

TEST_CASE("serialized reports parse back to the same values") {
    const sbpm::PrivacyReport r = sample_privacy_report();
    const std::string text = sbpm::to_json(r).dump(2);
    const sbpm::json parsed = sbpm::json::parse(text);
    CHECK(parsed == sbpm::to_json(r));
    CHECK(parsed["dcr"]["stat_synth"].get<double>() == r.dcr.stat_synth);
}

TEST_CASE("identical results serialize to identical bytes") {
    const sbpm::ExperimentConfig cfg = sbpm::ExperimentConfig::canonical(9, 10);
    const std::string a = sbpm::to_json(sbpm::oracle_resample_experiment(cfg)).dump(2);
    const std::string b = sbpm::to_json(sbpm::oracle_resample_experiment(cfg)).dump(2);
    CHECK(a == b);
}

TEST_CASE("write_text_atomic leaves only the target file behind") {
    const auto dir = std::filesystem::temp_directory_path() / "sbpm_atomic_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const auto path = dir / "report.json";

    sbpm::write_text_atomic(path, "first\n");
    sbpm::write_text_atomic(path, "second\n");

    std::ifstream in(path);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    CHECK(content == "second\n");

    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++entries;
    CHECK(entries == 1);
    std::filesystem::remove_all(dir);
}
