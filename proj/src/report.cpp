#include "sbpm/report.hpp"

#include <cstdio>
#include <fstream>
#include <random>

#include "sbpm/error.hpp"
#include "sbpm/io.hpp"

namespace sbpm {

json to_json(const MetricResult& m) {
    return json{{"metric", m.metric_name},
                {"stat_synth", m.stat_synth},
                {"stat_test", m.stat_test},
                {"direction", to_string(m.direction)},
                {"passed", m.passed}};
}

json to_json(const PrivacyReport& r) {
    return json{{"ims", to_json(r.ims)},
                {"dcr", to_json(r.dcr)},
                {"nndr", to_json(r.nndr)},
                {"all_pass", r.all_pass},
                {"provenance",
                 json{{"train_rows", r.provenance.train_rows},
                      {"test_rows", r.provenance.test_rows},
                      {"synth_rows", r.provenance.synth_rows},
                      {"distance", to_string(r.provenance.kind)},
                      {"seed_lineage", r.provenance.seed_note}}}};
}

json to_json(const ExperimentConfig& cfg) {
    return json{{"n_reps", cfg.n_reps},
                {"master_seed", cfg.master_seed},
                {"gauss", json{{"n_points", cfg.gauss.n_points},
                               {"seed", cfg.gauss.seed},
                               {"dims", cfg.gauss.dims}}},
                {"synth_size", cfg.synth_size},
                {"distance", to_string(cfg.kind)}};
}

json to_json(const ExperimentReport& r) {
    return json{{"n_reps", r.n_reps},
                {"pass_counts", json{{"ims", r.pass_count_ims},
                                     {"dcr", r.pass_count_dcr},
                                     {"nndr", r.pass_count_nndr},
                                     {"all", r.pass_count_all}}},
                {"pass_rates", json{{"ims", r.rate_ims},
                                    {"dcr", r.rate_dcr},
                                    {"nndr", r.rate_nndr},
                                    {"all", r.rate_all}}},
                {"config", to_json(r.config)}};
}

json to_json(const CounterexampleSummary& s) {
    return json{{"leak_test", to_json(s.leak_test_report)},
                {"leak_outliers", to_json(s.leak_outliers_report)},
                {"n_train_outliers", s.n_train_outliers},
                {"max_outlier_to_synth_distance", s.max_outlier_to_synth_distance},
                {"perturbation_scale", s.perturbation_scale}};
}

json make_audit_report(const std::string& command, json config_echo, json results,
                       double timing_seconds) {
    return json{{"format_version", kReportFormatVersion},
                {"command", command},
                {"config", std::move(config_echo)},
                {"results", std::move(results)},
                {"timing_seconds", timing_seconds}};
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path dir =
        path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    std::random_device rd;
    const std::filesystem::path tmp =
        dir / (".tmp." + path.filename().string() + "." + std::to_string(rd()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open file for writing: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw Error("write failed: " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error("cannot move temp file onto " + path.string());
    }
}

}  // namespace sbpm
