// asrdet: detects adversarial audio by cross-checking a target ASR's
// transcription against auxiliary ASRs. Subcommands cover the full
// pipeline: phonetic encoding, similarity scoring, feature extraction,
// classifier training, detection, evaluation and corpus synthesis.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "asrdet/classifiers.hpp"
#include "asrdet/eval.hpp"
#include "asrdet/features.hpp"
#include "asrdet/ingest.hpp"
#include "asrdet/ingest_http.hpp"
#include "asrdet/model_io.hpp"
#include "asrdet/sample_texts.hpp"
#include "asrdet/synth.hpp"
#include "asrdet/timing.hpp"

namespace {

using namespace asrdet;
using nlohmann::json;

struct CliConfig {
    SystemConfig system;
    std::uint64_t seed = 42;
    json backends = json::array();
    // Classifier hyperparameters; flags override these scalars.
    double svm_c = 1.0;
    double svm_tol = 1e-3;
    std::size_t knn_k = 10;
    std::size_t forest_trees = 100;
    std::uint64_t forest_seed = 200;
    double threshold_max_fpr = 0.05;
};

CliConfig load_cli_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw NotFound("config file " + path);
    json j;
    try {
        is >> j;
    } catch (const json::parse_error& e) {
        throw ParseError("config file: " + std::string(e.what()));
    }
    if (!j.is_object() || !j.contains("system"))
        throw ParseError("config file: missing \"system\" object");
    CliConfig config;
    config.system = detail::system_from_json(j.at("system"));
    config.seed = j.value("seed", config.seed);
    if (j.contains("backends")) {
        if (!j["backends"].is_array()) throw ParseError("config file: backends must be an array");
        config.backends = j["backends"];
    }
    if (j.contains("classifier")) {
        const json& c = j["classifier"];
        config.svm_c = c.value("svm_c", config.svm_c);
        config.svm_tol = c.value("svm_tol", config.svm_tol);
        config.knn_k = c.value("knn_k", config.knn_k);
        config.forest_trees = c.value("forest_trees", config.forest_trees);
        config.forest_seed = c.value("forest_seed", config.forest_seed);
        config.threshold_max_fpr = c.value("threshold_max_fpr", config.threshold_max_fpr);
    }
    return config;
}

std::vector<std::unique_ptr<AsrBackend>> make_backends(const json& spec) {
    std::vector<std::unique_ptr<AsrBackend>> backends;
    for (const json& b : spec) {
        const std::string asr_id = b.at("asr_id").get<std::string>();
        const std::string kind = b.at("kind").get<std::string>();
        if (kind == "file") {
            backends.push_back(
                std::make_unique<FileBackend>(asr_id, load_store(b.at("path").get<std::string>())));
        } else if (kind == "mock") {
            backends.push_back(std::make_unique<MockBackend>(
                asr_id, load_store(b.at("reference").get<std::string>()), b.value("wer", 0.0),
                b.value("seed", std::uint64_t{0}),
                std::chrono::milliseconds(b.value("latency_ms", 0))));
        } else if (kind == "http") {
            HttpBackendConfig hc;
            hc.asr_id = asr_id;
            hc.host = b.at("host").get<std::string>();
            hc.path = b.value("path", hc.path);
            hc.auth_header = b.value("auth_header", "");
            hc.auth_value = b.value("auth_value", "");
            hc.timeout_s = b.value("timeout_s", hc.timeout_s);
            hc.retries = b.value("retries", hc.retries);
            backends.push_back(std::make_unique<HttpBackend>(hc));
        } else {
            throw ParseError("unknown backend kind: " + kind);
        }
    }
    return backends;
}

std::vector<FeatureVector> load_labeled_features(const std::string& path,
                                                 const SystemConfig* expect = nullptr) {
    std::ifstream is(path);
    if (!is) throw NotFound("feature file " + path);
    FeatureCsv csv = read_features_csv(is);
    if (expect && csv.auxiliary_asrs != expect->auxiliary_asrs)
        throw InvalidSpec("feature columns in " + path +
                          " do not match the configured auxiliary ASR order");
    return std::move(csv.vectors);
}

double aggregate_score(const FeatureVector& fv) {
    return *std::min_element(fv.scores.begin(), fv.scores.end());
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw NotFound("text file " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(is, line))
        if (!line.empty()) lines.push_back(line);
    return lines;
}

ClassifierModel train_kind(const std::string& kind, const std::vector<FeatureVector>& data,
                           const CliConfig& config) {
    if (kind == "svm") return train_svm(data, config.svm_c, config.svm_tol);
    if (kind == "knn") return train_knn(data, config.knn_k);
    if (kind == "forest") return train_forest(data, config.forest_trees, config.forest_seed);
    if (kind == "threshold") {
        std::vector<double> benign_scores;
        for (const auto& fv : data)
            if (fv.label == Label::Benign) benign_scores.push_back(aggregate_score(fv));
        const auto aggregation = config.system.auxiliary_asrs.size() == 1
                                     ? ThresholdAggregation::Single
                                     : ThresholdAggregation::MinOverScores;
        return select_threshold(benign_scores, config.threshold_max_fpr, aggregation);
    }
    throw InvalidSpec("unknown model kind: " + kind);
}

json cv_report_json(const CvReport& report) {
    json folds = json::array();
    for (const auto& f : report.folds)
        folds.push_back({{"tp", f.tp},
                         {"fp", f.fp},
                         {"tn", f.tn},
                         {"fn", f.fn},
                         {"accuracy", f.accuracy()},
                         {"fpr", f.fpr()},
                         {"fnr", f.fnr()}});
    const auto [acc_m, acc_s] = report.accuracy();
    const auto [fpr_m, fpr_s] = report.fpr();
    const auto [fnr_m, fnr_s] = report.fnr();
    return {{"folds", folds},
            {"std_kind", "population"},
            {"fold_strategy", "stratified"},
            {"accuracy", {{"mean", acc_m}, {"std", acc_s}}},
            {"fpr", {{"mean", fpr_m}, {"std", fpr_s}}},
            {"fnr", {{"mean", fnr_m}, {"std", fnr_s}}}};
}

void print_cv_table(std::ostream& os, const std::string& name, const CvReport& report) {
    const auto [acc_m, acc_s] = report.accuracy();
    const auto [fpr_m, fpr_s] = report.fpr();
    const auto [fnr_m, fnr_s] = report.fnr();
    os << std::fixed << std::setprecision(2);
    os << std::left << std::setw(12) << name << "  Accuracy  " << std::setw(6) << acc_m * 100
       << "% (std " << acc_s * 100 << "%)\n";
    os << std::setw(12) << "" << "  FPR       " << std::setw(6) << fpr_m * 100 << "% (std "
       << fpr_s * 100 << "%)\n";
    os << std::setw(12) << "" << "  FNR       " << std::setw(6) << fnr_m * 100 << "% (std "
       << fnr_s * 100 << "%)\n";
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw NotFound("cannot write " + path);
    return os;
}

int run(int argc, char** argv) {
    CLI::App app{"Adversarial audio detection via ASR ensemble disagreement"};
    app.require_subcommand(1);

    std::string config_path, transcripts_path, manifest_path, features_path, model_path, out_path;
    std::string method_name = "pe_jaro_winkler", model_kind = "svm", mae_type = "type-1";
    std::string hosts_path, commands_path, out_manifest_path;
    std::string audio_id, text_a, text_b, raw_text;
    std::vector<std::string> sample_ids;
    std::size_t k = 5, bins = 20, count = 100, n_benign = 100, n_ae = 100;
    std::uint64_t seed = 42;
    bool seed_set = false, as_json = false;
    double wer = 0.1;

    auto* encode = app.add_subcommand("encode", "Phonetic-encode a transcript");
    encode->add_option("text", raw_text, "Transcript text")->required();

    auto* sim = app.add_subcommand("sim", "Similarity score between two transcripts");
    sim->add_option("--method", method_name,
                    "cosine|jaccard|jaro_winkler with optional pe_ prefix");
    sim->add_option("a", text_a)->required();
    sim->add_option("b", text_b)->required();

    auto* features = app.add_subcommand("features", "Build feature vectors from transcripts");
    features->add_option("--config", config_path)->required();
    features->add_option("--transcripts", transcripts_path)->required();
    features->add_option("--manifest", manifest_path)->required();
    features->add_option("--out", out_path)->required();

    auto* train = app.add_subcommand("train", "Train a classifier on labeled features");
    train->add_option("--config", config_path)->required();
    train->add_option("--model", model_kind, "svm|knn|forest|threshold");
    train->add_option("--features", features_path)->required();
    train->add_option("--out", out_path)->required();

    auto* detect = app.add_subcommand("detect", "Classify one audio");
    detect->add_option("--model", model_path)->required();
    detect->add_option("--audio-id", audio_id)->required();
    detect->add_option("--transcripts", transcripts_path,
                       "Transcript JSONL; otherwise backends from --config are queried");
    detect->add_option("--config", config_path);

    auto* eval_cmd = app.add_subcommand("eval", "Evaluation reports");
    eval_cmd->require_subcommand(1);
    auto* eval_cv = eval_cmd->add_subcommand("cv", "k-fold cross validation");
    eval_cv->add_option("--config", config_path)->required();
    eval_cv->add_option("--features", features_path)->required();
    eval_cv->add_option("--model", model_kind, "svm|knn|forest|threshold");
    eval_cv->add_option("--k", k);
    eval_cv->add_option("--seed", seed);
    eval_cv->add_flag("--json", as_json);
    auto* eval_defense = eval_cmd->add_subcommand("defense", "Defense rate on an AE-only set");
    eval_defense->add_option("--model", model_path)->required();
    eval_defense->add_option("--features", features_path)->required();
    auto* eval_roc = eval_cmd->add_subcommand("roc", "ROC curve and AUC");
    eval_roc->add_option("--features", features_path)->required();
    eval_roc->add_option("--out", out_path, "Write curve points CSV here");
    auto* eval_hist = eval_cmd->add_subcommand("hist", "Per-label score histogram");
    eval_hist->add_option("--features", features_path)->required();
    eval_hist->add_option("--bins", bins);
    eval_hist->add_option("--out", out_path, "Write histogram CSV here");

    auto* synth_cmd = app.add_subcommand("synth", "Synthesize datasets");
    synth_cmd->require_subcommand(1);
    auto* synth_mae_cmd = synth_cmd->add_subcommand("mae", "Hypothetical MAE AE vectors");
    synth_mae_cmd->add_option("--config", config_path)->required();
    synth_mae_cmd->add_option("--features", features_path, "Labeled features to build pools from")
        ->required();
    synth_mae_cmd->add_option("--type", mae_type, "type-1..type-6");
    synth_mae_cmd->add_option("--count", count);
    synth_mae_cmd->add_option("--seed", seed)->each([&](const std::string&) { seed_set = true; });
    synth_mae_cmd->add_option("--out", out_path)->required();
    auto* synth_comp = synth_cmd->add_subcommand("comprehensive", "Types 4-6 MAE AE vectors");
    synth_comp->add_option("--config", config_path)->required();
    synth_comp->add_option("--features", features_path)->required();
    synth_comp->add_option("--count-per-type", count);
    synth_comp->add_option("--seed", seed)->each([&](const std::string&) { seed_set = true; });
    synth_comp->add_option("--out", out_path)->required();
    auto* synth_corpus_cmd = synth_cmd->add_subcommand("corpus", "Synthetic transcript corpus");
    synth_corpus_cmd->add_option("--config", config_path)->required();
    synth_corpus_cmd->add_option("--n-benign", n_benign);
    synth_corpus_cmd->add_option("--n-ae", n_ae);
    synth_corpus_cmd->add_option("--wer", wer);
    synth_corpus_cmd->add_option("--seed", seed)->each([&](const std::string&) { seed_set = true; });
    synth_corpus_cmd->add_option("--hosts", hosts_path, "Host sentences, one per line");
    synth_corpus_cmd->add_option("--commands", commands_path, "Attack commands, one per line");
    synth_corpus_cmd->add_option("--out-transcripts", out_path)->required();
    synth_corpus_cmd->add_option("--out-manifest", out_manifest_path)->required();

    auto* timing = app.add_subcommand("timing", "Per-stage overhead report");
    timing->add_option("--config", config_path)->required();
    timing->add_option("--model", model_path)->required();
    timing->add_option("--sample", sample_ids, "Audio ids to measure")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (encode->parsed()) {
        std::cout << encode_transcript(normalize(raw_text)) << '\n';
    } else if (sim->parsed()) {
        const double s = score(parse_method(method_name), text_a, text_b);
        std::cout << std::fixed << std::setprecision(4) << s << '\n';
    } else if (features->parsed()) {
        CliConfig config = load_cli_config(config_path);
        TranscriptStore store = load_store(transcripts_path);
        std::ifstream mis(manifest_path);
        if (!mis) throw NotFound("manifest file " + manifest_path);
        auto manifest = read_manifest_csv(mis);
        auto fvs = build_dataset(config.system, store, manifest);
        auto os = open_out(out_path);
        write_features_csv(os, config.system, fvs);
        std::cout << "wrote " << fvs.size() << " feature vectors to " << out_path << '\n';
    } else if (train->parsed()) {
        CliConfig config = load_cli_config(config_path);
        auto data = load_labeled_features(features_path, &config.system);
        Model model{config.system, train_kind(model_kind, data, config)};
        save_model(out_path, model);
        std::cout << "trained " << model_kind << " on " << data.size() << " vectors -> " << out_path
                  << '\n';
    } else if (detect->parsed()) {
        Model model = load_model(model_path);
        TranscriptStore store;
        if (!transcripts_path.empty()) {
            store = load_store(transcripts_path);
        } else {
            if (config_path.empty())
                throw InvalidSpec("detect needs --transcripts or --config with backends");
            CliConfig config = load_cli_config(config_path);
            auto backends = make_backends(config.backends);
            std::vector<const AsrBackend*> ptrs;
            for (const auto& b : backends) ptrs.push_back(b.get());
            FanoutResult fan = transcribe_all(ptrs, audio_id);
            if (!fan.ok()) throw NotFound("backend failures: " + fan.failure_summary());
            for (auto& [id, t] : fan.transcripts) store.add(std::move(t));
        }
        FeatureVector fv = build_feature_vector(model.config, store, audio_id);
        DetectionResult result = predict(model, fv);
        json out{{"audio_id", audio_id},
                 {"verdict", to_string(result.verdict)},
                 {"decision_value", result.decision_value}};
        json transcripts;
        transcripts[model.config.target_asr] = store.at(audio_id, model.config.target_asr).text;
        json scores;
        for (std::size_t i = 0; i < model.config.auxiliary_asrs.size(); ++i) {
            const auto& aux = model.config.auxiliary_asrs[i];
            transcripts[aux] = store.at(audio_id, aux).text;
            scores[aux] = fv.scores[i];
        }
        out["transcripts"] = transcripts;
        out["scores"] = scores;
        std::cout << out.dump(2) << '\n';
    } else if (eval_cv->parsed()) {
        CliConfig config = load_cli_config(config_path);
        auto data = load_labeled_features(features_path, &config.system);
        Trainer trainer = [&](const std::vector<FeatureVector>& train_data) {
            return train_kind(model_kind, train_data, config);
        };
        CvReport report = cross_validate(trainer, data, k, seed);
        if (as_json) std::cout << cv_report_json(report).dump(2) << '\n';
        else print_cv_table(std::cout, model_kind, report);
    } else if (eval_defense->parsed()) {
        Model model = load_model(model_path);
        auto data = load_labeled_features(features_path, &model.config);
        std::cout << json{{"defense_rate", defense_rate(model.classifier, data)},
                          {"total", data.size()}}
                         .dump(2)
                  << '\n';
    } else if (eval_roc->parsed()) {
        auto data = load_labeled_features(features_path);
        std::vector<double> benign, ae;
        for (const auto& fv : data) {
            if (!fv.label) throw LabelError("roc needs labeled features");
            (*fv.label == Label::Benign ? benign : ae).push_back(aggregate_score(fv));
        }
        RocCurve curve = roc(benign, ae);
        if (!out_path.empty()) {
            auto os = open_out(out_path);
            os << "fpr,tpr\n";
            os.precision(17);
            for (const auto& [fpr, tpr] : curve.points) os << fpr << ',' << tpr << '\n';
        }
        std::cout << json{{"auc", curve.auc}, {"points", curve.points.size()}}.dump(2) << '\n';
    } else if (eval_hist->parsed()) {
        auto data = load_labeled_features(features_path);
        Histogram h = score_histogram(data, bins);
        if (!out_path.empty()) {
            auto os = open_out(out_path);
            os << "bin_low,bin_high,benign,ae\n";
            for (std::size_t i = 0; i < h.bins; ++i)
                os << static_cast<double>(i) / h.bins << ',' << static_cast<double>(i + 1) / h.bins
                   << ',' << h.benign_counts[i] << ',' << h.ae_counts[i] << '\n';
        }
        std::cout << json{{"bins", h.bins}, {"overlap_fraction", h.overlap_fraction()}}.dump(2)
                  << '\n';
    } else if (synth_mae_cmd->parsed() || synth_comp->parsed()) {
        CliConfig config = load_cli_config(config_path);
        if (!seed_set) seed = config.seed;
        auto data = load_labeled_features(features_path, &config.system);
        std::vector<FeatureVector> benign, ae;
        for (auto& fv : data) (*fv.label == Label::Benign ? benign : ae).push_back(std::move(fv));
        ScorePools pools = build_pools(benign, ae);
        std::vector<FeatureVector> out;
        if (synth_mae_cmd->parsed()) {
            const auto types = canonical_mae_types(config.system);
            const auto it = std::find_if(types.begin(), types.end(),
                                         [&](const MaeType& t) { return t.name == mae_type; });
            if (it == types.end()) throw InvalidSpec("unknown MAE type: " + mae_type);
            out = synth_mae(pools, config.system, *it, count, seed);
        } else {
            out = synth_comprehensive(pools, config.system, count, seed);
        }
        auto os = open_out(out_path);
        write_features_csv(os, config.system, out);
        std::cout << "wrote " << out.size() << " MAE vectors to " << out_path << '\n';
    } else if (synth_corpus_cmd->parsed()) {
        CliConfig config = load_cli_config(config_path);
        if (!seed_set) seed = config.seed;
        const auto hosts = hosts_path.empty() ? default_host_texts() : read_lines(hosts_path);
        const auto commands =
            commands_path.empty() ? default_commands() : read_lines(commands_path);
        CorpusSpec spec{n_benign, n_ae, wer, seed};
        SynthCorpus corpus = synth_corpus(spec, config.system, hosts, commands);
        save_store(out_path, corpus.store);
        auto mos = open_out(out_manifest_path);
        write_manifest_csv(mos, corpus.manifest);
        std::cout << "wrote " << corpus.store.size() << " transcripts, "
                  << corpus.manifest.size() << " manifest rows\n";
    } else if (timing->parsed()) {
        CliConfig config = load_cli_config(config_path);
        Model model = load_model(model_path);
        auto backends = make_backends(config.backends);
        std::vector<const AsrBackend*> ptrs;
        for (const auto& b : backends) ptrs.push_back(b.get());
        TimingReport report = timing_report(ptrs, model.config, model.classifier, sample_ids);
        std::cout << json{{"recognition_s", report.recognition_s},
                          {"similarity_s", report.similarity_s},
                          {"classification_s", report.classification_s}}
                         .dump(2)
                  << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const asrdet::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
