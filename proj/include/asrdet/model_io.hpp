#pragma once

// Versioned JSON model serialization. The SystemConfig (ASR order and
// similarity method) is embedded so a trained model refuses feature
// vectors built under a different configuration.

#include <fstream>
#include <string>

#include <json.hpp>

#include "asrdet/classifiers.hpp"
#include "asrdet/errors.hpp"

namespace asrdet {

inline constexpr int kModelFormatVersion = 1;

namespace detail {

inline nlohmann::json system_to_json(const SystemConfig& config) {
    return {{"target_asr", config.target_asr},
            {"auxiliary_asrs", config.auxiliary_asrs},
            {"method", to_string(config.method)}};
}

inline SystemConfig system_from_json(const nlohmann::json& j) {
    SystemConfig config;
    config.target_asr = j.at("target_asr").get<std::string>();
    config.auxiliary_asrs = j.at("auxiliary_asrs").get<std::vector<std::string>>();
    config.method = parse_method(j.at("method").get<std::string>());
    config.validate();
    return config;
}

inline nlohmann::json classifier_to_json(const ClassifierModel& model) {
    nlohmann::json j;
    j["kind"] = classifier_kind(model);
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, SvmModel>) {
                j["dim"] = m.dim;
                j["support_vectors"] = m.support_vectors;
                j["coefficients"] = m.coefficients;
                j["bias"] = m.bias;
                j["c"] = m.c;
            } else if constexpr (std::is_same_v<T, KnnModel>) {
                j["k"] = m.k;
                j["dim"] = m.dim;
                j["points"] = m.points;
                nlohmann::json labels = nlohmann::json::array();
                for (Label l : m.labels) labels.push_back(to_string(l));
                j["labels"] = std::move(labels);
            } else if constexpr (std::is_same_v<T, ForestModel>) {
                j["seed"] = m.seed;
                j["dim"] = m.dim;
                nlohmann::json trees = nlohmann::json::array();
                for (const auto& tree : m.trees) {
                    nlohmann::json nodes = nlohmann::json::array();
                    for (const auto& n : tree.nodes) {
                        nodes.push_back({{"feature",
                                          n.feature == TreeNode::npos
                                              ? -1
                                              : static_cast<std::int64_t>(n.feature)},
                                         {"threshold", n.threshold},
                                         {"left", n.left},
                                         {"right", n.right},
                                         {"ae_fraction", n.ae_fraction}});
                    }
                    trees.push_back(std::move(nodes));
                }
                j["trees"] = std::move(trees);
            } else {
                j["t"] = m.t;
                j["aggregation"] =
                    m.aggregation == ThresholdAggregation::Single ? "single" : "min";
            }
        },
        model);
    return j;
}

inline ClassifierModel classifier_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "svm") {
        SvmModel m;
        m.dim = j.at("dim").get<std::size_t>();
        m.support_vectors = j.at("support_vectors").get<std::vector<std::vector<double>>>();
        m.coefficients = j.at("coefficients").get<std::vector<double>>();
        m.bias = j.at("bias").get<double>();
        m.c = j.at("c").get<double>();
        if (m.support_vectors.size() != m.coefficients.size())
            throw ParseError("svm model: vector/coefficient count mismatch");
        return m;
    }
    if (kind == "knn") {
        KnnModel m;
        m.k = j.at("k").get<std::size_t>();
        m.dim = j.at("dim").get<std::size_t>();
        m.points = j.at("points").get<std::vector<std::vector<double>>>();
        for (const auto& l : j.at("labels")) m.labels.push_back(parse_label(l.get<std::string>()));
        if (m.points.size() != m.labels.size())
            throw ParseError("knn model: point/label count mismatch");
        return m;
    }
    if (kind == "forest") {
        ForestModel m;
        m.seed = j.at("seed").get<std::uint64_t>();
        m.dim = j.at("dim").get<std::size_t>();
        for (const auto& tj : j.at("trees")) {
            DecisionTree tree;
            for (const auto& nj : tj) {
                TreeNode n;
                const auto feature = nj.at("feature").get<std::int64_t>();
                n.feature = feature < 0 ? TreeNode::npos : static_cast<std::size_t>(feature);
                n.threshold = nj.at("threshold").get<double>();
                n.left = nj.at("left").get<std::int32_t>();
                n.right = nj.at("right").get<std::int32_t>();
                n.ae_fraction = nj.at("ae_fraction").get<double>();
                tree.nodes.push_back(n);
            }
            m.trees.push_back(std::move(tree));
        }
        return m;
    }
    if (kind == "threshold") {
        ThresholdModel m;
        m.t = j.at("t").get<double>();
        m.aggregation = j.at("aggregation").get<std::string>() == "single"
                            ? ThresholdAggregation::Single
                            : ThresholdAggregation::MinOverScores;
        return m;
    }
    throw ParseError("unknown classifier kind: " + kind);
}

inline std::size_t classifier_dim(const ClassifierModel& model,
                                  const SystemConfig& config) {
    return std::visit(
        [&](const auto& m) -> std::size_t {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ThresholdModel>)
                return m.aggregation == ThresholdAggregation::Single
                           ? 1
                           : config.auxiliary_asrs.size();
            else
                return m.dim;
        },
        model);
}

}  // namespace detail

inline nlohmann::json model_to_json(const Model& model) {
    return {{"format", "asrdet-model"},
            {"version", kModelFormatVersion},
            {"system", detail::system_to_json(model.config)},
            {"classifier", detail::classifier_to_json(model.classifier)}};
}

inline Model model_from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.value("format", "") != "asrdet-model")
        throw ParseError("not an asrdet model document");
    if (j.value("version", 0) != kModelFormatVersion)
        throw ParseError("unsupported model version");
    Model model;
    model.config = detail::system_from_json(j.at("system"));
    model.classifier = detail::classifier_from_json(j.at("classifier"));
    const std::size_t dim = detail::classifier_dim(model.classifier, model.config);
    if (dim != model.config.auxiliary_asrs.size() &&
        !(dim == 1 && std::holds_alternative<ThresholdModel>(model.classifier)))
        throw ParseError("model dimension does not match configured auxiliaries");
    return model;
}

inline void save_model(const std::string& path, const Model& model) {
    std::ofstream os(path);
    if (!os) throw NotFound("cannot write " + path);
    os << model_to_json(model).dump(2) << '\n';
}

inline Model load_model(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw NotFound("model file " + path);
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("model file: ") + e.what());
    }
    return model_from_json(j);
}

// A model may only score vectors built under the same auxiliary ordering.
inline void validate_feature_compatibility(const Model& model,
                                           const std::vector<std::string>& auxiliary_asrs) {
    if (model.config.auxiliary_asrs != auxiliary_asrs)
        throw InvalidSpec("feature columns do not match the model's auxiliary ASR order");
}

}  // namespace asrdet
