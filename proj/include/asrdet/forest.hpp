#pragma once

// Random forest of Gini-split decision trees grown to purity. Bootstrap
// sampling and feature subsampling are driven by a generator derived from
// (seed, tree index), so identical inputs reproduce identical trees.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "asrdet/errors.hpp"
#include "asrdet/features.hpp"

namespace asrdet {

struct TreeNode {
    // Leaf when feature == npos; then ae_fraction holds the leaf vote.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t feature = npos;
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    double ae_fraction = 0.0;
};

struct DecisionTree {
    std::vector<TreeNode> nodes;

    double predict(const std::vector<double>& x) const {
        std::size_t i = 0;
        while (nodes[i].feature != TreeNode::npos)
            i = static_cast<std::size_t>(x[nodes[i].feature] <= nodes[i].threshold ? nodes[i].left
                                                                                  : nodes[i].right);
        return nodes[i].ae_fraction;
    }
};

struct ForestModel {
    std::uint64_t seed = 200;
    std::size_t dim = 0;
    std::vector<DecisionTree> trees;

    // Fraction of trees voting AE, minus 0.5; >= 0 means AE.
    double decision(const std::vector<double>& x) const {
        if (x.size() != dim) throw DimensionMismatch(dim, x.size());
        std::size_t ae_votes = 0;
        for (const auto& tree : trees)
            if (tree.predict(x) >= 0.5) ++ae_votes;
        return static_cast<double>(ae_votes) / static_cast<double>(trees.size()) - 0.5;
    }
};

namespace detail {

inline double gini(std::size_t ae, std::size_t total) {
    if (total == 0) return 0.0;
    const double p = static_cast<double>(ae) / static_cast<double>(total);
    return 2.0 * p * (1.0 - p);
}

struct TreeBuilder {
    const std::vector<std::vector<double>>& points;
    const std::vector<Label>& labels;
    std::size_t n_features;
    std::size_t features_per_split;
    std::mt19937_64& rng;
    DecisionTree tree;

    std::int32_t build(std::vector<std::size_t>& idx) {
        std::size_t ae = 0;
        for (std::size_t i : idx)
            if (labels[i] == Label::Ae) ++ae;

        const auto make_leaf = [&]() {
            TreeNode leaf;
            leaf.ae_fraction = static_cast<double>(ae) / static_cast<double>(idx.size());
            tree.nodes.push_back(leaf);
            return static_cast<std::int32_t>(tree.nodes.size() - 1);
        };
        if (ae == 0 || ae == idx.size()) return make_leaf();

        // Feature subset without replacement.
        std::vector<std::size_t> feats(n_features);
        std::iota(feats.begin(), feats.end(), 0);
        for (std::size_t i = 0; i < features_per_split; ++i) {
            const std::size_t j = i + rng() % (n_features - i);
            std::swap(feats[i], feats[j]);
        }
        feats.resize(features_per_split);
        std::sort(feats.begin(), feats.end());

        std::size_t best_feature = TreeNode::npos;
        double best_threshold = 0.0;
        double best_impurity = gini(ae, idx.size());
        std::vector<std::pair<double, Label>> column;
        for (std::size_t f : feats) {
            column.clear();
            for (std::size_t i : idx) column.emplace_back(points[i][f], labels[i]);
            std::sort(column.begin(), column.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            std::size_t left_ae = 0;
            for (std::size_t cut = 1; cut < column.size(); ++cut) {
                if (column[cut - 1].second == Label::Ae) ++left_ae;
                if (column[cut].first == column[cut - 1].first) continue;
                const std::size_t right_ae = ae - left_ae;
                const double impurity =
                    (static_cast<double>(cut) * gini(left_ae, cut) +
                     static_cast<double>(column.size() - cut) * gini(right_ae, column.size() - cut)) /
                    static_cast<double>(column.size());
                if (impurity < best_impurity - 1e-12) {
                    best_impurity = impurity;
                    best_feature = f;
                    best_threshold = 0.5 * (column[cut - 1].first + column[cut].first);
                }
            }
        }
        if (best_feature == TreeNode::npos) return make_leaf();

        std::vector<std::size_t> left_idx, right_idx;
        for (std::size_t i : idx)
            (points[i][best_feature] <= best_threshold ? left_idx : right_idx).push_back(i);
        if (left_idx.empty() || right_idx.empty()) return make_leaf();

        TreeNode node;
        node.feature = best_feature;
        node.threshold = best_threshold;
        tree.nodes.push_back(node);
        const std::int32_t self = static_cast<std::int32_t>(tree.nodes.size() - 1);
        tree.nodes[static_cast<std::size_t>(self)].left = build(left_idx);
        tree.nodes[static_cast<std::size_t>(self)].right = build(right_idx);
        return self;
    }
};

}  // namespace detail

inline ForestModel train_forest(const std::vector<FeatureVector>& data, std::size_t n_trees = 100,
                                std::uint64_t seed = 200) {
    if (data.empty()) throw DegenerateTraining("empty training set");
    if (n_trees < 1) throw InvalidSpec("forest requires at least one tree");
    const std::size_t n = data.size();
    const std::size_t dim = data.front().scores.size();

    std::vector<std::vector<double>> points;
    std::vector<Label> labels;
    points.reserve(n);
    for (const auto& fv : data) {
        if (!fv.label) throw LabelError("unlabeled vector in training set: " + fv.audio_id);
        if (fv.scores.size() != dim) throw DimensionMismatch(dim, fv.scores.size());
        points.push_back(fv.scores);
        labels.push_back(*fv.label);
    }

    ForestModel model;
    model.seed = seed;
    model.dim = dim;
    // sqrt(n) feature subsampling; with n <= 3 features this is 1 per split.
    const std::size_t features_per_split =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(dim))));
    for (std::size_t t = 0; t < n_trees; ++t) {
        std::mt19937_64 rng(seed + t);
        std::vector<std::size_t> bootstrap(n);
        for (auto& i : bootstrap) i = rng() % n;
        detail::TreeBuilder builder{points, labels, dim, features_per_split, rng, {}};
        builder.build(bootstrap);
        model.trees.push_back(std::move(builder.tree));
    }
    return model;
}

}  // namespace asrdet
