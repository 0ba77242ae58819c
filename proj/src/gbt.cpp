#include "tsbench/models/gbt.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "tsbench/errors.hpp"

namespace tsbench {

namespace {

struct SplitChoice {
    double gain = 0.0;
    int feature = -1;
    double threshold = 0.0;
};

double leaf_objective(double g, double h, double l2) { return g * g / (h + l2); }

/// Exact greedy split search over one node's rows. rows indexes into the
/// example matrix; scratch is reused across calls to avoid reallocation.
SplitChoice best_split(const std::vector<std::vector<double>>& features,
                       const std::vector<double>& grad,
                       const std::vector<int>& rows, double g_sum, double h_sum,
                       const GbtConfig& cfg,
                       std::vector<std::pair<double, int>>& scratch) {
    SplitChoice best;
    const double parent = leaf_objective(g_sum, h_sum, cfg.l2);
    const int width = static_cast<int>(features[0].size());
    for (int f = 0; f < width; ++f) {
        scratch.clear();
        for (int r : rows)
            scratch.emplace_back(features[static_cast<std::size_t>(r)]
                                         [static_cast<std::size_t>(f)],
                                 r);
        std::sort(scratch.begin(), scratch.end());
        double g_left = 0.0, h_left = 0.0;
        for (std::size_t i = 0; i + 1 < scratch.size(); ++i) {
            g_left += grad[static_cast<std::size_t>(scratch[i].second)];
            h_left += 1.0;
            if (scratch[i].first == scratch[i + 1].first) continue;  // not a boundary
            const std::size_t left_n = i + 1;
            const std::size_t right_n = scratch.size() - left_n;
            if (left_n < static_cast<std::size_t>(cfg.min_leaf) ||
                right_n < static_cast<std::size_t>(cfg.min_leaf))
                continue;
            double gain = leaf_objective(g_left, h_left, cfg.l2) +
                          leaf_objective(g_sum - g_left, h_sum - h_left, cfg.l2) -
                          parent;
            if (gain > best.gain) {
                best.gain = gain;
                best.feature = f;
                best.threshold = 0.5 * (scratch[i].first + scratch[i + 1].first);
            }
        }
    }
    return best;
}

int build_node(RegressionTree& tree, const std::vector<std::vector<double>>& features,
               const std::vector<double>& grad, std::vector<int>&& rows, int depth,
               const GbtConfig& cfg, std::vector<std::pair<double, int>>& scratch) {
    double g_sum = 0.0;
    for (int r : rows) g_sum += grad[static_cast<std::size_t>(r)];
    const double h_sum = static_cast<double>(rows.size());

    const int index = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();

    SplitChoice split;
    if (depth < cfg.max_depth &&
        rows.size() >= 2 * static_cast<std::size_t>(cfg.min_leaf))
        split = best_split(features, grad, rows, g_sum, h_sum, cfg, scratch);

    if (split.feature < 0 || !(split.gain > 0.0)) {
        tree.nodes[static_cast<std::size_t>(index)].weight = -g_sum / (h_sum + cfg.l2);
        return index;
    }

    std::vector<int> left_rows, right_rows;
    for (int r : rows) {
        if (features[static_cast<std::size_t>(r)]
                    [static_cast<std::size_t>(split.feature)] < split.threshold)
            left_rows.push_back(r);
        else
            right_rows.push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    int left = build_node(tree, features, grad, std::move(left_rows), depth + 1, cfg,
                          scratch);
    int right = build_node(tree, features, grad, std::move(right_rows), depth + 1,
                           cfg, scratch);
    TreeNode& node = tree.nodes[static_cast<std::size_t>(index)];
    node.feature = split.feature;
    node.threshold = split.threshold;
    node.left = left;
    node.right = right;
    return index;
}

}  // namespace

double RegressionTree::eval(std::span<const double> features) const {
    std::size_t at = 0;
    while (!nodes[at].is_leaf()) {
        const TreeNode& n = nodes[at];
        at = static_cast<std::size_t>(
            features[static_cast<std::size_t>(n.feature)] < n.threshold ? n.left
                                                                        : n.right);
    }
    return nodes[at].weight;
}

GbtFitResult gbt_fit(const PriceSeries& train, int window, const GbtConfig& config) {
    if (window < 1) throw InvalidValue("window must be >= 1");
    const std::vector<double> y = train.closes();
    const std::size_t w = static_cast<std::size_t>(window);
    if (y.size() < w + 2)
        throw TooShort("GBT with window " + std::to_string(window) +
                       " needs at least " + std::to_string(w + 2) +
                       " observations, got " + std::to_string(y.size()));

    const std::size_t n = y.size() - w;
    std::vector<std::vector<double>> features(n);
    std::vector<double> target(n);
    for (std::size_t i = 0; i < n; ++i) {
        features[i].assign(y.begin() + static_cast<std::ptrdiff_t>(i),
                           y.begin() + static_cast<std::ptrdiff_t>(i + w));
        target[i] = y[i + w];
    }

    GbtFitResult result;
    GbtEnsemble& model = result.ensemble;
    model.shrinkage = config.shrinkage;
    model.window = window;
    model.base_score =
        std::accumulate(target.begin(), target.end(), 0.0) / static_cast<double>(n);

    std::vector<double> pred(n, model.base_score);
    std::vector<double> grad(n, 0.0);
    auto mse = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double d = pred[i] - target[i];
            s += d * d;
        }
        return s / static_cast<double>(n);
    };
    result.round_mse.reserve(static_cast<std::size_t>(config.rounds) + 1);
    result.round_mse.push_back(mse());

    std::vector<std::pair<double, int>> scratch;
    scratch.reserve(n);
    for (int round = 0; round < config.rounds; ++round) {
        for (std::size_t i = 0; i < n; ++i) grad[i] = pred[i] - target[i];
        std::vector<int> rows(n);
        std::iota(rows.begin(), rows.end(), 0);
        RegressionTree tree;
        build_node(tree, features, grad, std::move(rows), 0, config, scratch);
        for (std::size_t i = 0; i < n; ++i)
            pred[i] += config.shrinkage * tree.eval(features[i]);
        model.trees.push_back(std::move(tree));
        result.round_mse.push_back(mse());
    }
    return result;
}

double gbt_predict(const GbtEnsemble& ensemble, std::span<const double> window) {
    if (window.size() != static_cast<std::size_t>(ensemble.window))
        throw WrongWindowLength("expected window of " +
                                std::to_string(ensemble.window) + ", got " +
                                std::to_string(window.size()));
    double sum = 0.0;
    for (const auto& tree : ensemble.trees) sum += tree.eval(window);
    return ensemble.base_score + ensemble.shrinkage * sum;
}

}  // namespace tsbench
