#pragma once

#include <span>
#include <vector>

#include "tsbench/forecaster.hpp"
#include "tsbench/series.hpp"

namespace tsbench {

struct TreeNode {
    int feature = -1;        // -1 marks a leaf
    double threshold = 0.0;  // go left when x[feature] < threshold
    double weight = 0.0;     // leaf value
    int left = -1;
    int right = -1;

    bool is_leaf() const { return feature < 0; }
};

struct RegressionTree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root

    double eval(std::span<const double> features) const;
};

/// Additive ensemble over windows of W trailing closes.
struct GbtEnsemble {
    double base_score = 0.0;  // mean of training targets
    double shrinkage = 0.1;
    int window = 0;
    std::vector<RegressionTree> trees;
};

struct GbtFitResult {
    GbtEnsemble ensemble;
    /// Training MSE before boosting and after each round (rounds + 1 values).
    std::vector<double> round_mse;
};

/// Squared-error gradient boosting in the XGBoost mold: g = prediction -
/// target, h = 1, leaf weight -G/(H + lambda), exact greedy splits over
/// midpoints of sorted unique feature values with gain
///   G_L^2/(H_L+lambda) + G_R^2/(H_R+lambda) - G^2/(H+lambda),
/// accepted only when positive and both children hold at least min_leaf
/// rows. Ties break toward the lowest feature index, then lowest threshold.
GbtFitResult gbt_fit(const PriceSeries& train, int window, const GbtConfig& config);

/// base_score + eta * sum of tree outputs on a window of W closes
/// (oldest first). Throws WrongWindowLength.
double gbt_predict(const GbtEnsemble& ensemble, std::span<const double> window);

}  // namespace tsbench
