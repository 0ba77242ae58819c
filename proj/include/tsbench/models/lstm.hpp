#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tsbench/forecaster.hpp"
#include "tsbench/series.hpp"

namespace tsbench {

/// Affine map of the training price range onto [0, 1]. Never clamps:
/// out-of-range inputs scale outside [0, 1] on purpose, so the network is
/// allowed (and observed) to extrapolate.
struct ScalerMinMax {
    double lo = 0.0;
    double hi = 1.0;

    double scale(double x) const { return (x - lo) / (hi - lo); }
    double inverse(double s) const { return lo + s * (hi - lo); }
};

/// Single-layer LSTM over a scalar input, H hidden units, linear head.
struct LstmParams {
    int hidden = 0;
    int window = 0;
    // gate order everywhere: f, i, o, g
    std::vector<double> w_f, w_i, w_o, w_g;  // H, input weights
    std::vector<double> u_f, u_i, u_o, u_g;  // H*H row-major, recurrent
    std::vector<double> b_f, b_i, b_o, b_g;  // H
    std::vector<double> head_w;              // H
    double head_b = 0.0;
    ScalerMinMax scaler;
};

/// One scaled-target training example for the unrolled network.
struct LstmExample {
    std::vector<double> window;  // W scaled closes, oldest first
    double target = 0.0;         // next scaled close
};

struct LstmGradients {
    std::vector<double> w_f, w_i, w_o, w_g;
    std::vector<double> u_f, u_i, u_o, u_g;
    std::vector<double> b_f, b_i, b_o, b_g;
    std::vector<double> head_w;
    double head_b = 0.0;
};

struct LstmFitResult {
    LstmParams params;
    std::vector<double> epoch_loss;  // mean squared error per epoch
};

/// Canonical cell: f = sigmoid(W_f x + U_f h + b_f), likewise i and o,
/// g = tanh(W_g x + U_g h + b_g), c = f*c_prev + i*g, h = o*tanh(c).
/// Throws DimensionMismatch when the vector sizes disagree with H.
void lstm_cell_forward(double x, std::span<const double> h_prev,
                       std::span<const double> c_prev, const LstmParams& params,
                       std::span<double> h_out, std::span<double> c_out);

/// Unrolled forward pass from zero state over a scaled window; returns the
/// scaled head output.
double lstm_forward(const LstmParams& params, std::span<const double> window_scaled);

/// Mean squared error of the head output over a set of scaled examples.
double lstm_batch_loss(const LstmParams& params, std::span<const LstmExample> batch);

/// Full backpropagation through time; gradients of lstm_batch_loss.
LstmGradients lstm_batch_gradient(const LstmParams& params,
                                  std::span<const LstmExample> batch);

/// Min-max scale on the training range, window->next examples, Adam updates
/// on shuffled mini-batches. Weights start uniform in +-1/sqrt(fan_in) from
/// the seeded generator, forget-gate bias at 1. Bitwise deterministic for a
/// fixed (seed, config, data). Throws TooShort and NonFiniteLoss.
LstmFitResult lstm_train(const PriceSeries& train, int window, const LstmConfig& config,
                         std::uint64_t seed);

/// Scale a raw USD window, run the network, inverse-scale the output.
/// Throws WrongWindowLength when window.size() != params.window.
double lstm_predict(const LstmParams& params, std::span<const double> window);

}  // namespace tsbench
