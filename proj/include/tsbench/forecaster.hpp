#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>

#include "tsbench/series.hpp"

namespace tsbench {

enum class ModelKind { last_value, autoregression, gbt, lstm };

std::string_view to_string(ModelKind kind);
ModelKind model_kind_from_string(std::string_view name);  // throws InvalidValue

struct GbtConfig {
    int rounds = 100;
    int max_depth = 3;
    double shrinkage = 0.1;  // eta
    double l2 = 1.0;         // lambda
    int min_leaf = 2;
};

struct LstmConfig {
    int hidden = 32;
    int epochs = 50;
    int batch = 32;
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

struct ForecasterConfig {
    ModelKind kind = ModelKind::last_value;
    int ar_order = 1;  // p
    int window = 10;   // W, feature length for gbt and lstm
    GbtConfig gbt;
    LstmConfig lstm;
    std::uint64_t seed = 42;

    void check() const;  // throws InvalidValue on out-of-range settings
};

/// Uniform contract over the four forecasters: fit once on a training
/// series, then predict the next close from a trailing window of actual
/// closes (most recent last). Fitted instances are immutable and safe to
/// share across threads for prediction.
class Forecaster {
public:
    virtual ~Forecaster() = default;

    virtual void fit(const PriceSeries& train) = 0;

    /// history carries at least context_size() actual closes; implementations
    /// read only the trailing context_size() values.
    virtual double predict(std::span<const double> history) const = 0;

    virtual std::size_t context_size() const = 0;

    virtual std::string_view name() const = 0;
};

/// ticker feeds per-cell seed derivation so benchmark cells stay independent
/// of scheduling order.
std::unique_ptr<Forecaster> make_forecaster(const ForecasterConfig& config,
                                            std::string_view ticker);

}  // namespace tsbench
