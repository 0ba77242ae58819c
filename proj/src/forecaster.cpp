#include "tsbench/forecaster.hpp"

#include <string>

#include "tsbench/errors.hpp"
#include "tsbench/models/ar.hpp"
#include "tsbench/models/gbt.hpp"
#include "tsbench/models/last_value.hpp"
#include "tsbench/models/lstm.hpp"
#include "tsbench/rng.hpp"

namespace tsbench {

std::string_view to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::last_value: return "last_value";
        case ModelKind::autoregression: return "autoregression";
        case ModelKind::gbt: return "gbt";
        case ModelKind::lstm: return "lstm";
    }
    return "?";
}

ModelKind model_kind_from_string(std::string_view name) {
    if (name == "last_value") return ModelKind::last_value;
    if (name == "autoregression") return ModelKind::autoregression;
    if (name == "gbt") return ModelKind::gbt;
    if (name == "lstm") return ModelKind::lstm;
    throw InvalidValue("unknown model \"" + std::string(name) +
                       "\" (want last_value, autoregression, gbt, lstm)");
}

void ForecasterConfig::check() const {
    if (ar_order < 1) throw InvalidValue("ar_order must be >= 1");
    if (window < 1) throw InvalidValue("window must be >= 1");
    if (gbt.rounds < 1) throw InvalidValue("gbt_rounds must be >= 1");
    if (gbt.max_depth < 1) throw InvalidValue("gbt_max_depth must be >= 1");
    if (!(gbt.shrinkage > 0.0) || gbt.shrinkage > 1.0)
        throw InvalidValue("gbt_shrinkage must be in (0, 1]");
    if (gbt.l2 < 0.0) throw InvalidValue("gbt_l2 must be >= 0");
    if (gbt.min_leaf < 1) throw InvalidValue("gbt_min_leaf must be >= 1");
    if (lstm.hidden < 1) throw InvalidValue("lstm_hidden must be >= 1");
    if (lstm.epochs < 1) throw InvalidValue("lstm_epochs must be >= 1");
    if (lstm.batch < 1) throw InvalidValue("lstm_batch must be >= 1");
    if (!(lstm.learning_rate > 0.0))
        throw InvalidValue("lstm_learning_rate must be > 0");
    if (!(lstm.beta1 >= 0.0 && lstm.beta1 < 1.0) ||
        !(lstm.beta2 >= 0.0 && lstm.beta2 < 1.0))
        throw InvalidValue("Adam betas must be in [0, 1)");
    if (!(lstm.epsilon > 0.0)) throw InvalidValue("lstm_epsilon must be > 0");
}

namespace {

class LastValueForecaster final : public Forecaster {
public:
    void fit(const PriceSeries&) override {}
    double predict(std::span<const double> history) const override {
        return last_value_predict(history);
    }
    std::size_t context_size() const override { return 1; }
    std::string_view name() const override { return to_string(ModelKind::last_value); }
};

class ArForecaster final : public Forecaster {
public:
    explicit ArForecaster(int order) : order_(order) {}
    void fit(const PriceSeries& train) override { model_ = ar_fit(train, order_); }
    double predict(std::span<const double> history) const override {
        return ar_predict(model_, history.last(static_cast<std::size_t>(order_)));
    }
    std::size_t context_size() const override {
        return static_cast<std::size_t>(order_);
    }
    std::string_view name() const override {
        return to_string(ModelKind::autoregression);
    }

private:
    int order_;
    ArModel model_;
};

class GbtForecaster final : public Forecaster {
public:
    GbtForecaster(int window, GbtConfig config) : window_(window), config_(config) {}
    void fit(const PriceSeries& train) override {
        model_ = gbt_fit(train, window_, config_).ensemble;
    }
    double predict(std::span<const double> history) const override {
        return gbt_predict(model_, history.last(static_cast<std::size_t>(window_)));
    }
    std::size_t context_size() const override {
        return static_cast<std::size_t>(window_);
    }
    std::string_view name() const override { return to_string(ModelKind::gbt); }

private:
    int window_;
    GbtConfig config_;
    GbtEnsemble model_;
};

class LstmForecaster final : public Forecaster {
public:
    LstmForecaster(int window, LstmConfig config, std::uint64_t seed)
        : window_(window), config_(config), seed_(seed) {}
    void fit(const PriceSeries& train) override {
        model_ = lstm_train(train, window_, config_, seed_).params;
    }
    double predict(std::span<const double> history) const override {
        return lstm_predict(model_, history.last(static_cast<std::size_t>(window_)));
    }
    std::size_t context_size() const override {
        return static_cast<std::size_t>(window_);
    }
    std::string_view name() const override { return to_string(ModelKind::lstm); }

private:
    int window_;
    LstmConfig config_;
    std::uint64_t seed_;
    LstmParams model_;
};

}  // namespace

std::unique_ptr<Forecaster> make_forecaster(const ForecasterConfig& config,
                                            std::string_view ticker) {
    config.check();
    switch (config.kind) {
        case ModelKind::last_value: return std::make_unique<LastValueForecaster>();
        case ModelKind::autoregression:
            return std::make_unique<ArForecaster>(config.ar_order);
        case ModelKind::gbt:
            return std::make_unique<GbtForecaster>(config.window, config.gbt);
        case ModelKind::lstm:
            return std::make_unique<LstmForecaster>(
                config.window, config.lstm,
                derive_seed(config.seed, ticker, to_string(config.kind)));
    }
    throw InvalidValue("unhandled model kind");
}

}  // namespace tsbench
