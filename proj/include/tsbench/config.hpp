#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tsbench/date.hpp"
#include "tsbench/forecaster.hpp"

namespace tsbench {

/// Everything a run needs, resolved from defaults, an optional flat JSON
/// config file, and command-line flags (flags win).
struct RunConfig {
    std::filesystem::path data_dir = "data";
    std::filesystem::path output_dir = "out";
    std::vector<std::string> tickers = {"MSFT", "AAPL", "TSLA", "GOOG", "AMZN", "FB"};
    Date split_date{2020, 1, 1};
    std::vector<ModelKind> models = {ModelKind::last_value, ModelKind::autoregression,
                                     ModelKind::gbt, ModelKind::lstm};
    std::uint64_t seed = 42;
    int jobs = 1;
    bool refit_each_step = false;
    bool use_adj_close = false;

    // per-model hyperparameters (flat keys in the config file)
    int ar_order = 1;
    int window = 10;
    GbtConfig gbt;
    LstmConfig lstm;

    // fetch settings
    std::string url_template =
        "https://query1.finance.yahoo.com/v7/finance/download/"
        "{ticker}?period1={start}&period2={end}&interval=1d&events=history";
    Date fetch_start{2015, 1, 1};
    Date fetch_end{2021, 4, 30};

    ForecasterConfig forecaster_config(ModelKind kind) const;

    void check() const;  // throws InvalidValue
};

/// Parses a flat JSON object. Unknown keys are errors (anti-typo guard).
/// Throws ConfigParseError, UnknownKey, InvalidValue.
RunConfig load_config(const std::filesystem::path& path);

/// Same, from an in-memory document (the file loader delegates here).
RunConfig parse_config(const std::string& json_text);

}  // namespace tsbench
